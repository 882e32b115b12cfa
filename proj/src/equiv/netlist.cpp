// Copyright 2026 The VCodes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcodes/equiv/netlist.hpp"

#include <stdexcept>

namespace vcodes::equiv {

NodeId Netlist::add(NetNode node) {
  for (NodeId arg : node.args) {
    if (arg < 0 || static_cast<size_t>(arg) >= nodes_.size())
      throw std::logic_error("netlist argument out of order");
  }
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Netlist::constant(BitVec value) {
  NetNode n;
  n.op = OpKind::Const;
  n.width = value.width();
  n.cval = value;
  return add(std::move(n));
}

NodeId Netlist::input(int slot, int width, bool is_signed) {
  NetNode n;
  n.op = OpKind::Input;
  n.width = width;
  n.is_signed = is_signed;
  n.slot = slot;
  return add(std::move(n));
}

NodeId Netlist::reg(int slot, int width, bool is_signed) {
  NetNode n;
  n.op = OpKind::Reg;
  n.width = width;
  n.is_signed = is_signed;
  n.slot = slot;
  return add(std::move(n));
}

NodeId Netlist::undef(int width) {
  NetNode n;
  n.op = OpKind::Undef;
  n.width = width;
  return add(std::move(n));
}

NodeId Netlist::not_of(NodeId a) {
  NetNode n;
  n.op = OpKind::Not;
  n.width = node(a).width;
  n.is_signed = node(a).is_signed;
  n.args = {a};
  return add(std::move(n));
}

NodeId Netlist::binary(OpKind op, NodeId a, NodeId b) {
  if (node(a).width != node(b).width)
    throw std::logic_error("binary operands of different widths");
  NetNode n;
  n.op = op;
  n.width = node(a).width;
  n.is_signed = node(a).is_signed || node(b).is_signed;
  n.args = {a, b};
  return add(std::move(n));
}

NodeId Netlist::eq(NodeId a, NodeId b) {
  if (node(a).width != node(b).width)
    throw std::logic_error("comparison operands of different widths");
  NetNode n;
  n.op = OpKind::Eq;
  n.width = 1;
  n.args = {a, b};
  return add(std::move(n));
}

NodeId Netlist::less(NodeId a, NodeId b, bool is_signed, bool or_equal) {
  if (node(a).width != node(b).width)
    throw std::logic_error("comparison operands of different widths");
  NetNode n;
  n.op = or_equal ? OpKind::Le : OpKind::Lt;
  n.width = 1;
  n.is_signed = is_signed;
  n.args = {a, b};
  return add(std::move(n));
}

NodeId Netlist::concat(NodeId high, NodeId low) {
  NetNode n;
  n.op = OpKind::Concat;
  n.width = node(high).width + node(low).width;
  if (n.width > 64)
    throw std::logic_error("concatenation wider than 64 bits");
  n.args = {high, low};
  return add(std::move(n));
}

NodeId Netlist::index_bit(NodeId a, int pos) {
  if (pos < 0 || pos >= node(a).width)
    throw std::logic_error("index out of range");
  NetNode n;
  n.op = OpKind::Index;
  n.width = 1;
  n.args = {a};
  n.lo = pos;
  return add(std::move(n));
}

NodeId Netlist::slice(NodeId a, int high, int low) {
  if (low < 0 || high < low || high >= node(a).width)
    throw std::logic_error("slice out of range");
  NetNode n;
  n.op = OpKind::Slice;
  n.width = high - low + 1;
  n.args = {a};
  n.lo = low;
  return add(std::move(n));
}

NodeId Netlist::ite(NodeId cond, NodeId then_id, NodeId else_id) {
  if (node(cond).width != 1) throw std::logic_error("ite condition not 1 bit");
  if (node(then_id).width != node(else_id).width)
    throw std::logic_error("ite branches of different widths");
  NetNode n;
  n.op = OpKind::Ite;
  n.width = node(then_id).width;
  n.is_signed = node(then_id).is_signed || node(else_id).is_signed;
  n.args = {cond, then_id, else_id};
  return add(std::move(n));
}

NodeId Netlist::resize(NodeId a, int width, bool sign_extend) {
  if (node(a).width == width) return a;
  NetNode n;
  n.op = OpKind::Resize;
  n.width = width;
  n.is_signed = sign_extend;
  n.args = {a};
  return add(std::move(n));
}

void Netlist::eval(const std::vector<BitVec>& inputs,
                   const std::vector<BitVec>& regs,
                   std::vector<BitVec>& values) const {
  values.resize(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const NetNode& n = nodes_[i];
    switch (n.op) {
      case OpKind::Const:
        values[i] = n.cval;
        break;
      case OpKind::Input:
        values[i] = inputs[static_cast<size_t>(n.slot)];
        break;
      case OpKind::Reg:
        values[i] = regs[static_cast<size_t>(n.slot)];
        break;
      case OpKind::Undef:
        // Output cones are verified undef-free at elaboration; orphaned
        // placeholder nodes still get a slot in the linear pass.
        values[i] = BitVec(n.width, 0);
        break;
      case OpKind::Not: {
        const BitVec& a = values[static_cast<size_t>(n.args[0])];
        values[i] = BitVec(n.width, ~a.bits());
        break;
      }
      case OpKind::And:
      case OpKind::Or:
      case OpKind::Xor:
      case OpKind::Add:
      case OpKind::Sub: {
        uint64_t a = values[static_cast<size_t>(n.args[0])].bits();
        uint64_t b = values[static_cast<size_t>(n.args[1])].bits();
        uint64_t r = 0;
        switch (n.op) {
          case OpKind::And: r = a & b; break;
          case OpKind::Or: r = a | b; break;
          case OpKind::Xor: r = a ^ b; break;
          case OpKind::Add: r = a + b; break;
          case OpKind::Sub: r = a - b; break;
          default: break;
        }
        values[i] = BitVec(n.width, r);
        break;
      }
      case OpKind::Eq: {
        const BitVec& a = values[static_cast<size_t>(n.args[0])];
        const BitVec& b = values[static_cast<size_t>(n.args[1])];
        values[i] = BitVec(1, a.bits() == b.bits() ? 1 : 0);
        break;
      }
      case OpKind::Lt:
      case OpKind::Le: {
        const BitVec& a = values[static_cast<size_t>(n.args[0])];
        const BitVec& b = values[static_cast<size_t>(n.args[1])];
        bool lt, eq_v;
        if (n.is_signed) {
          lt = a.to_signed() < b.to_signed();
          eq_v = a.to_signed() == b.to_signed();
        } else {
          lt = a.bits() < b.bits();
          eq_v = a.bits() == b.bits();
        }
        bool r = n.op == OpKind::Lt ? lt : (lt || eq_v);
        values[i] = BitVec(1, r ? 1 : 0);
        break;
      }
      case OpKind::Concat: {
        const BitVec& hi = values[static_cast<size_t>(n.args[0])];
        const BitVec& lo = values[static_cast<size_t>(n.args[1])];
        values[i] = BitVec(n.width, (hi.bits() << lo.width()) | lo.bits());
        break;
      }
      case OpKind::Index: {
        const BitVec& a = values[static_cast<size_t>(n.args[0])];
        values[i] = BitVec(1, (a.bits() >> n.lo) & 1);
        break;
      }
      case OpKind::Slice: {
        const BitVec& a = values[static_cast<size_t>(n.args[0])];
        values[i] = BitVec(n.width, a.bits() >> n.lo);
        break;
      }
      case OpKind::Ite: {
        const BitVec& c = values[static_cast<size_t>(n.args[0])];
        values[i] = c.bits() != 0 ? values[static_cast<size_t>(n.args[1])]
                                  : values[static_cast<size_t>(n.args[2])];
        break;
      }
      case OpKind::Resize: {
        const BitVec& a = values[static_cast<size_t>(n.args[0])];
        uint64_t bits = a.bits();
        if (n.width > a.width() && n.is_signed && a.bit(a.width() - 1)) {
          bits |= ~a.mask();  // sign extension
        }
        values[i] = BitVec(n.width, bits);
        break;
      }
    }
  }
}

bool Netlist::cone_contains_undef(NodeId root) const {
  std::vector<bool> visited(nodes_.size(), false);
  std::vector<NodeId> stack = {root};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (visited[static_cast<size_t>(id)]) continue;
    visited[static_cast<size_t>(id)] = true;
    const NetNode& n = node(id);
    if (n.op == OpKind::Undef) return true;
    for (NodeId arg : n.args) stack.push_back(arg);
  }
  return false;
}

}  // namespace vcodes::equiv
