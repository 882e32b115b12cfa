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

#ifndef VCODES_EQUIV_NETLIST_HPP
#define VCODES_EQUIV_NETLIST_HPP

#include <cstdint>
#include <vector>

#include "vcodes/equiv/bitvec.hpp"

namespace vcodes::equiv {

using NodeId = int32_t;

enum class OpKind {
  Const,
  Input,   // primary input slot
  Reg,     // register current value
  Undef,   // placeholder for not-yet-assigned values; must not reach outputs
  Not,
  And,
  Or,
  Xor,
  Add,
  Sub,
  Eq,
  Lt,      // signed flag selects comparison semantics
  Le,
  Concat,  // args[0] high part, args[1] low part
  Index,   // single bit at position `lo`
  Slice,   // bits [lo, lo+width)
  Ite,     // args: cond(1 bit), then, else
  Resize,  // truncate or extend to `width`; sign-extend when is_signed
};

struct NetNode {
  OpKind op;
  int width = 1;
  bool is_signed = false;
  std::vector<NodeId> args;
  BitVec cval;    // Const only
  int32_t slot = -1;  // Input/Reg index
  int lo = 0;     // Index position / Slice low bit
};

// Append-only expression DAG. Arguments always precede their users, so node
// order is a topological order.
class Netlist {
 public:
  NodeId add(NetNode node);

  const NetNode& node(NodeId id) const { return nodes_[static_cast<size_t>(id)]; }
  size_t size() const { return nodes_.size(); }

  NodeId constant(BitVec value);
  NodeId input(int slot, int width, bool is_signed);
  NodeId reg(int slot, int width, bool is_signed);
  NodeId undef(int width);
  NodeId not_of(NodeId a);
  NodeId binary(OpKind op, NodeId a, NodeId b);  // And/Or/Xor/Add/Sub
  NodeId eq(NodeId a, NodeId b);
  NodeId less(NodeId a, NodeId b, bool is_signed, bool or_equal);
  NodeId concat(NodeId high, NodeId low);
  NodeId index_bit(NodeId a, int pos);
  NodeId slice(NodeId a, int high, int low);
  NodeId ite(NodeId cond, NodeId then_id, NodeId else_id);
  NodeId resize(NodeId a, int width, bool sign_extend);

  // Evaluates every node given input and register values; `values` is
  // resized to the node count. Undef evaluation throws.
  void eval(const std::vector<BitVec>& inputs, const std::vector<BitVec>& regs,
            std::vector<BitVec>& values) const;

  bool cone_contains_undef(NodeId root) const;

 private:
  std::vector<NetNode> nodes_;
};

}  // namespace vcodes::equiv

#endif  // VCODES_EQUIV_NETLIST_HPP
