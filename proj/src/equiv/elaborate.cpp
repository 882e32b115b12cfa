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

#include "vcodes/equiv/elaborate.hpp"

#include <algorithm>
#include <set>

#include "vcodes/vhdl/parser.hpp"

namespace vcodes::equiv {

namespace {

using vhdl::ArchitectureBody;
using vhdl::BinaryOp;
using vhdl::ComponentDecl;
using vhdl::ComponentInstance;
using vhdl::ConcurrentStmt;
using vhdl::DesignFile;
using vhdl::EntityDecl;
using vhdl::Expr;
using vhdl::fold_name;
using vhdl::PortDir;
using vhdl::ProcessStmt;
using vhdl::RangeDir;
using vhdl::SeqStmt;
using vhdl::TypeMark;
using vhdl::UnaryOp;

struct NetType {
  TypeMark mark = TypeMark::StdLogic;
  int width = 1;
  bool is_signed = false;
  bool is_vector = false;
  int64_t left = 0;
  int64_t right = 0;
  RangeDir dir = RangeDir::Downto;

  // Physical bit position (0 = LSB) of a logical index.
  int phys(int64_t logical) const {
    if (dir == RangeDir::Downto) {
      if (logical < right || logical > left)
        throw ElaborationError("index " + std::to_string(logical) +
                               " outside range");
      return static_cast<int>(logical - right);
    }
    if (logical < left || logical > right)
      throw ElaborationError("index " + std::to_string(logical) +
                             " outside range");
    return static_cast<int>(right - logical);
  }
};

struct BuiltValue {
  NodeId node = -1;
  int width = 1;
  bool is_signed = false;
  bool is_int_literal = false;  // unsized integer literal, adapts to context
  int64_t literal = 0;
};

struct Sym {
  enum class Kind { InPort, OutPort, Signal, Constant } kind = Kind::Signal;
  NetType type;
  std::optional<int64_t> int_value;  // integer constants and generics
  NodeId const_node = -1;            // constants
  const vhdl::SignalDecl* signal_decl = nullptr;
};

struct Driver {
  enum class Kind { None, Simple, Conditional, Selected, Process, Instance };
  Kind kind = Kind::None;
  const ConcurrentStmt* stmt = nullptr;
  std::vector<const ConcurrentStmt*> partial;  // index/slice targets
  std::string instance_formal;                 // child output port (canonical)
};

struct RegBookkeeping {
  const ProcessStmt* proc = nullptr;
  std::vector<std::pair<std::string, int>> signal_slots;  // canonical, slot
  std::vector<std::pair<std::string, int>> var_slots;
};

struct Scope {
  std::string prefix;
  const ArchitectureBody* arch = nullptr;
  std::map<std::string, Sym> syms;
  std::map<std::string, Driver> drivers;
  std::map<std::string, NodeId> input_bindings;  // in-port -> node
  std::map<std::string, int> reg_slot;           // register net -> slot
  std::map<std::string, NodeId> resolved;
  std::set<std::string> resolving;
  std::optional<std::string> local_clock;  // canonical in-port name
  std::map<std::string, const vhdl::FunctionDecl*> functions;
  std::map<const ProcessStmt*, std::map<std::string, NodeId>> comb_results;
  std::map<const ComponentInstance*, std::map<std::string, NodeId>> inst_results;
  std::map<const ProcessStmt*, RegBookkeeping> clocked;
};

// Environment during symbolic execution of one process or function body.
struct ExecEnv {
  std::map<std::string, NodeId> signals;  // next values of assigned signals
  std::map<std::string, NodeId> vars;     // current variable values
  std::map<std::string, NetType> var_types;
  bool in_function = false;
};

bool expr_is_edge_call(const Expr& e, std::string* clock, bool* rising) {
  const auto* call = std::get_if<vhdl::CallExpr>(&e.node);
  if (call == nullptr || call->args.size() != 1) return false;
  std::string folded = fold_name(call->callee);
  if (folded != "rising_edge" && folded != "falling_edge") return false;
  const auto* name = std::get_if<vhdl::NameRef>(&call->args[0].node);
  if (name == nullptr) return false;
  if (clock != nullptr) *clock = fold_name(name->name);
  if (rising != nullptr) *rising = folded == "rising_edge";
  return true;
}

// Clocked processes were shape-checked by the parser: a single IfStmt whose
// last arm condition is the edge guard.
const vhdl::IfStmt* clocked_process_shape(const ProcessStmt& proc,
                                          std::string* clock, bool* rising) {
  if (proc.body.size() != 1) return nullptr;
  const auto* top = std::get_if<vhdl::IfStmt>(&proc.body.front().node);
  if (top == nullptr) return nullptr;
  const Expr& guard = top->arms.back().condition;
  if (!expr_is_edge_call(guard, clock, rising)) return nullptr;
  return top;
}

void collect_assigned_names(const std::vector<SeqStmt>& stmts, bool signals,
                            std::set<std::string>& out) {
  for (const auto& stmt : stmts) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, vhdl::SignalAssignStmt>) {
            if (!signals) return;
            const Expr* target = &node.target;
            if (const auto* idx = std::get_if<vhdl::IndexExpr>(&target->node))
              target = &*idx->base;
            else if (const auto* sl = std::get_if<vhdl::SliceExpr>(&target->node))
              target = &*sl->base;
            if (const auto* name = std::get_if<vhdl::NameRef>(&target->node))
              out.insert(fold_name(name->name));
          } else if constexpr (std::is_same_v<T, vhdl::VariableAssignStmt>) {
            if (signals) return;
            const Expr* target = &node.target;
            if (const auto* idx = std::get_if<vhdl::IndexExpr>(&target->node))
              target = &*idx->base;
            else if (const auto* sl = std::get_if<vhdl::SliceExpr>(&target->node))
              target = &*sl->base;
            if (const auto* name = std::get_if<vhdl::NameRef>(&target->node))
              out.insert(fold_name(name->name));
          } else if constexpr (std::is_same_v<T, vhdl::IfStmt>) {
            for (const auto& arm : node.arms)
              collect_assigned_names(arm.body, signals, out);
            if (node.else_body)
              collect_assigned_names(*node.else_body, signals, out);
          } else if constexpr (std::is_same_v<T, vhdl::CaseStmt>) {
            for (const auto& arm : node.arms)
              collect_assigned_names(arm.body, signals, out);
          }
        },
        stmt.node);
  }
}

class Elaborator {
 public:
  explicit Elaborator(const DesignFile& file) : file_(file) { index_units(); }

  ElaboratedDesign run(const std::string& top_entity) {
    std::string top = fold_name(top_entity);
    const EntityDecl* entity = find_entity(top);
    if (entity == nullptr)
      throw ElaborationError("entity \"" + top_entity + "\" not found");
    const ArchitectureBody* arch = find_single_arch(top);

    // Clock discovery across the hierarchy so the clock port can be taken
    // out of the data inputs before slots are assigned.
    std::map<std::string, std::string> port_to_top;
    for (const auto& p : entity->ports) {
      if (p.dir == PortDir::In) port_to_top[fold_name(p.name)] = fold_name(p.name);
    }
    discover_clocks(*entity, *arch, port_to_top, 0);
    std::optional<std::string> clock_port;
    if (!clock_uses_.empty()) {
      for (const auto& use : clock_uses_) {
        if (clock_port && (*clock_port != use.first))
          throw ElaborationError("multiple clocks");
        clock_port = use.first;
      }
      bool rising = clock_uses_.front().second;
      for (const auto& use : clock_uses_) {
        if (use.second != rising) throw ElaborationError("multiple clock edges");
      }
      out_.clock = ClockInfo{*clock_port, rising};
    }

    // Top-level input slots in declaration order, clock excluded.
    Scope top_generics = generics_scope(*entity);
    std::map<std::string, NodeId> bindings;
    for (const auto& p : entity->ports) {
      if (p.dir == PortDir::Inout)
        throw ElaborationError("inout ports are unsupported");
      if (p.dir != PortDir::In) continue;
      std::string canonical = fold_name(p.name);
      if (clock_port && canonical == *clock_port) continue;
      NetType type = compute_net_type(p.type, &top_generics);
      int slot = static_cast<int>(out_.inputs.size());
      out_.inputs.push_back({canonical, type.width});
      out_.total_input_bits += type.width;
      bindings[canonical] = out_.netlist.input(slot, type.width, type.is_signed);
    }

    std::map<std::string, NodeId> outputs =
        elaborate_instance(*entity, *arch, bindings, clock_port, "");

    for (const auto& p : entity->ports) {
      if (p.dir != PortDir::Out) continue;
      std::string canonical = fold_name(p.name);
      NodeId node = outputs.at(canonical);
      if (out_.netlist.cone_contains_undef(node))
        throw ElaborationError("output \"" + canonical +
                               "\" is not fully assigned (latch)");
      out_.outputs.push_back({canonical, out_.netlist.node(node).width});
      out_.output_roots.push_back(node);
    }
    if (out_.outputs.empty())
      throw ElaborationError("design has no output ports");

    detect_reset(*entity, *arch);
    return std::move(out_);
  }

 private:
  const DesignFile& file_;
  ElaboratedDesign out_;
  std::map<std::string, const EntityDecl*> entities_;
  std::map<std::string, std::vector<const ArchitectureBody*>> archs_;
  std::vector<const vhdl::PackageDecl*> packages_;
  std::vector<std::pair<std::string, bool>> clock_uses_;  // top port, rising
  int instance_depth_ = 0;
  int function_depth_ = 0;

  Netlist& net() { return out_.netlist; }

  void index_units() {
    for (const auto& unit : file_.units) {
      if (const auto* entity = std::get_if<EntityDecl>(&unit.node)) {
        entities_[fold_name(entity->name)] = entity;
      } else if (const auto* arch = std::get_if<ArchitectureBody>(&unit.node)) {
        archs_[fold_name(arch->entity_name)].push_back(arch);
      } else if (const auto* pkg = std::get_if<vhdl::PackageDecl>(&unit.node)) {
        packages_.push_back(pkg);
      }
    }
  }

  const EntityDecl* find_entity(const std::string& canonical) const {
    auto it = entities_.find(canonical);
    return it == entities_.end() ? nullptr : it->second;
  }

  const ArchitectureBody* find_single_arch(const std::string& entity) const {
    auto it = archs_.find(entity);
    if (it == archs_.end() || it->second.empty())
      throw ElaborationError("entity \"" + entity + "\" has no architecture");
    if (it->second.size() > 1)
      throw ElaborationError("entity \"" + entity +
                             "\" has multiple architectures");
    return it->second.front();
  }

  Scope generics_scope(const EntityDecl& entity) const {
    Scope scope;
    for (const auto& g : entity.generics) {
      if (!g.default_value)
        throw ElaborationError("generic \"" + g.name + "\" has no default");
      Sym sym;
      sym.kind = Sym::Kind::Constant;
      sym.type = compute_net_type(g.type, &scope);
      sym.int_value = fold_const(*g.default_value, &scope);
      scope.syms[fold_name(g.name)] = sym;
    }
    return scope;
  }

  // ---- clock discovery -----------------------------------------------------

  void discover_clocks(const EntityDecl& entity, const ArchitectureBody& arch,
                       const std::map<std::string, std::string>& port_to_top,
                       int depth) {
    (void)entity;
    if (depth > 32) throw ElaborationError("instantiation too deep");
    for (const auto& stmt : arch.statements) {
      if (const auto* proc = std::get_if<ProcessStmt>(&stmt.node)) {
        std::string clock;
        bool rising = true;
        if (clocked_process_shape(*proc, &clock, &rising) == nullptr) continue;
        auto it = port_to_top.find(clock);
        if (it == port_to_top.end())
          throw ElaborationError(
              "clock \"" + clock + "\" does not trace to a top-level input port");
        clock_uses_.emplace_back(it->second, rising);
      } else if (const auto* inst = std::get_if<ComponentInstance>(&stmt.node)) {
        const EntityDecl* child = find_entity(fold_name(inst->component_name));
        if (child == nullptr) continue;  // reported later during elaboration
        auto child_archs = archs_.find(fold_name(inst->component_name));
        if (child_archs == archs_.end() || child_archs->second.size() != 1)
          continue;
        const ComponentDecl* comp = find_component_decl(arch, *inst);
        if (comp == nullptr) continue;
        std::map<std::string, std::string> child_map;
        for (size_t i = 0; i < inst->port_map.size(); ++i) {
          const auto& assoc = inst->port_map[i];
          std::string formal;
          if (assoc.formal) {
            formal = fold_name(*assoc.formal);
          } else if (i < comp->ports.size()) {
            formal = fold_name(comp->ports[i].name);
          } else {
            continue;
          }
          const auto* name = std::get_if<vhdl::NameRef>(&assoc.actual.node);
          if (name == nullptr) continue;
          auto it = port_to_top.find(fold_name(name->name));
          if (it != port_to_top.end()) child_map[formal] = it->second;
        }
        discover_clocks(*child, *child_archs->second.front(), child_map,
                        depth + 1);
      }
    }
  }

  const ComponentDecl* find_component_decl(const ArchitectureBody& arch,
                                           const ComponentInstance& inst) const {
    std::string wanted = fold_name(inst.component_name);
    for (const auto& decl : arch.declarations) {
      if (const auto* comp = std::get_if<ComponentDecl>(&decl.node)) {
        if (fold_name(comp->name) == wanted) return comp;
      }
    }
    for (const auto* pkg : packages_) {
      for (const auto& decl : pkg->declarations) {
        if (const auto* comp = std::get_if<ComponentDecl>(&decl.node)) {
          if (fold_name(comp->name) == wanted) return comp;
        }
      }
    }
    return nullptr;
  }

  // ---- types and constants ---------------------------------------------------

  static int64_t literal_int_value(const std::string& text) {
    try {
      return std::stoll(text);
    } catch (const std::exception&) {
      throw ElaborationError("integer literal out of range: " + text);
    }
  }

  // Constant folding over integer expressions (range bounds, conversions).
  int64_t fold_const(const Expr& e, const Scope* scope) const {
    if (const auto* lit = std::get_if<vhdl::Literal>(&e.node)) {
      if (lit->kind == vhdl::TokenKind::LiteralInt)
        return literal_int_value(lit->text);
      throw ElaborationError("expected integer constant, got " + lit->text);
    }
    if (const auto* name = std::get_if<vhdl::NameRef>(&e.node)) {
      if (scope != nullptr) {
        auto it = scope->syms.find(fold_name(name->name));
        if (it != scope->syms.end() && it->second.int_value)
          return *it->second.int_value;
      }
      throw ElaborationError("\"" + name->name + "\" is not an integer constant");
    }
    if (const auto* un = std::get_if<vhdl::UnaryExpr>(&e.node)) {
      if (un->op == UnaryOp::Minus) return -fold_const(*un->operand, scope);
      throw ElaborationError("non-constant expression");
    }
    if (const auto* bin = std::get_if<vhdl::BinaryExpr>(&e.node)) {
      if (bin->op == BinaryOp::Add)
        return fold_const(*bin->lhs, scope) + fold_const(*bin->rhs, scope);
      if (bin->op == BinaryOp::Sub)
        return fold_const(*bin->lhs, scope) - fold_const(*bin->rhs, scope);
    }
    throw ElaborationError("non-constant expression in constant context");
  }

  NetType compute_net_type(const vhdl::SubtypeSpec& spec,
                           const Scope* scope) const {
    NetType type;
    type.mark = spec.mark;
    switch (spec.mark) {
      case TypeMark::StdLogic:
      case TypeMark::Boolean:
        type.width = 1;
        return type;
      case TypeMark::Integer:
        type.width = 32;
        type.is_signed = true;
        return type;
      default:
        break;
    }
    type.is_vector = true;
    type.is_signed = spec.mark == TypeMark::Signed;
    if (!spec.range) throw ElaborationError("vector type without range");
    type.left = fold_const(spec.range->left, scope);
    type.right = fold_const(spec.range->right, scope);
    type.dir = spec.range->dir;
    int64_t width = type.dir == RangeDir::Downto ? type.left - type.right + 1
                                                 : type.right - type.left + 1;
    if (width < 1) throw ElaborationError("empty vector range");
    if (width > 64)
      throw ElaborationError("signals wider than 64 bits are unsupported");
    type.width = static_cast<int>(width);
    return type;
  }

  // Constant value of an initializer or constant declaration.
  BitVec fold_const_bits(const Expr& e, const NetType& type,
                         const Scope* scope) const {
    if (const auto* lit = std::get_if<vhdl::Literal>(&e.node)) {
      switch (lit->kind) {
        case vhdl::TokenKind::LiteralInt: {
          int64_t v = literal_int_value(lit->text);
          return BitVec(type.width, static_cast<uint64_t>(v));
        }
        case vhdl::TokenKind::LiteralBit: {
          if (type.width != 1) throw ElaborationError("bit literal width");
          return BitVec(1, lit->text == "'1'" ? 1 : 0);
        }
        case vhdl::TokenKind::LiteralBitVector: {
          std::string body = lit->text.substr(1, lit->text.size() - 2);
          BitVec v = BitVec::from_binary(body);
          if (v.width() != type.width)
            throw ElaborationError("vector literal width mismatch");
          return v;
        }
        case vhdl::TokenKind::LiteralChar:
          throw ElaborationError(
              "only two-valued ('0'/'1') literals are supported, got " +
              lit->text);
        default:
          throw ElaborationError("unsupported literal " + lit->text);
      }
    }
    if (const auto* agg = std::get_if<vhdl::AggregateOthers>(&e.node)) {
      const auto* lit = std::get_if<vhdl::Literal>(&agg->value->node);
      if (lit == nullptr || lit->kind != vhdl::TokenKind::LiteralBit)
        throw ElaborationError("aggregate fill must be '0' or '1'");
      uint64_t bits = lit->text == "'1'" ? ~0ULL : 0ULL;
      return BitVec(type.width, bits);
    }
    if (const auto* un = std::get_if<vhdl::UnaryExpr>(&e.node)) {
      if (un->op == UnaryOp::Minus) {
        int64_t v = -fold_const(*un->operand, scope);
        return BitVec(type.width, static_cast<uint64_t>(v));
      }
    }
    if (std::get_if<vhdl::NameRef>(&e.node) != nullptr ||
        std::get_if<vhdl::BinaryExpr>(&e.node) != nullptr) {
      int64_t v = fold_const(e, scope);
      return BitVec(type.width, static_cast<uint64_t>(v));
    }
    throw ElaborationError("initial value is not constant");
  }

  // ---- scope construction ---------------------------------------------------

  std::map<std::string, NodeId> elaborate_instance(
      const EntityDecl& entity, const ArchitectureBody& arch,
      const std::map<std::string, NodeId>& bindings,
      const std::optional<std::string>& local_clock, const std::string& prefix) {
    if (++instance_depth_ > 32)
      throw ElaborationError("instantiation too deep");
    Scope scope;
    scope.prefix = prefix;
    scope.arch = &arch;
    scope.input_bindings = bindings;
    scope.local_clock = local_clock;

    for (const auto& g : entity.generics) {
      if (!g.default_value)
        throw ElaborationError("generic \"" + g.name + "\" has no default");
      Sym sym;
      sym.kind = Sym::Kind::Constant;
      sym.type = compute_net_type(g.type, &scope);
      if (g.type.mark == TypeMark::Integer || g.type.mark == TypeMark::Boolean) {
        sym.int_value = fold_const(*g.default_value, &scope);
        sym.const_node = net().constant(
            BitVec(sym.type.width, static_cast<uint64_t>(*sym.int_value)));
      } else {
        BitVec value = fold_const_bits(*g.default_value, sym.type, &scope);
        sym.const_node = net().constant(value);
      }
      scope.syms[fold_name(g.name)] = sym;
    }
    for (const auto& p : entity.ports) {
      if (p.dir == PortDir::Inout)
        throw ElaborationError("inout ports are unsupported");
      Sym sym;
      sym.kind = p.dir == PortDir::In ? Sym::Kind::InPort : Sym::Kind::OutPort;
      sym.type = compute_net_type(p.type, &scope);
      scope.syms[fold_name(p.name)] = sym;
    }
    auto add_declarations = [&](const std::vector<vhdl::Declaration>& decls) {
      for (const auto& decl : decls) {
        if (const auto* sig = std::get_if<vhdl::SignalDecl>(&decl.node)) {
          Sym sym;
          sym.kind = Sym::Kind::Signal;
          sym.type = compute_net_type(sig->type, &scope);
          sym.signal_decl = sig;
          scope.syms[fold_name(sig->name)] = sym;
        } else if (const auto* c = std::get_if<vhdl::ConstantDecl>(&decl.node)) {
          Sym sym;
          sym.kind = Sym::Kind::Constant;
          sym.type = compute_net_type(c->type, &scope);
          if (c->type.mark == TypeMark::Integer ||
              c->type.mark == TypeMark::Boolean) {
            sym.int_value = fold_const(c->value, &scope);
            sym.const_node = net().constant(
                BitVec(sym.type.width, static_cast<uint64_t>(*sym.int_value)));
          } else {
            sym.const_node =
                net().constant(fold_const_bits(c->value, sym.type, &scope));
          }
          scope.syms[fold_name(c->name)] = sym;
        } else if (const auto* fn = std::get_if<vhdl::FunctionDecl>(&decl.node)) {
          scope.functions[fold_name(fn->name)] = fn;
        }
      }
    };
    for (const auto* pkg : packages_) add_declarations(pkg->declarations);
    add_declarations(arch.declarations);

    scan_drivers(scope, arch);

    // Child output ports resolve eagerly; registers and unread logic follow.
    std::map<std::string, NodeId> outputs;
    for (const auto& p : entity.ports) {
      if (p.dir != PortDir::Out) continue;
      outputs[fold_name(p.name)] = resolve(scope, fold_name(p.name));
    }
    for (const auto& stmt : arch.statements) {
      if (const auto* proc = std::get_if<ProcessStmt>(&stmt.node)) {
        if (clocked_process_shape(*proc, nullptr, nullptr) != nullptr)
          exec_clocked_process(scope, *proc);
      } else if (const auto* inst = std::get_if<ComponentInstance>(&stmt.node)) {
        ensure_instance(scope, *inst);
      }
    }
    --instance_depth_;
    return outputs;
  }

  void scan_drivers(Scope& scope, const ArchitectureBody& arch) {
    auto claim = [&](const std::string& canonical, Driver driver,
                     bool partial_ok, const ConcurrentStmt* stmt) {
      auto sym = scope.syms.find(canonical);
      if (sym == scope.syms.end())
        throw ElaborationError("assignment to undeclared \"" + canonical + "\"");
      if (sym->second.kind == Sym::Kind::InPort)
        throw ElaborationError("assignment to input port \"" + canonical + "\"");
      if (sym->second.kind == Sym::Kind::Constant)
        throw ElaborationError("assignment to constant \"" + canonical + "\"");
      Driver& existing = scope.drivers[canonical];
      if (partial_ok && (existing.kind == Driver::Kind::None ||
                         (existing.kind == Driver::Kind::Simple &&
                          !existing.partial.empty()))) {
        existing.kind = Driver::Kind::Simple;
        existing.partial.push_back(stmt);
        return;
      }
      if (existing.kind != Driver::Kind::None)
        throw ElaborationError("multiple drivers for \"" + canonical + "\"");
      existing = std::move(driver);
      existing.stmt = stmt;
    };

    auto target_base = [](const Expr& target) -> std::pair<std::string, bool> {
      if (const auto* name = std::get_if<vhdl::NameRef>(&target.node))
        return {fold_name(name->name), false};
      const Expr* base = nullptr;
      if (const auto* idx = std::get_if<vhdl::IndexExpr>(&target.node))
        base = &*idx->base;
      else if (const auto* sl = std::get_if<vhdl::SliceExpr>(&target.node))
        base = &*sl->base;
      if (base != nullptr) {
        if (const auto* name = std::get_if<vhdl::NameRef>(&base->node))
          return {fold_name(name->name), true};
      }
      throw ElaborationError("unsupported assignment target");
    };

    for (const auto& stmt : arch.statements) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, vhdl::ConcurrentAssign>) {
              auto [name, partial] = target_base(node.target);
              Driver d;
              d.kind = Driver::Kind::Simple;
              claim(name, std::move(d), partial, &stmt);
            } else if constexpr (std::is_same_v<T, vhdl::ConditionalAssign>) {
              auto [name, partial] = target_base(node.target);
              if (partial)
                throw ElaborationError(
                    "partial conditional assignment targets are unsupported");
              Driver d;
              d.kind = Driver::Kind::Conditional;
              claim(name, std::move(d), false, &stmt);
            } else if constexpr (std::is_same_v<T, vhdl::SelectedAssign>) {
              auto [name, partial] = target_base(node.target);
              if (partial)
                throw ElaborationError(
                    "partial selected assignment targets are unsupported");
              Driver d;
              d.kind = Driver::Kind::Selected;
              claim(name, std::move(d), false, &stmt);
            } else if constexpr (std::is_same_v<T, ProcessStmt>) {
              scan_process(scope, node, stmt);
            } else if constexpr (std::is_same_v<T, ComponentInstance>) {
              scan_instance(scope, node, stmt);
            }
          },
          stmt.node);
    }
  }

  void scan_process(Scope& scope, const ProcessStmt& proc,
                    const ConcurrentStmt& stmt) {
    std::string clock;
    bool rising = true;
    bool clocked = clocked_process_shape(proc, &clock, &rising) != nullptr;
    if (clocked) {
      if (!scope.local_clock || clock != *scope.local_clock)
        throw ElaborationError("clock \"" + clock +
                               "\" is not the design clock");
    }
    std::set<std::string> assigned;
    collect_assigned_names(proc.body, /*signals=*/true, assigned);

    for (const auto& name : assigned) {
      auto sym = scope.syms.find(name);
      if (sym == scope.syms.end())
        throw ElaborationError("assignment to undeclared \"" + name + "\"");
      Driver& existing = scope.drivers[name];
      if (existing.kind != Driver::Kind::None)
        throw ElaborationError("multiple drivers for \"" + name + "\"");
      existing.kind = Driver::Kind::Process;
      existing.stmt = &stmt;
    }

    if (!clocked) return;

    RegBookkeeping book;
    book.proc = &proc;
    for (const auto& name : assigned) {
      const Sym& sym = scope.syms.at(name);
      int slot = static_cast<int>(out_.registers.size());
      BitVec init(sym.type.width, 0);
      if (sym.signal_decl != nullptr && sym.signal_decl->init)
        init = fold_const_bits(*sym.signal_decl->init, sym.type, &scope);
      out_.registers.push_back({scope.prefix + name, sym.type.width, init});
      out_.next_state_roots.push_back(-1);
      scope.reg_slot[name] = slot;
      book.signal_slots.emplace_back(name, slot);
    }
    std::string proc_key =
        proc.label ? fold_name(*proc.label)
                   : "process@" + std::to_string(out_.registers.size());
    for (const auto& v : proc.variables) {
      NetType type = compute_net_type(v.type, &scope);
      int slot = static_cast<int>(out_.registers.size());
      BitVec init(type.width, 0);
      if (v.init) init = fold_const_bits(*v.init, type, &scope);
      out_.registers.push_back(
          {scope.prefix + proc_key + "." + fold_name(v.name), type.width, init});
      out_.next_state_roots.push_back(-1);
      book.var_slots.emplace_back(fold_name(v.name), slot);
    }
    scope.clocked[&proc] = std::move(book);
  }

  void scan_instance(Scope& scope, const ComponentInstance& inst,
                     const ConcurrentStmt& stmt) {
    const ComponentDecl* comp = find_component_decl(*scope.arch, inst);
    if (comp == nullptr)
      throw ElaborationError("component \"" + inst.component_name +
                             "\" is not declared");
    const EntityDecl* child = find_entity(fold_name(inst.component_name));
    if (child == nullptr)
      throw ElaborationError("no entity named \"" + inst.component_name +
                             "\" for component instance " + inst.label);
    for (size_t i = 0; i < inst.port_map.size(); ++i) {
      const auto& assoc = inst.port_map[i];
      std::string formal;
      if (assoc.formal) {
        formal = fold_name(*assoc.formal);
      } else {
        if (i >= comp->ports.size())
          throw ElaborationError("too many positional associations in " +
                                 inst.label);
        formal = fold_name(comp->ports[i].name);
      }
      const vhdl::PortDecl* child_port = nullptr;
      for (const auto& p : child->ports) {
        if (fold_name(p.name) == formal) {
          child_port = &p;
          break;
        }
      }
      if (child_port == nullptr)
        throw ElaborationError("component port \"" + formal +
                               "\" does not exist on entity " +
                               inst.component_name);
      if (child_port->dir != PortDir::Out) continue;
      const auto* name = std::get_if<vhdl::NameRef>(&assoc.actual.node);
      if (name == nullptr)
        throw ElaborationError("instance output \"" + formal +
                               "\" must drive a plain signal");
      Driver d;
      d.kind = Driver::Kind::Instance;
      d.instance_formal = formal;
      std::string canonical = fold_name(name->name);
      auto sym = scope.syms.find(canonical);
      if (sym == scope.syms.end())
        throw ElaborationError("assignment to undeclared \"" + canonical + "\"");
      Driver& existing = scope.drivers[canonical];
      if (existing.kind != Driver::Kind::None)
        throw ElaborationError("multiple drivers for \"" + canonical + "\"");
      existing = std::move(d);
      existing.stmt = &stmt;
    }
  }

  // ---- resolution ------------------------------------------------------------

  NodeId resolve(Scope& scope, const std::string& canonical) {
    auto memo = scope.resolved.find(canonical);
    if (memo != scope.resolved.end()) return memo->second;
    if (scope.local_clock && canonical == *scope.local_clock)
      throw ElaborationError("clock \"" + canonical + "\" used as data");
    auto symit = scope.syms.find(canonical);
    if (symit == scope.syms.end())
      throw ElaborationError("unresolved name \"" + canonical + "\"");
    const Sym& sym = symit->second;

    if (sym.kind == Sym::Kind::Constant) {
      scope.resolved[canonical] = sym.const_node;
      return sym.const_node;
    }
    if (sym.kind == Sym::Kind::InPort) {
      auto it = scope.input_bindings.find(canonical);
      if (it == scope.input_bindings.end())
        throw ElaborationError("unconnected input port \"" + canonical + "\"");
      scope.resolved[canonical] = it->second;
      return it->second;
    }
    auto reg = scope.reg_slot.find(canonical);
    if (reg != scope.reg_slot.end()) {
      const Sym& s = scope.syms.at(canonical);
      NodeId node = net().reg(reg->second, s.type.width, s.type.is_signed);
      scope.resolved[canonical] = node;
      return node;
    }

    if (scope.resolving.count(canonical) > 0)
      throw ElaborationError("combinational loop through \"" + canonical + "\"");
    scope.resolving.insert(canonical);

    NodeId node = -1;
    auto driver = scope.drivers.find(canonical);
    if (driver == scope.drivers.end() ||
        driver->second.kind == Driver::Kind::None) {
      if (sym.signal_decl != nullptr && sym.signal_decl->init) {
        node = net().constant(
            fold_const_bits(*sym.signal_decl->init, sym.type, &scope));
      } else {
        throw ElaborationError("\"" + canonical + "\" is never assigned");
      }
    } else {
      node = build_driver(scope, canonical, sym, driver->second);
    }
    if (net().node(node).width != sym.type.width)
      throw ElaborationError("width mismatch driving \"" + canonical + "\"");
    scope.resolving.erase(canonical);
    scope.resolved[canonical] = node;
    return node;
  }

  NodeId build_driver(Scope& scope, const std::string& canonical,
                      const Sym& sym, const Driver& driver) {
    switch (driver.kind) {
      case Driver::Kind::Simple: {
        if (!driver.partial.empty())
          return build_partial(scope, canonical, sym, driver.partial);
        const auto& assign = std::get<vhdl::ConcurrentAssign>(driver.stmt->node);
        return build_assign_value(scope, assign.value, sym.type, nullptr);
      }
      case Driver::Kind::Conditional: {
        const auto& assign =
            std::get<vhdl::ConditionalAssign>(driver.stmt->node);
        NodeId acc = build_assign_value(scope, assign.branches.back().value,
                                        sym.type, nullptr);
        for (size_t i = assign.branches.size() - 1; i-- > 0;) {
          const auto& branch = assign.branches[i];
          NodeId cond = build_condition(scope, *branch.condition, nullptr);
          NodeId value = build_assign_value(scope, branch.value, sym.type, nullptr);
          acc = net().ite(cond, value, acc);
        }
        return acc;
      }
      case Driver::Kind::Selected:
        return build_selected(scope, sym,
                              std::get<vhdl::SelectedAssign>(driver.stmt->node));
      case Driver::Kind::Process: {
        const auto& proc = std::get<ProcessStmt>(driver.stmt->node);
        const auto& results = exec_comb_process(scope, proc);
        NodeId node = results.at(canonical);
        if (net().cone_contains_undef(node))
          throw ElaborationError("\"" + canonical +
                                 "\" is not assigned on every path (latch)");
        return node;
      }
      case Driver::Kind::Instance: {
        const auto& inst = std::get<ComponentInstance>(driver.stmt->node);
        const auto& outputs = ensure_instance(scope, inst);
        return outputs.at(driver.instance_formal);
      }
      case Driver::Kind::None:
        break;
    }
    throw ElaborationError("undriven net \"" + canonical + "\"");
  }

  NodeId build_partial(Scope& scope, const std::string& canonical,
                       const Sym& sym,
                       const std::vector<const ConcurrentStmt*>& stmts) {
    // Each piece covers [lo, hi]; they must tile the full width.
    struct Piece {
      int lo, hi;
      NodeId node;
    };
    std::vector<Piece> pieces;
    for (const auto* stmt : stmts) {
      const auto& assign = std::get<vhdl::ConcurrentAssign>(stmt->node);
      auto [lo, hi] = target_bit_range(scope, assign.target, sym.type, nullptr);
      NetType piece_type = sym.type;
      piece_type.width = hi - lo + 1;
      NodeId value = build_assign_value(scope, assign.value, piece_type, nullptr);
      pieces.push_back({lo, hi, value});
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    int expected = 0;
    for (const auto& piece : pieces) {
      if (piece.lo != expected)
        throw ElaborationError("partial assignments to \"" + canonical +
                               "\" do not cover every bit");
      expected = piece.hi + 1;
    }
    if (expected != sym.type.width)
      throw ElaborationError("partial assignments to \"" + canonical +
                             "\" do not cover every bit");
    NodeId acc = pieces.front().node;
    for (size_t i = 1; i < pieces.size(); ++i)
      acc = net().concat(pieces[i].node, acc);
    return acc;
  }

  NodeId build_selected(Scope& scope, const Sym& sym,
                        const vhdl::SelectedAssign& assign) {
    BuiltValue selector = build_expr(scope, assign.selector, nullptr, -1);
    const auto& waveforms = assign.waveforms;
    bool has_others = waveforms.back().is_others;
    size_t covered = 0;
    for (const auto& wf : waveforms)
      if (!wf.is_others) covered += wf.choices.size();
    if (!has_others) {
      uint64_t space = selector.width >= 63 ? ~0ULL : (1ULL << selector.width);
      if (covered != space)
        throw ElaborationError(
            "selected assignment does not cover all selector values");
    }
    size_t last = waveforms.size() - 1;
    NodeId acc =
        build_assign_value(scope, waveforms[last].value, sym.type, nullptr);
    for (size_t i = last; i-- > 0;) {
      const auto& wf = waveforms[i];
      NodeId cond = -1;
      for (const auto& choice : wf.choices) {
        NodeId c = net().eq(selector.node,
                            choice_const(choice, selector.width));
        cond = cond < 0 ? c : net().binary(OpKind::Or, cond, c);
      }
      NodeId value = build_assign_value(scope, wf.value, sym.type, nullptr);
      acc = net().ite(cond, value, acc);
    }
    return acc;
  }

  NodeId choice_const(const Expr& choice, int width) {
    const auto& lit = std::get<vhdl::Literal>(choice.node);
    switch (lit.kind) {
      case vhdl::TokenKind::LiteralInt: {
        int64_t value = literal_int_value(lit.text);
        if (width < 64 && value >= 0 &&
            (static_cast<uint64_t>(value) >> width) != 0)
          throw ElaborationError("choice " + lit.text + " does not fit in " +
                                 std::to_string(width) + " bits");
        return net().constant(BitVec(width, static_cast<uint64_t>(value)));
      }
      case vhdl::TokenKind::LiteralBit:
        if (width != 1) throw ElaborationError("choice width mismatch");
        return net().constant(BitVec(1, lit.text == "'1'" ? 1 : 0));
      case vhdl::TokenKind::LiteralBitVector: {
        BitVec v = BitVec::from_binary(lit.text.substr(1, lit.text.size() - 2));
        if (v.width() != width)
          throw ElaborationError("choice width mismatch");
        return net().constant(v);
      }
      default:
        throw ElaborationError("unsupported case choice " + lit.text);
    }
  }

  // Bit range of an assignment target (full width for plain names).
  std::pair<int, int> target_bit_range(Scope& scope, const Expr& target,
                                       const NetType& type, ExecEnv* env) {
    if (std::get_if<vhdl::NameRef>(&target.node) != nullptr)
      return {0, type.width - 1};
    if (const auto* idx = std::get_if<vhdl::IndexExpr>(&target.node)) {
      int pos = type.phys(fold_const(*idx->index, &scope));
      return {pos, pos};
    }
    const auto& slice = std::get<vhdl::SliceExpr>(target.node);
    if (slice.dir != type.dir)
      throw ElaborationError("slice direction mismatch");
    int64_t left = fold_const(*slice.left, &scope);
    int64_t right = fold_const(*slice.right, &scope);
    int a = type.phys(left);
    int b = type.phys(right);
    (void)env;
    return {std::min(a, b), std::max(a, b)};
  }

  const std::map<std::string, NodeId>& ensure_instance(
      Scope& scope, const ComponentInstance& inst) {
    auto memo = scope.inst_results.find(&inst);
    if (memo != scope.inst_results.end()) return memo->second;

    const ComponentDecl* comp = find_component_decl(*scope.arch, inst);
    const EntityDecl* child = find_entity(fold_name(inst.component_name));
    const ArchitectureBody* child_arch =
        find_single_arch(fold_name(inst.component_name));

    // Map component-port associations onto entity ports by name.
    std::map<std::string, const Expr*> actuals;
    for (size_t i = 0; i < inst.port_map.size(); ++i) {
      const auto& assoc = inst.port_map[i];
      std::string formal;
      if (assoc.formal) {
        formal = fold_name(*assoc.formal);
      } else {
        if (i >= comp->ports.size())
          throw ElaborationError("too many positional associations in " +
                                 inst.label);
        formal = fold_name(comp->ports[i].name);
      }
      if (!actuals.emplace(formal, &assoc.actual).second)
        throw ElaborationError("port \"" + formal + "\" associated twice in " +
                               inst.label);
    }

    std::map<std::string, NodeId> bindings;
    std::optional<std::string> child_clock;
    Scope child_generics = generics_scope(*child);
    for (const auto& p : child->ports) {
      if (p.dir != PortDir::In) continue;
      std::string canonical = fold_name(p.name);
      auto it = actuals.find(canonical);
      if (it == actuals.end())
        throw ElaborationError("unconnected input port \"" + canonical +
                               "\" on instance " + inst.label);
      const auto* name = std::get_if<vhdl::NameRef>(&it->second->node);
      if (name != nullptr && scope.local_clock &&
          fold_name(name->name) == *scope.local_clock) {
        child_clock = canonical;
        continue;
      }
      NetType child_type = compute_net_type(p.type, &child_generics);
      NodeId node = build_assign_value(scope, *it->second, child_type, nullptr);
      bindings[canonical] = node;
    }

    std::string child_prefix = scope.prefix + fold_name(inst.label) + ".";
    std::map<std::string, NodeId> outputs = elaborate_instance(
        *child, *child_arch, bindings, child_clock, child_prefix);
    auto [stored, inserted] = scope.inst_results.emplace(&inst, std::move(outputs));
    (void)inserted;
    return stored->second;
  }

  // ---- process execution -----------------------------------------------------

  const std::map<std::string, NodeId>& exec_comb_process(
      Scope& scope, const ProcessStmt& proc) {
    auto memo = scope.comb_results.find(&proc);
    if (memo != scope.comb_results.end()) return memo->second;

    ExecEnv env;
    std::set<std::string> assigned;
    collect_assigned_names(proc.body, /*signals=*/true, assigned);
    for (const auto& name : assigned) {
      const Sym& sym = scope.syms.at(name);
      env.signals[name] = net().undef(sym.type.width);
    }
    seed_variables(scope, proc, env, /*as_registers=*/false, nullptr);
    exec_stmts(scope, proc.body, env);
    auto [stored, inserted] = scope.comb_results.emplace(&proc, env.signals);
    (void)inserted;
    return stored->second;
  }

  void seed_variables(Scope& scope, const ProcessStmt& proc, ExecEnv& env,
                      bool as_registers, const RegBookkeeping* book) {
    for (const auto& v : proc.variables) {
      NetType type = compute_net_type(v.type, &scope);
      std::string canonical = fold_name(v.name);
      env.var_types[canonical] = type;
      if (as_registers) {
        int slot = -1;
        for (const auto& [name, s] : book->var_slots) {
          if (name == canonical) slot = s;
        }
        env.vars[canonical] = net().reg(slot, type.width, type.is_signed);
      } else if (v.init) {
        env.vars[canonical] =
            net().constant(fold_const_bits(*v.init, type, &scope));
      } else {
        env.vars[canonical] = net().undef(type.width);
      }
    }
  }

  void exec_clocked_process(Scope& scope, const ProcessStmt& proc) {
    const RegBookkeeping& book = scope.clocked.at(&proc);

    ExecEnv env;
    for (const auto& [name, slot] : book.signal_slots) {
      const Sym& sym = scope.syms.at(name);
      env.signals[name] = net().reg(slot, sym.type.width, sym.type.is_signed);
    }
    seed_variables(scope, proc, env, /*as_registers=*/true, &book);

    const auto& top = std::get<vhdl::IfStmt>(proc.body.front().node);
    if (top.arms.size() == 1) {
      exec_stmts(scope, top.arms[0].body, env);
    } else {
      // Async reset: arm 0 is the reset branch, arm 1 the clocked branch.
      NodeId cond = build_condition(scope, top.arms[0].condition, &env);
      ExecEnv reset_env = env;
      ExecEnv clocked_env = env;
      exec_stmts(scope, top.arms[0].body, reset_env);
      exec_stmts(scope, top.arms[1].body, clocked_env);
      merge_envs(cond, reset_env, clocked_env, env);
    }

    for (const auto& [name, slot] : book.signal_slots)
      out_.next_state_roots[static_cast<size_t>(slot)] = env.signals.at(name);
    for (const auto& [name, slot] : book.var_slots)
      out_.next_state_roots[static_cast<size_t>(slot)] = env.vars.at(name);
  }

  void merge_envs(NodeId cond, const ExecEnv& then_env, const ExecEnv& else_env,
                  ExecEnv& out) {
    for (auto& [name, node] : out.signals) {
      NodeId t = then_env.signals.at(name);
      NodeId e = else_env.signals.at(name);
      node = t == e ? t : net().ite(cond, t, e);
    }
    for (auto& [name, node] : out.vars) {
      NodeId t = then_env.vars.at(name);
      NodeId e = else_env.vars.at(name);
      node = t == e ? t : net().ite(cond, t, e);
    }
  }

  void exec_stmts(Scope& scope, const std::vector<SeqStmt>& stmts, ExecEnv& env) {
    for (const auto& stmt : stmts) exec_stmt(scope, stmt, env);
  }

  void exec_stmt(Scope& scope, const SeqStmt& stmt, ExecEnv& env) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, vhdl::SignalAssignStmt>) {
            if (env.in_function)
              throw ElaborationError("signal assignment inside function");
            exec_assign(scope, node.target, node.value, env, /*variable=*/false);
          } else if constexpr (std::is_same_v<T, vhdl::VariableAssignStmt>) {
            exec_assign(scope, node.target, node.value, env, /*variable=*/true);
          } else if constexpr (std::is_same_v<T, vhdl::IfStmt>) {
            exec_if(scope, node, 0, env);
          } else if constexpr (std::is_same_v<T, vhdl::CaseStmt>) {
            exec_case(scope, node, env);
          }
          // NullStmt: nothing.
        },
        stmt.node);
  }

  void exec_if(Scope& scope, const vhdl::IfStmt& stmt, size_t arm_index,
               ExecEnv& env) {
    if (arm_index >= stmt.arms.size()) {
      if (stmt.else_body) exec_stmts(scope, *stmt.else_body, env);
      return;
    }
    const auto& arm = stmt.arms[arm_index];
    NodeId cond = build_condition(scope, arm.condition, &env);
    ExecEnv then_env = env;
    ExecEnv else_env = env;
    exec_stmts(scope, arm.body, then_env);
    exec_if(scope, stmt, arm_index + 1, else_env);
    merge_envs(cond, then_env, else_env, env);
  }

  void exec_case(Scope& scope, const vhdl::CaseStmt& stmt, ExecEnv& env) {
    BuiltValue selector = build_expr(scope, stmt.selector, &env, -1);
    exec_case_arm(scope, stmt, 0, selector, env);
  }

  void exec_case_arm(Scope& scope, const vhdl::CaseStmt& stmt, size_t index,
                     const BuiltValue& selector, ExecEnv& env) {
    if (index >= stmt.arms.size()) return;  // unmatched: everything holds
    const auto& arm = stmt.arms[index];
    if (arm.is_others) {
      exec_stmts(scope, arm.body, env);
      return;
    }
    NodeId cond = -1;
    for (const auto& choice : arm.choices) {
      NodeId c = net().eq(selector.node, choice_const(choice, selector.width));
      cond = cond < 0 ? c : net().binary(OpKind::Or, cond, c);
    }
    ExecEnv then_env = env;
    ExecEnv else_env = env;
    exec_stmts(scope, arm.body, then_env);
    exec_case_arm(scope, stmt, index + 1, selector, else_env);
    merge_envs(cond, then_env, else_env, env);
  }

  void exec_assign(Scope& scope, const Expr& target, const Expr& value,
                   ExecEnv& env, bool variable) {
    // Base name plus optional constant bit range.
    const Expr* base = &target;
    if (const auto* idx = std::get_if<vhdl::IndexExpr>(&target.node))
      base = &*idx->base;
    else if (const auto* sl = std::get_if<vhdl::SliceExpr>(&target.node))
      base = &*sl->base;
    const auto* name = std::get_if<vhdl::NameRef>(&base->node);
    if (name == nullptr) throw ElaborationError("unsupported assignment target");
    std::string canonical = fold_name(name->name);

    NetType type;
    NodeId* slot = nullptr;
    if (variable) {
      auto it = env.vars.find(canonical);
      if (it == env.vars.end())
        throw ElaborationError("\"" + canonical + "\" is not a variable here");
      type = env.var_types.at(canonical);
      slot = &it->second;
    } else {
      auto it = env.signals.find(canonical);
      if (it == env.signals.end())
        throw ElaborationError("internal: unclaimed signal \"" + canonical + "\"");
      type = scope.syms.at(canonical).type;
      slot = &it->second;
    }

    auto [lo, hi] = target_bit_range(scope, target, type, &env);
    NetType value_type = type;
    value_type.width = hi - lo + 1;
    NodeId value_node = build_assign_value(scope, value, value_type, &env);
    if (lo == 0 && hi == type.width - 1) {
      *slot = value_node;
      return;
    }
    // Read-modify-write splice around the assigned bits.
    NodeId current = *slot;
    NodeId acc = value_node;
    if (lo > 0) acc = net().concat(acc, net().slice(current, lo - 1, 0));
    if (hi < type.width - 1)
      acc = net().concat(net().slice(current, type.width - 1, hi + 1), acc);
    *slot = acc;
  }

  // ---- expression building ------------------------------------------------

  NodeId build_condition(Scope& scope, const Expr& e, ExecEnv* env) {
    BuiltValue v = build_expr(scope, e, env, 1);
    if (v.width != 1)
      throw ElaborationError("condition is not a single-bit value");
    return v.node;
  }

  // expected_width: width hint for aggregates and bare integer literals;
  // -1 when the context imposes none.
  NodeId build_assign_value(Scope& scope, const Expr& e, const NetType& type,
                            ExecEnv* env) {
    BuiltValue v = build_expr(scope, e, env, type.width);
    if (v.width != type.width)
      throw ElaborationError("assignment width mismatch (" +
                             std::to_string(v.width) + " vs " +
                             std::to_string(type.width) + ")");
    return v.node;
  }

  BuiltValue make_literal(Scope& scope, const vhdl::Literal& lit,
                          int expected_width) {
    (void)scope;
    BuiltValue v;
    switch (lit.kind) {
      case vhdl::TokenKind::LiteralInt: {
        int64_t value = literal_int_value(lit.text);
        v.is_int_literal = true;
        v.literal = value;
        v.width = expected_width > 0 ? expected_width : 32;
        v.is_signed = expected_width <= 0;
        if (expected_width > 0 && expected_width < 64 &&
            value >= 0 && static_cast<uint64_t>(value) >> expected_width != 0)
          throw ElaborationError("literal " + lit.text +
                                 " does not fit in " +
                                 std::to_string(expected_width) + " bits");
        v.node = net().constant(BitVec(v.width, static_cast<uint64_t>(value)));
        return v;
      }
      case vhdl::TokenKind::LiteralBit:
        v.width = 1;
        v.node = net().constant(BitVec(1, lit.text == "'1'" ? 1 : 0));
        return v;
      case vhdl::TokenKind::LiteralBitVector: {
        BitVec bits = BitVec::from_binary(lit.text.substr(1, lit.text.size() - 2));
        v.width = bits.width();
        v.node = net().constant(bits);
        return v;
      }
      case vhdl::TokenKind::LiteralChar:
        throw ElaborationError(
            "only two-valued ('0'/'1') literals are supported, got " + lit.text);
      default:
        throw ElaborationError("string literals are unsupported here");
    }
  }

  BuiltValue name_value(Scope& scope, const std::string& spelling, ExecEnv* env) {
    std::string canonical = fold_name(spelling);
    if (env != nullptr) {
      auto it = env->vars.find(canonical);
      if (it != env->vars.end()) {
        const NetType& type = env->var_types.at(canonical);
        BuiltValue v;
        v.node = it->second;
        v.width = type.width;
        v.is_signed = type.is_signed;
        return v;
      }
    }
    if (scope.syms.find(canonical) == scope.syms.end()) {
      if (canonical == "true" || canonical == "false") {
        BuiltValue v;
        v.width = 1;
        v.node = net().constant(BitVec(1, canonical == "true" ? 1 : 0));
        return v;
      }
      throw ElaborationError("unresolved name \"" + spelling + "\"");
    }
    if (env != nullptr && env->in_function) {
      const Sym& sym = scope.syms.at(canonical);
      if (sym.kind != Sym::Kind::Constant)
        throw ElaborationError("function reads non-constant \"" + spelling +
                               "\"");
    }
    const Sym& sym = scope.syms.at(canonical);
    BuiltValue v;
    v.node = resolve(scope, canonical);
    v.width = sym.type.width;
    v.is_signed = sym.type.is_signed;
    return v;
  }

  NetType type_of_name(Scope& scope, const std::string& spelling, ExecEnv* env) {
    std::string canonical = fold_name(spelling);
    if (env != nullptr) {
      auto it = env->var_types.find(canonical);
      if (it != env->var_types.end()) return it->second;
    }
    auto sym = scope.syms.find(canonical);
    if (sym == scope.syms.end())
      throw ElaborationError("unresolved name \"" + spelling + "\"");
    return sym->second.type;
  }

  BuiltValue build_expr(Scope& scope, const Expr& e, ExecEnv* env,
                        int expected_width) {
    return std::visit(
        [&](const auto& node) -> BuiltValue {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, vhdl::NameRef>) {
            return name_value(scope, node.name, env);
          } else if constexpr (std::is_same_v<T, vhdl::Literal>) {
            return make_literal(scope, node, expected_width);
          } else if constexpr (std::is_same_v<T, vhdl::UnaryExpr>) {
            BuiltValue a = build_expr(scope, *node.operand, env, expected_width);
            BuiltValue v = a;
            if (node.op == UnaryOp::Not) {
              v.node = net().not_of(a.node);
            } else {
              NodeId zero = net().constant(BitVec(a.width, 0));
              v.node = net().binary(OpKind::Sub, zero, a.node);
            }
            v.is_int_literal = false;
            return v;
          } else if constexpr (std::is_same_v<T, vhdl::BinaryExpr>) {
            return build_binary(scope, node, env, expected_width);
          } else if constexpr (std::is_same_v<T, vhdl::CallExpr>) {
            return build_call(scope, node, e.span, env);
          } else if constexpr (std::is_same_v<T, vhdl::IndexExpr>) {
            const auto* name = std::get_if<vhdl::NameRef>(&node.base->node);
            if (name == nullptr)
              throw ElaborationError("indexing of compound expressions");
            NetType type = type_of_name(scope, name->name, env);
            if (!type.is_vector)
              throw ElaborationError("indexing a scalar value");
            BuiltValue base = name_value(scope, name->name, env);
            int pos = type.phys(fold_const(*node.index, &scope));
            BuiltValue v;
            v.node = net().index_bit(base.node, pos);
            v.width = 1;
            return v;
          } else if constexpr (std::is_same_v<T, vhdl::SliceExpr>) {
            const auto* name = std::get_if<vhdl::NameRef>(&node.base->node);
            if (name == nullptr)
              throw ElaborationError("slicing of compound expressions");
            NetType type = type_of_name(scope, name->name, env);
            if (!type.is_vector)
              throw ElaborationError("slicing a scalar value");
            if (node.dir != type.dir)
              throw ElaborationError("slice direction mismatch");
            BuiltValue base = name_value(scope, name->name, env);
            int a = type.phys(fold_const(*node.left, &scope));
            int b = type.phys(fold_const(*node.right, &scope));
            BuiltValue v;
            v.node = net().slice(base.node, std::max(a, b), std::min(a, b));
            v.width = std::abs(a - b) + 1;
            v.is_signed = type.is_signed;
            return v;
          } else {
            static_assert(std::is_same_v<T, vhdl::AggregateOthers>);
            if (expected_width <= 0)
              throw ElaborationError(
                  "aggregate in a context without a known width");
            const auto* lit = std::get_if<vhdl::Literal>(&node.value->node);
            if (lit == nullptr || lit->kind != vhdl::TokenKind::LiteralBit)
              throw ElaborationError("aggregate fill must be '0' or '1'");
            BuiltValue v;
            v.width = expected_width;
            uint64_t bits = lit->text == "'1'" ? ~0ULL : 0;
            v.node = net().constant(BitVec(expected_width, bits));
            return v;
          }
        },
        e.node);
  }

  static bool is_int_literal_expr(const Expr& e) {
    const auto* lit = std::get_if<vhdl::Literal>(&e.node);
    return lit != nullptr && lit->kind == vhdl::TokenKind::LiteralInt;
  }

  BuiltValue build_binary(Scope& scope, const vhdl::BinaryExpr& node,
                          ExecEnv* env, int expected_width) {
    BinaryOp op = node.op;
    bool arith_like = op != BinaryOp::Concat;

    BuiltValue lhs, rhs;
    if (arith_like && is_int_literal_expr(*node.lhs) &&
        !is_int_literal_expr(*node.rhs)) {
      rhs = build_expr(scope, *node.rhs, env,
                       op_result_hint(op, expected_width));
      lhs = build_expr(scope, *node.lhs, env, rhs.width);
    } else if (arith_like && is_int_literal_expr(*node.rhs) &&
               !is_int_literal_expr(*node.lhs)) {
      lhs = build_expr(scope, *node.lhs, env,
                       op_result_hint(op, expected_width));
      rhs = build_expr(scope, *node.rhs, env, lhs.width);
    } else {
      int hint = op_result_hint(op, expected_width);
      lhs = build_expr(scope, *node.lhs, env, hint);
      rhs = build_expr(scope, *node.rhs, env, hint);
    }

    if (op == BinaryOp::Concat) {
      BuiltValue v;
      if (lhs.is_int_literal || rhs.is_int_literal)
        throw ElaborationError("unsized integer literal in concatenation");
      v.node = net().concat(lhs.node, rhs.node);
      v.width = lhs.width + rhs.width;
      return v;
    }

    if (lhs.width != rhs.width)
      throw ElaborationError("operand width mismatch (" +
                             std::to_string(lhs.width) + " vs " +
                             std::to_string(rhs.width) + ")");
    bool cmp_signed = lhs.is_signed || rhs.is_signed;
    BuiltValue v;
    v.width = 1;
    switch (op) {
      case BinaryOp::And:
        v.node = net().binary(OpKind::And, lhs.node, rhs.node);
        v.width = lhs.width;
        break;
      case BinaryOp::Or:
        v.node = net().binary(OpKind::Or, lhs.node, rhs.node);
        v.width = lhs.width;
        break;
      case BinaryOp::Xor:
        v.node = net().binary(OpKind::Xor, lhs.node, rhs.node);
        v.width = lhs.width;
        break;
      case BinaryOp::Nand:
        v.node = net().not_of(net().binary(OpKind::And, lhs.node, rhs.node));
        v.width = lhs.width;
        break;
      case BinaryOp::Nor:
        v.node = net().not_of(net().binary(OpKind::Or, lhs.node, rhs.node));
        v.width = lhs.width;
        break;
      case BinaryOp::Xnor:
        v.node = net().not_of(net().binary(OpKind::Xor, lhs.node, rhs.node));
        v.width = lhs.width;
        break;
      case BinaryOp::Add:
        v.node = net().binary(OpKind::Add, lhs.node, rhs.node);
        v.width = lhs.width;
        break;
      case BinaryOp::Sub:
        v.node = net().binary(OpKind::Sub, lhs.node, rhs.node);
        v.width = lhs.width;
        break;
      case BinaryOp::Eq:
        v.node = net().eq(lhs.node, rhs.node);
        break;
      case BinaryOp::Ne:
        v.node = net().not_of(net().eq(lhs.node, rhs.node));
        break;
      case BinaryOp::Lt:
        v.node = net().less(lhs.node, rhs.node, cmp_signed, false);
        break;
      case BinaryOp::Le:
        v.node = net().less(lhs.node, rhs.node, cmp_signed, true);
        break;
      case BinaryOp::Gt:
        v.node = net().less(rhs.node, lhs.node, cmp_signed, false);
        break;
      case BinaryOp::Ge:
        v.node = net().less(rhs.node, lhs.node, cmp_signed, true);
        break;
      case BinaryOp::Concat:
        break;
    }
    v.is_signed = lhs.is_signed || rhs.is_signed;
    if (v.width == 1 && op != BinaryOp::And && op != BinaryOp::Or &&
        op != BinaryOp::Xor && op != BinaryOp::Nand && op != BinaryOp::Nor &&
        op != BinaryOp::Xnor && op != BinaryOp::Add && op != BinaryOp::Sub)
      v.is_signed = false;  // comparison results are plain bits
    return v;
  }

  static int op_result_hint(BinaryOp op, int expected_width) {
    switch (op) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
      case BinaryOp::And:
      case BinaryOp::Or:
      case BinaryOp::Nand:
      case BinaryOp::Nor:
      case BinaryOp::Xor:
      case BinaryOp::Xnor:
        return expected_width;  // operands share the result width
      default:
        return -1;
    }
  }

  BuiltValue build_call(Scope& scope, const vhdl::CallExpr& call,
                        vhdl::SourceSpan span, ExecEnv* env) {
    (void)span;
    std::string folded = fold_name(call.callee);
    auto arg = [&](size_t i, int hint) {
      return build_expr(scope, call.args.at(i), env, hint);
    };

    if (folded == "rising_edge" || folded == "falling_edge")
      throw ElaborationError(
          "edge functions are only supported as process guards");

    if (folded == "std_logic_vector" || folded == "unsigned" ||
        folded == "signed") {
      if (call.args.size() != 1)
        throw ElaborationError(folded + " takes one argument");
      BuiltValue v = arg(0, -1);
      v.is_signed = folded == "signed";
      v.is_int_literal = false;
      return v;
    }
    if (folded == "to_unsigned" || folded == "to_signed") {
      if (call.args.size() != 2)
        throw ElaborationError(folded + " takes two arguments");
      int64_t width = fold_const(call.args[1], &scope);
      if (width < 1 || width > 64)
        throw ElaborationError("conversion width out of range");
      BuiltValue v = arg(0, -1);
      v.node = net().resize(v.node, static_cast<int>(width),
                            folded == "to_signed" && v.is_signed);
      v.width = static_cast<int>(width);
      v.is_signed = folded == "to_signed";
      v.is_int_literal = false;
      return v;
    }
    if (folded == "to_integer") {
      BuiltValue v = arg(0, -1);
      v.node = net().resize(v.node, 32, v.is_signed);
      v.width = 32;
      v.is_int_literal = false;
      return v;
    }
    if (folded == "resize") {
      if (call.args.size() != 2)
        throw ElaborationError("resize takes two arguments");
      int64_t width = fold_const(call.args[1], &scope);
      if (width < 1 || width > 64)
        throw ElaborationError("resize width out of range");
      BuiltValue v = arg(0, -1);
      v.node = net().resize(v.node, static_cast<int>(width), v.is_signed);
      v.width = static_cast<int>(width);
      v.is_int_literal = false;
      return v;
    }

    auto fn = scope.functions.find(folded);
    if (fn == scope.functions.end())
      throw ElaborationError("call of unknown function \"" + call.callee + "\"");
    return exec_function(scope, *fn->second, call, env);
  }

  BuiltValue exec_function(Scope& scope, const vhdl::FunctionDecl& fn,
                           const vhdl::CallExpr& call, ExecEnv* env) {
    if (++function_depth_ > 16)
      throw ElaborationError("function call nesting too deep");
    if (call.args.size() != fn.params.size())
      throw ElaborationError("wrong argument count calling " + fn.name);

    ExecEnv fn_env;
    fn_env.in_function = true;
    for (size_t i = 0; i < fn.params.size(); ++i) {
      NetType type = compute_net_type(fn.params[i].type, &scope);
      BuiltValue value = build_expr(scope, call.args[i], env, type.width);
      if (value.width != type.width)
        throw ElaborationError("argument width mismatch calling " + fn.name);
      std::string canonical = fold_name(fn.params[i].name);
      fn_env.vars[canonical] = value.node;
      fn_env.var_types[canonical] = type;
    }
    for (const auto& v : fn.variables) {
      NetType type = compute_net_type(v.type, &scope);
      std::string canonical = fold_name(v.name);
      fn_env.var_types[canonical] = type;
      fn_env.vars[canonical] =
          v.init ? net().constant(fold_const_bits(*v.init, type, &scope))
                 : net().undef(type.width);
    }
    exec_stmts(scope, fn.body, fn_env);
    NetType ret_type = compute_net_type(fn.return_type, &scope);
    NodeId result = build_assign_value(scope, *fn.return_expr, ret_type, &fn_env);
    if (net().cone_contains_undef(result))
      throw ElaborationError("function " + fn.name +
                             " reads a variable before assignment");
    --function_depth_;
    BuiltValue v;
    v.node = result;
    v.width = ret_type.width;
    v.is_signed = ret_type.is_signed;
    return v;
  }

  // ---- reset detection --------------------------------------------------------

  void detect_reset(const EntityDecl& entity, const ArchitectureBody& arch) {
    auto is_top_in_port = [&](const std::string& canonical) {
      for (const auto& p : entity.ports) {
        if (p.dir == PortDir::In && fold_name(p.name) == canonical) return true;
      }
      return false;
    };
    auto match_reset_cond = [&](const Expr& cond, std::string* port,
                                bool* active_high) -> bool {
      if (const auto* name = std::get_if<vhdl::NameRef>(&cond.node)) {
        *port = fold_name(name->name);
        *active_high = true;
        return is_top_in_port(*port);
      }
      if (const auto* un = std::get_if<vhdl::UnaryExpr>(&cond.node)) {
        if (un->op != UnaryOp::Not) return false;
        const auto* name = std::get_if<vhdl::NameRef>(&un->operand->node);
        if (name == nullptr) return false;
        *port = fold_name(name->name);
        *active_high = false;
        return is_top_in_port(*port);
      }
      const auto* bin = std::get_if<vhdl::BinaryExpr>(&cond.node);
      if (bin == nullptr || bin->op != BinaryOp::Eq) return false;
      const auto* name = std::get_if<vhdl::NameRef>(&bin->lhs->node);
      const auto* lit = std::get_if<vhdl::Literal>(&bin->rhs->node);
      if (name == nullptr || lit == nullptr ||
          lit->kind != vhdl::TokenKind::LiteralBit)
        return false;
      *port = fold_name(name->name);
      *active_high = lit->text == "'1'";
      return is_top_in_port(*port);
    };

    for (const auto& stmt : arch.statements) {
      const auto* proc = std::get_if<ProcessStmt>(&stmt.node);
      if (proc == nullptr) continue;
      const vhdl::IfStmt* top = clocked_process_shape(*proc, nullptr, nullptr);
      if (top == nullptr) continue;
      std::string port;
      bool active_high = true;
      if (top->arms.size() == 2) {
        if (match_reset_cond(top->arms[0].condition, &port, &active_high)) {
          out_.reset = ResetInfo{port, active_high, /*is_async=*/true};
          return;
        }
      } else if (top->arms.size() == 1 && top->arms[0].body.size() >= 1) {
        const auto* inner =
            std::get_if<vhdl::IfStmt>(&top->arms[0].body.front().node);
        if (inner != nullptr && !inner->arms.empty() &&
            match_reset_cond(inner->arms[0].condition, &port, &active_high)) {
          out_.reset = ResetInfo{port, active_high, /*is_async=*/false};
          return;
        }
      }
    }
  }
};

}  // namespace

int ElaboratedDesign::input_index(const std::string& canonical_name) const {
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].name == canonical_name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<BitVec> ElaboratedDesign::initial_state() const {
  std::vector<BitVec> state;
  state.reserve(registers.size());
  for (const auto& reg : registers) state.push_back(reg.init);
  return state;
}

ElaboratedDesign elaborate(const DesignFile& file,
                           const std::string& top_entity) {
  Elaborator elaborator(file);
  return elaborator.run(top_entity);
}

std::string find_top_entity(const DesignFile& file) {
  std::vector<std::string> with_arch;
  std::set<std::string> instantiated;
  std::set<std::string> entity_names;
  for (const auto& unit : file.units) {
    if (const auto* entity = std::get_if<EntityDecl>(&unit.node))
      entity_names.insert(fold_name(entity->name));
  }
  for (const auto& unit : file.units) {
    const auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) continue;
    if (entity_names.count(fold_name(arch->entity_name)) > 0)
      with_arch.push_back(fold_name(arch->entity_name));
    for (const auto& stmt : arch->statements) {
      if (const auto* inst = std::get_if<ComponentInstance>(&stmt.node))
        instantiated.insert(fold_name(inst->component_name));
    }
  }
  std::string top;
  for (const auto& name : with_arch) {
    if (instantiated.count(name) == 0) top = name;  // last root wins
  }
  if (top.empty() && !with_arch.empty()) top = with_arch.back();
  if (top.empty()) throw ElaborationError("no entity with an architecture");
  return top;
}

StepResult simulate_step(const ElaboratedDesign& design,
                         const std::vector<BitVec>& state,
                         const std::map<std::string, BitVec>& inputs) {
  if (state.size() != design.registers.size())
    throw WidthMismatch("state size does not match register count");
  for (size_t i = 0; i < state.size(); ++i) {
    if (state[i].width() != design.registers[i].width)
      throw WidthMismatch("state width for " + design.registers[i].name);
  }
  std::vector<BitVec> input_values(design.inputs.size());
  for (size_t i = 0; i < design.inputs.size(); ++i) {
    auto it = inputs.find(design.inputs[i].name);
    if (it == inputs.end())
      throw WidthMismatch("missing input \"" + design.inputs[i].name + "\"");
    if (it->second.width() != design.inputs[i].width)
      throw WidthMismatch("input \"" + design.inputs[i].name + "\"");
    input_values[i] = it->second;
  }

  std::vector<BitVec> values;
  design.netlist.eval(input_values, state, values);

  StepResult result;
  result.next_state.reserve(design.registers.size());
  for (size_t i = 0; i < design.registers.size(); ++i)
    result.next_state.push_back(
        values[static_cast<size_t>(design.next_state_roots[i])]);
  for (size_t i = 0; i < design.outputs.size(); ++i)
    result.outputs[design.outputs[i].name] =
        values[static_cast<size_t>(design.output_roots[i])];
  return result;
}

}  // namespace vcodes::equiv
