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

#include "vcodes/vhdl/identifiers.hpp"

#include <set>
#include <unordered_map>

#include "vcodes/vhdl/parser.hpp"

namespace vcodes::vhdl {

const char* identifier_kind_name(IdentifierKind kind) {
  switch (kind) {
    case IdentifierKind::Entity: return "entity";
    case IdentifierKind::Package: return "package";
    case IdentifierKind::Process: return "process";
    case IdentifierKind::Architecture: return "architecture";
    case IdentifierKind::Port: return "port";
    case IdentifierKind::Signal: return "signal";
    case IdentifierKind::Constant: return "constant";
    case IdentifierKind::Component: return "component";
    case IdentifierKind::Function: return "function";
    case IdentifierKind::Procedure: return "procedure";
    case IdentifierKind::Variable: return "variable";
    case IdentifierKind::Label: return "label";
  }
  return "?";
}

const IdentifierEntry* IdentifierTable::find(const std::string& canonical,
                                             IdentifierKind kind) const {
  for (const auto& entry : entries) {
    if (entry.kind == kind && entry.canonical_name == canonical) return &entry;
  }
  return nullptr;
}

bool IdentifierTable::name_exists(const std::string& canonical) const {
  for (const auto& entry : entries) {
    if (entry.canonical_name == canonical) return true;
  }
  return false;
}

namespace {

class Collector {
 public:
  IdentifierTable run(const DesignFile& design) {
    // Declarations first so uses can be attributed.
    for (const auto& unit : design.units) {
      std::visit([&](const auto& node) { declare_unit(node); }, unit.node);
    }
    for (const auto& unit : design.units) {
      std::visit([&](const auto& node) { use_unit(node); }, unit.node);
    }
    return std::move(table_);
  }

 private:
  IdentifierTable table_;
  std::unordered_map<std::string, std::vector<size_t>> by_name_;

  void declare(const std::string& spelling, IdentifierKind kind,
               SourceSpan span) {
    std::string canonical = fold_name(spelling);
    for (size_t idx : by_name_[canonical]) {
      if (table_.entries[idx].kind == kind) {
        table_.entries[idx].occurrences.push_back({span, spelling});
        return;
      }
    }
    IdentifierEntry entry;
    entry.canonical_name = canonical;
    entry.original_spelling = spelling;
    entry.kind = kind;
    entry.occurrences.push_back({span, spelling});
    by_name_[canonical].push_back(table_.entries.size());
    table_.entries.push_back(std::move(entry));
  }

  void use(const std::string& spelling, SourceSpan span) {
    auto it = by_name_.find(fold_name(spelling));
    if (it == by_name_.end()) return;  // builtins and library names
    for (size_t idx : it->second) {
      table_.entries[idx].occurrences.push_back({span, spelling});
    }
  }

  // ---- declaration pass --------------------------------------------------

  void declare_unit(const EntityDecl& entity) {
    declare(entity.name, IdentifierKind::Entity, entity.name_span);
    for (const auto& g : entity.generics)
      declare(g.name, IdentifierKind::Constant, g.name_span);
    for (const auto& p : entity.ports)
      declare(p.name, IdentifierKind::Port, p.name_span);
  }

  void declare_unit(const ArchitectureBody& arch) {
    declare(arch.name, IdentifierKind::Architecture, arch.name_span);
    for (const auto& decl : arch.declarations) declare_declaration(decl);
    for (const auto& stmt : arch.statements) {
      if (const auto* proc = std::get_if<ProcessStmt>(&stmt.node)) {
        if (proc->label)
          declare(*proc->label, IdentifierKind::Process, proc->label_span);
        for (const auto& v : proc->variables)
          declare(v.name, IdentifierKind::Variable, v.name_span);
      } else if (const auto* inst = std::get_if<ComponentInstance>(&stmt.node)) {
        declare(inst->label, IdentifierKind::Label, inst->label_span);
      }
    }
  }

  void declare_unit(const PackageDecl& pkg) {
    declare(pkg.name, IdentifierKind::Package, pkg.name_span);
    for (const auto& decl : pkg.declarations) declare_declaration(decl);
  }

  void declare_declaration(const Declaration& decl) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SignalDecl>) {
            declare(node.name, IdentifierKind::Signal, node.name_span);
          } else if constexpr (std::is_same_v<T, ConstantDecl>) {
            declare(node.name, IdentifierKind::Constant, node.name_span);
          } else if constexpr (std::is_same_v<T, ComponentDecl>) {
            declare(node.name, IdentifierKind::Component, node.name_span);
            for (const auto& p : node.ports)
              declare(p.name, IdentifierKind::Port, p.name_span);
          } else if constexpr (std::is_same_v<T, FunctionDecl>) {
            declare(node.name, IdentifierKind::Function, node.name_span);
            for (const auto& p : node.params)
              declare(p.name, IdentifierKind::Variable, p.name_span);
            for (const auto& v : node.variables)
              declare(v.name, IdentifierKind::Variable, v.name_span);
          } else {
            static_assert(std::is_same_v<T, ProcedureDecl>);
            declare(node.name, IdentifierKind::Procedure, node.name_span);
            for (const auto& p : node.params)
              declare(p.name, IdentifierKind::Variable, p.name_span);
            for (const auto& v : node.variables)
              declare(v.name, IdentifierKind::Variable, v.name_span);
          }
        },
        decl.node);
  }

  // ---- use pass ------------------------------------------------------------

  void use_expr(const Expr& e) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, NameRef>) {
            use(node.name, e.span);
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            use_expr(*node.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            use_expr(*node.lhs);
            use_expr(*node.rhs);
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            use(node.callee, e.span);
            for (const auto& a : node.args) use_expr(a);
          } else if constexpr (std::is_same_v<T, IndexExpr>) {
            use_expr(*node.base);
            use_expr(*node.index);
          } else if constexpr (std::is_same_v<T, SliceExpr>) {
            use_expr(*node.base);
            use_expr(*node.left);
            use_expr(*node.right);
          } else if constexpr (std::is_same_v<T, AggregateOthers>) {
            use_expr(*node.value);
          }
        },
        e.node);
  }

  void use_subtype(const SubtypeSpec& type) {
    if (type.range) {
      use_expr(type.range->left);
      use_expr(type.range->right);
    }
  }

  void use_seq(const SeqStmt& stmt) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SignalAssignStmt> ||
                        std::is_same_v<T, VariableAssignStmt>) {
            use_expr(node.target);
            use_expr(node.value);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            for (const auto& arm : node.arms) {
              use_expr(arm.condition);
              for (const auto& s : arm.body) use_seq(s);
            }
            if (node.else_body)
              for (const auto& s : *node.else_body) use_seq(s);
          } else if constexpr (std::is_same_v<T, CaseStmt>) {
            use_expr(node.selector);
            for (const auto& arm : node.arms)
              for (const auto& s : arm.body) use_seq(s);
          }
        },
        stmt.node);
  }

  void use_unit(const EntityDecl& entity) {
    for (const auto& g : entity.generics) {
      use_subtype(g.type);
      if (g.default_value) use_expr(*g.default_value);
    }
    for (const auto& p : entity.ports) use_subtype(p.type);
  }

  void use_unit(const ArchitectureBody& arch) {
    use(arch.entity_name, arch.entity_name_span);
    for (const auto& decl : arch.declarations) use_declaration(decl);
    for (const auto& stmt : arch.statements) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ConcurrentAssign>) {
              use_expr(node.target);
              use_expr(node.value);
            } else if constexpr (std::is_same_v<T, ConditionalAssign>) {
              use_expr(node.target);
              for (const auto& branch : node.branches) {
                use_expr(branch.value);
                if (branch.condition) use_expr(*branch.condition);
              }
            } else if constexpr (std::is_same_v<T, SelectedAssign>) {
              use_expr(node.selector);
              use_expr(node.target);
              for (const auto& wf : node.waveforms) use_expr(wf.value);
            } else if constexpr (std::is_same_v<T, ProcessStmt>) {
              for (const auto& item : node.sensitivity) use(item.name, item.span);
              for (const auto& v : node.variables) {
                use_subtype(v.type);
                if (v.init) use_expr(*v.init);
              }
              for (const auto& s : node.body) use_seq(s);
            } else {
              static_assert(std::is_same_v<T, ComponentInstance>);
              use(node.component_name, node.component_span);
              for (const auto& assoc : node.port_map) {
                if (assoc.formal) use(*assoc.formal, assoc.formal_span);
                use_expr(assoc.actual);
              }
            }
          },
          stmt.node);
    }
  }

  void use_unit(const PackageDecl& pkg) {
    for (const auto& decl : pkg.declarations) use_declaration(decl);
  }

  void use_declaration(const Declaration& decl) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SignalDecl>) {
            use_subtype(node.type);
            if (node.init) use_expr(*node.init);
          } else if constexpr (std::is_same_v<T, ConstantDecl>) {
            use_subtype(node.type);
            use_expr(node.value);
          } else if constexpr (std::is_same_v<T, ComponentDecl>) {
            for (const auto& p : node.ports) use_subtype(p.type);
          } else if constexpr (std::is_same_v<T, FunctionDecl>) {
            for (const auto& p : node.params) use_subtype(p.type);
            use_subtype(node.return_type);
            for (const auto& v : node.variables) {
              use_subtype(v.type);
              if (v.init) use_expr(*v.init);
            }
            for (const auto& s : node.body) use_seq(s);
            use_expr(*node.return_expr);
          } else {
            static_assert(std::is_same_v<T, ProcedureDecl>);
            for (const auto& p : node.params) use_subtype(p.type);
            for (const auto& v : node.variables) {
              use_subtype(v.type);
              if (v.init) use_expr(*v.init);
            }
            for (const auto& s : node.body) use_seq(s);
          }
        },
        decl.node);
  }
};

// ---------------------------------------------------------------------------
// rename
// ---------------------------------------------------------------------------

class Renamer {
 public:
  explicit Renamer(const std::map<std::string, std::string>& mapping)
      : mapping_(mapping) {}

  DesignFile run(const DesignFile& design) {
    DesignFile out = design;
    for (auto& unit : out.units) {
      std::visit([&](auto& node) { rewrite_unit(node); }, unit.node);
    }
    return out;
  }

 private:
  const std::map<std::string, std::string>& mapping_;

  void apply(std::string& name) {
    auto it = mapping_.find(fold_name(name));
    if (it != mapping_.end()) name = it->second;
  }

  void apply_opt(std::optional<std::string>& name) {
    if (name) apply(*name);
  }

  void rewrite_expr(Expr& e) {
    std::visit(
        [&](auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, NameRef>) {
            apply(node.name);
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            rewrite_expr(*node.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            rewrite_expr(*node.lhs);
            rewrite_expr(*node.rhs);
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            apply(node.callee);
            for (auto& a : node.args) rewrite_expr(a);
          } else if constexpr (std::is_same_v<T, IndexExpr>) {
            rewrite_expr(*node.base);
            rewrite_expr(*node.index);
          } else if constexpr (std::is_same_v<T, SliceExpr>) {
            rewrite_expr(*node.base);
            rewrite_expr(*node.left);
            rewrite_expr(*node.right);
          } else if constexpr (std::is_same_v<T, AggregateOthers>) {
            rewrite_expr(*node.value);
          }
        },
        e.node);
  }

  void rewrite_subtype(SubtypeSpec& type) {
    if (type.range) {
      rewrite_expr(type.range->left);
      rewrite_expr(type.range->right);
    }
  }

  void rewrite_seq(SeqStmt& stmt) {
    std::visit(
        [&](auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SignalAssignStmt> ||
                        std::is_same_v<T, VariableAssignStmt>) {
            rewrite_expr(node.target);
            rewrite_expr(node.value);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            for (auto& arm : node.arms) {
              rewrite_expr(arm.condition);
              for (auto& s : arm.body) rewrite_seq(s);
            }
            if (node.else_body)
              for (auto& s : *node.else_body) rewrite_seq(s);
          } else if constexpr (std::is_same_v<T, CaseStmt>) {
            rewrite_expr(node.selector);
            for (auto& arm : node.arms)
              for (auto& s : arm.body) rewrite_seq(s);
          }
        },
        stmt.node);
  }

  void rewrite_variables(std::vector<VariableDecl>& vars) {
    for (auto& v : vars) {
      apply(v.name);
      rewrite_subtype(v.type);
      if (v.init) rewrite_expr(*v.init);
    }
  }

  void rewrite_params(std::vector<ParamDecl>& params) {
    for (auto& p : params) {
      apply(p.name);
      rewrite_subtype(p.type);
    }
  }

  void rewrite_declaration(Declaration& decl) {
    std::visit(
        [&](auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SignalDecl>) {
            apply(node.name);
            rewrite_subtype(node.type);
            if (node.init) rewrite_expr(*node.init);
          } else if constexpr (std::is_same_v<T, ConstantDecl>) {
            apply(node.name);
            rewrite_subtype(node.type);
            rewrite_expr(node.value);
          } else if constexpr (std::is_same_v<T, ComponentDecl>) {
            apply(node.name);
            for (auto& p : node.ports) {
              apply(p.name);
              rewrite_subtype(p.type);
            }
          } else if constexpr (std::is_same_v<T, FunctionDecl>) {
            apply(node.name);
            rewrite_params(node.params);
            rewrite_subtype(node.return_type);
            rewrite_variables(node.variables);
            for (auto& s : node.body) rewrite_seq(s);
            rewrite_expr(*node.return_expr);
          } else {
            static_assert(std::is_same_v<T, ProcedureDecl>);
            apply(node.name);
            rewrite_params(node.params);
            rewrite_variables(node.variables);
            for (auto& s : node.body) rewrite_seq(s);
          }
        },
        decl.node);
  }

  void rewrite_unit(EntityDecl& entity) {
    apply(entity.name);
    for (auto& g : entity.generics) {
      apply(g.name);
      rewrite_subtype(g.type);
      if (g.default_value) rewrite_expr(*g.default_value);
    }
    for (auto& p : entity.ports) {
      apply(p.name);
      rewrite_subtype(p.type);
    }
  }

  void rewrite_unit(ArchitectureBody& arch) {
    apply(arch.name);
    apply(arch.entity_name);
    for (auto& decl : arch.declarations) rewrite_declaration(decl);
    for (auto& stmt : arch.statements) {
      std::visit(
          [&](auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ConcurrentAssign>) {
              rewrite_expr(node.target);
              rewrite_expr(node.value);
            } else if constexpr (std::is_same_v<T, ConditionalAssign>) {
              rewrite_expr(node.target);
              for (auto& branch : node.branches) {
                rewrite_expr(branch.value);
                if (branch.condition) rewrite_expr(*branch.condition);
              }
            } else if constexpr (std::is_same_v<T, SelectedAssign>) {
              rewrite_expr(node.selector);
              rewrite_expr(node.target);
              for (auto& wf : node.waveforms) rewrite_expr(wf.value);
            } else if constexpr (std::is_same_v<T, ProcessStmt>) {
              apply_opt(node.label);
              for (auto& item : node.sensitivity) apply(item.name);
              rewrite_variables(node.variables);
              for (auto& s : node.body) rewrite_seq(s);
            } else {
              static_assert(std::is_same_v<T, ComponentInstance>);
              apply(node.label);
              apply(node.component_name);
              for (auto& assoc : node.port_map) {
                if (assoc.formal) apply(*assoc.formal);
                rewrite_expr(assoc.actual);
              }
            }
          },
          stmt.node);
    }
  }

  void rewrite_unit(PackageDecl& pkg) {
    apply(pkg.name);
    for (auto& decl : pkg.declarations) rewrite_declaration(decl);
  }
};

}  // namespace

IdentifierTable collect_identifiers(const DesignFile& design) {
  Collector collector;
  return collector.run(design);
}

DesignFile rename(const DesignFile& design,
                  const std::map<std::string, std::string>& mapping) {
  IdentifierTable table = collect_identifiers(design);

  std::set<std::string> new_folded;
  for (const auto& [from, to] : mapping) {
    if (is_reserved_word(to)) throw ReservedWordError(to);
    if (!is_valid_identifier(to))
      throw std::invalid_argument("\"" + to + "\" is not a valid identifier");
    std::string folded = fold_name(to);
    if (is_predefined_name(folded)) throw RenameCollision(to);
    if (!new_folded.insert(folded).second) {
      // Two keys mapping to the same spelling collide unless they are the
      // same canonical target of an identity pair; keep it strict.
      throw RenameCollision(to);
    }
  }
  for (const auto& entry : table.entries) {
    if (mapping.count(entry.canonical_name) > 0) continue;  // being renamed
    if (new_folded.count(entry.canonical_name) > 0)
      throw RenameCollision(entry.original_spelling);
  }

  Renamer renamer(mapping);
  return renamer.run(design);
}

}  // namespace vcodes::vhdl
