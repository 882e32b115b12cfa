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

#include "vcodes/vhdl/ast.hpp"

namespace vcodes::vhdl {

bool type_mark_is_vector(TypeMark mark) {
  return mark == TypeMark::StdLogicVector || mark == TypeMark::Unsigned ||
         mark == TypeMark::Signed;
}

const char* type_mark_name(TypeMark mark) {
  switch (mark) {
    case TypeMark::StdLogic: return "std_logic";
    case TypeMark::StdLogicVector: return "std_logic_vector";
    case TypeMark::Unsigned: return "unsigned";
    case TypeMark::Signed: return "signed";
    case TypeMark::Integer: return "integer";
    case TypeMark::Boolean: return "boolean";
  }
  return "?";
}

const char* port_dir_name(PortDir dir) {
  switch (dir) {
    case PortDir::In: return "in";
    case PortDir::Out: return "out";
    case PortDir::Inout: return "inout";
  }
  return "?";
}

namespace {

template <typename T>
bool eq_vec(const std::vector<T>& a, const std::vector<T>& b,
            bool (*eq)(const T&, const T&)) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) return false;
  }
  return true;
}

bool eq_comments(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  return a == b;
}

bool eq_range(const RangeSpec& a, const RangeSpec& b) {
  return a.dir == b.dir && struct_equal(a.left, b.left) &&
         struct_equal(a.right, b.right);
}

bool eq_subtype(const SubtypeSpec& a, const SubtypeSpec& b) {
  if (a.mark != b.mark) return false;
  if (a.range.has_value() != b.range.has_value()) return false;
  return !a.range || eq_range(*a.range, *b.range);
}

bool eq_opt_expr(const std::optional<Expr>& a, const std::optional<Expr>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || struct_equal(*a, *b);
}

bool eq_name(const std::string& a, const std::string& b) {
  return fold_name(a) == fold_name(b);
}

bool eq_opt_name(const std::optional<std::string>& a,
                 const std::optional<std::string>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || eq_name(*a, *b);
}

bool eq_port(const PortDecl& a, const PortDecl& b) {
  return eq_name(a.name, b.name) && a.dir == b.dir && eq_subtype(a.type, b.type);
}

bool eq_generic(const GenericDecl& a, const GenericDecl& b) {
  return eq_name(a.name, b.name) && eq_subtype(a.type, b.type) &&
         eq_opt_expr(a.default_value, b.default_value);
}

bool eq_variable(const VariableDecl& a, const VariableDecl& b) {
  return eq_name(a.name, b.name) && eq_subtype(a.type, b.type) &&
         eq_opt_expr(a.init, b.init);
}

bool eq_param(const ParamDecl& a, const ParamDecl& b) {
  return eq_name(a.name, b.name) && a.dir == b.dir && eq_subtype(a.type, b.type);
}

bool eq_seq_list(const std::vector<SeqStmt>& a, const std::vector<SeqStmt>& b) {
  return eq_vec<SeqStmt>(a, b, &struct_equal);
}

bool eq_expr_list(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  return eq_vec<Expr>(a, b, &struct_equal);
}

}  // namespace

bool struct_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, NameRef>) {
          return fold_name(lhs.name) == fold_name(rhs.name);
        } else if constexpr (std::is_same_v<T, Literal>) {
          return lhs.kind == rhs.kind && lhs.text == rhs.text;
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return lhs.op == rhs.op && struct_equal(*lhs.operand, *rhs.operand);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return lhs.op == rhs.op && struct_equal(*lhs.lhs, *rhs.lhs) &&
                 struct_equal(*lhs.rhs, *rhs.rhs);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          return fold_name(lhs.callee) == fold_name(rhs.callee) &&
                 eq_expr_list(lhs.args, rhs.args);
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          return struct_equal(*lhs.base, *rhs.base) &&
                 struct_equal(*lhs.index, *rhs.index);
        } else if constexpr (std::is_same_v<T, SliceExpr>) {
          return lhs.dir == rhs.dir && struct_equal(*lhs.base, *rhs.base) &&
                 struct_equal(*lhs.left, *rhs.left) &&
                 struct_equal(*lhs.right, *rhs.right);
        } else {
          static_assert(std::is_same_v<T, AggregateOthers>);
          return struct_equal(*lhs.value, *rhs.value);
        }
      },
      a.node);
}

bool struct_equal(const SeqStmt& a, const SeqStmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (!eq_comments(a.leading_comments, b.leading_comments)) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SignalAssignStmt> ||
                      std::is_same_v<T, VariableAssignStmt>) {
          return struct_equal(lhs.target, rhs.target) &&
                 struct_equal(lhs.value, rhs.value);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          if (lhs.arms.size() != rhs.arms.size()) return false;
          for (size_t i = 0; i < lhs.arms.size(); ++i) {
            if (!struct_equal(lhs.arms[i].condition, rhs.arms[i].condition))
              return false;
            if (!eq_seq_list(lhs.arms[i].body, rhs.arms[i].body)) return false;
          }
          if (lhs.else_body.has_value() != rhs.else_body.has_value())
            return false;
          return !lhs.else_body || eq_seq_list(*lhs.else_body, *rhs.else_body);
        } else if constexpr (std::is_same_v<T, CaseStmt>) {
          if (!struct_equal(lhs.selector, rhs.selector)) return false;
          if (lhs.arms.size() != rhs.arms.size()) return false;
          for (size_t i = 0; i < lhs.arms.size(); ++i) {
            if (lhs.arms[i].is_others != rhs.arms[i].is_others) return false;
            if (!eq_expr_list(lhs.arms[i].choices, rhs.arms[i].choices))
              return false;
            if (!eq_seq_list(lhs.arms[i].body, rhs.arms[i].body)) return false;
          }
          return true;
        } else {
          static_assert(std::is_same_v<T, NullStmt>);
          return true;
        }
      },
      a.node);
}

bool struct_equal(const ConcurrentStmt& a, const ConcurrentStmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (!eq_comments(a.leading_comments, b.leading_comments)) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, ConcurrentAssign>) {
          return struct_equal(lhs.target, rhs.target) &&
                 struct_equal(lhs.value, rhs.value);
        } else if constexpr (std::is_same_v<T, ConditionalAssign>) {
          if (!struct_equal(lhs.target, rhs.target)) return false;
          if (lhs.branches.size() != rhs.branches.size()) return false;
          for (size_t i = 0; i < lhs.branches.size(); ++i) {
            if (!struct_equal(lhs.branches[i].value, rhs.branches[i].value))
              return false;
            if (!eq_opt_expr(lhs.branches[i].condition,
                             rhs.branches[i].condition))
              return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, SelectedAssign>) {
          if (!struct_equal(lhs.selector, rhs.selector)) return false;
          if (!struct_equal(lhs.target, rhs.target)) return false;
          if (lhs.waveforms.size() != rhs.waveforms.size()) return false;
          for (size_t i = 0; i < lhs.waveforms.size(); ++i) {
            if (lhs.waveforms[i].is_others != rhs.waveforms[i].is_others)
              return false;
            if (!struct_equal(lhs.waveforms[i].value, rhs.waveforms[i].value))
              return false;
            if (!eq_expr_list(lhs.waveforms[i].choices,
                              rhs.waveforms[i].choices))
              return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, ProcessStmt>) {
          if (!eq_opt_name(lhs.label, rhs.label)) return false;
          if (lhs.sensitivity.size() != rhs.sensitivity.size()) return false;
          for (size_t i = 0; i < lhs.sensitivity.size(); ++i) {
            if (fold_name(lhs.sensitivity[i].name) !=
                fold_name(rhs.sensitivity[i].name))
              return false;
          }
          if (!eq_vec<VariableDecl>(lhs.variables, rhs.variables, &eq_variable))
            return false;
          if (!eq_seq_list(lhs.body, rhs.body)) return false;
          return eq_comments(lhs.trailing_comments, rhs.trailing_comments);
        } else {
          static_assert(std::is_same_v<T, ComponentInstance>);
          if (!eq_name(lhs.label, rhs.label)) return false;
          if (fold_name(lhs.component_name) != fold_name(rhs.component_name))
            return false;
          if (lhs.port_map.size() != rhs.port_map.size()) return false;
          for (size_t i = 0; i < lhs.port_map.size(); ++i) {
            if (!eq_opt_name(lhs.port_map[i].formal, rhs.port_map[i].formal))
              return false;
            if (!struct_equal(lhs.port_map[i].actual, rhs.port_map[i].actual))
              return false;
          }
          return true;
        }
      },
      a.node);
}

bool struct_equal(const Declaration& a, const Declaration& b) {
  if (a.node.index() != b.node.index()) return false;
  if (!eq_comments(a.leading_comments, b.leading_comments)) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SignalDecl>) {
          return eq_name(lhs.name, rhs.name) && eq_subtype(lhs.type, rhs.type) &&
                 eq_opt_expr(lhs.init, rhs.init);
        } else if constexpr (std::is_same_v<T, ConstantDecl>) {
          return eq_name(lhs.name, rhs.name) && eq_subtype(lhs.type, rhs.type) &&
                 struct_equal(lhs.value, rhs.value);
        } else if constexpr (std::is_same_v<T, ComponentDecl>) {
          return eq_name(lhs.name, rhs.name) &&
                 eq_vec<PortDecl>(lhs.ports, rhs.ports, &eq_port);
        } else if constexpr (std::is_same_v<T, FunctionDecl>) {
          return eq_name(lhs.name, rhs.name) &&
                 eq_vec<ParamDecl>(lhs.params, rhs.params, &eq_param) &&
                 eq_subtype(lhs.return_type, rhs.return_type) &&
                 eq_vec<VariableDecl>(lhs.variables, rhs.variables,
                                      &eq_variable) &&
                 eq_seq_list(lhs.body, rhs.body) &&
                 struct_equal(*lhs.return_expr, *rhs.return_expr);
        } else {
          static_assert(std::is_same_v<T, ProcedureDecl>);
          return eq_name(lhs.name, rhs.name) &&
                 eq_vec<ParamDecl>(lhs.params, rhs.params, &eq_param) &&
                 eq_vec<VariableDecl>(lhs.variables, rhs.variables,
                                      &eq_variable) &&
                 eq_seq_list(lhs.body, rhs.body);
        }
      },
      a.node);
}

bool struct_equal(const DesignUnit& a, const DesignUnit& b) {
  if (a.node.index() != b.node.index()) return false;
  if (!eq_comments(a.leading_comments, b.leading_comments)) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, EntityDecl>) {
          return eq_name(lhs.name, rhs.name) &&
                 eq_vec<GenericDecl>(lhs.generics, rhs.generics, &eq_generic) &&
                 eq_vec<PortDecl>(lhs.ports, rhs.ports, &eq_port);
        } else if constexpr (std::is_same_v<T, ArchitectureBody>) {
          if (!eq_name(lhs.name, rhs.name) ||
              !eq_name(lhs.entity_name, rhs.entity_name))
            return false;
          if (!eq_vec<Declaration>(lhs.declarations, rhs.declarations,
                                   &struct_equal))
            return false;
          if (!eq_vec<ConcurrentStmt>(lhs.statements, rhs.statements,
                                      &struct_equal))
            return false;
          return eq_comments(lhs.trailing_comments, rhs.trailing_comments);
        } else {
          static_assert(std::is_same_v<T, PackageDecl>);
          return eq_name(lhs.name, rhs.name) &&
                 eq_vec<Declaration>(lhs.declarations, rhs.declarations,
                                     &struct_equal);
        }
      },
      a.node);
}

bool struct_equal(const DesignFile& a, const DesignFile& b) {
  if (a.context_clauses != b.context_clauses) return false;
  if (a.trailing_comments != b.trailing_comments) return false;
  return eq_vec<DesignUnit>(a.units, b.units, &struct_equal);
}

}  // namespace vcodes::vhdl
