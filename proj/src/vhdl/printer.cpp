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

#include "vcodes/vhdl/printer.hpp"

#include <sstream>

namespace vcodes::vhdl {

namespace {

const char* binary_op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
    case BinaryOp::Nand: return "nand";
    case BinaryOp::Nor: return "nor";
    case BinaryOp::Xor: return "xor";
    case BinaryOp::Xnor: return "xnor";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "/=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Concat: return "&";
  }
  return "?";
}

bool op_is_logical(BinaryOp op) {
  switch (op) {
    case BinaryOp::And:
    case BinaryOp::Or:
    case BinaryOp::Nand:
    case BinaryOp::Nor:
    case BinaryOp::Xor:
    case BinaryOp::Xnor:
      return true;
    default:
      return false;
  }
}

bool op_is_relational(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
      return true;
    default:
      return false;
  }
}

// Print precedence levels; higher binds tighter.
constexpr int kLogical = 1;
constexpr int kRelational = 2;
constexpr int kAdding = 3;
constexpr int kSign = 4;
constexpr int kNot = 5;
constexpr int kPrimary = 6;

int expr_level(const Expr& e) {
  if (const auto* bin = std::get_if<BinaryExpr>(&e.node)) {
    if (op_is_logical(bin->op)) return kLogical;
    if (op_is_relational(bin->op)) return kRelational;
    return kAdding;
  }
  if (const auto* un = std::get_if<UnaryExpr>(&e.node)) {
    return un->op == UnaryOp::Minus ? kSign : kNot;
  }
  return kPrimary;
}

std::string print_expr(const Expr& e);

std::string print_operand(const Expr& child, const BinaryExpr& parent,
                          bool is_rhs) {
  int parent_level = op_is_logical(parent.op)      ? kLogical
                     : op_is_relational(parent.op) ? kRelational
                                                   : kAdding;
  int child_level = expr_level(child);
  bool parens = false;
  if (child_level < parent_level) {
    parens = true;
  } else if (child_level == parent_level) {
    if (parent_level == kLogical) {
      const auto& child_bin = std::get<BinaryExpr>(child.node);
      bool same_chainable = child_bin.op == parent.op && !is_rhs &&
                            parent.op != BinaryOp::Nand &&
                            parent.op != BinaryOp::Nor;
      parens = !same_chainable;
    } else if (parent_level == kRelational) {
      parens = true;
    } else {
      parens = is_rhs;  // adding ops are left-associative
    }
  } else if (child_level == kSign && parent_level == kAdding && is_rhs) {
    // a + -b is not legal VHDL; the sign needs parentheses.
    parens = true;
  }
  std::string text = print_expr(child);
  return parens ? "(" + text + ")" : text;
}

std::string print_expr(const Expr& e) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NameRef>) {
          return node.name;
        } else if constexpr (std::is_same_v<T, Literal>) {
          return node.text;
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          std::string inner = print_expr(*node.operand);
          if (expr_level(*node.operand) != kPrimary) inner = "(" + inner + ")";
          return node.op == UnaryOp::Not ? "not " + inner : "-" + inner;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return print_operand(*node.lhs, node, false) + " " +
                 binary_op_text(node.op) + " " +
                 print_operand(*node.rhs, node, true);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          std::string out = node.callee + "(";
          for (size_t i = 0; i < node.args.size(); ++i) {
            if (i) out += ", ";
            out += print_expr(node.args[i]);
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          return print_expr(*node.base) + "(" + print_expr(*node.index) + ")";
        } else if constexpr (std::is_same_v<T, SliceExpr>) {
          return print_expr(*node.base) + "(" + print_expr(*node.left) +
                 (node.dir == RangeDir::Downto ? " downto " : " to ") +
                 print_expr(*node.right) + ")";
        } else {
          static_assert(std::is_same_v<T, AggregateOthers>);
          return "(others => " + print_expr(*node.value) + ")";
        }
      },
      e.node);
}

std::string print_subtype(const SubtypeSpec& type) {
  std::string out = type_mark_name(type.mark);
  if (type.range) {
    out += "(" + print_expr(type.range->left) +
           (type.range->dir == RangeDir::Downto ? " downto " : " to ") +
           print_expr(type.range->right) + ")";
  }
  return out;
}

class Printer {
 public:
  std::string print_one_stmt(const ConcurrentStmt& stmt) {
    print_concurrent(stmt, 0);
    return out_.str();
  }

  std::string print_one_decl(const Declaration& decl) {
    print_declaration(decl, 0);
    return out_.str();
  }

  std::string print(const DesignFile& file) {
    for (const auto& clause : file.context_clauses) line(0, clause);
    for (const auto& unit : file.units) {
      if (!out_.str().empty()) raw("\n");
      comments(0, unit.leading_comments);
      std::visit([&](const auto& node) { print_unit(node); }, unit.node);
    }
    comments(0, file.trailing_comments);
    return out_.str();
  }

 private:
  std::ostringstream out_;

  void raw(const std::string& text) { out_ << text; }
  void line(int indent, const std::string& text) {
    out_ << std::string(static_cast<size_t>(indent) * 2, ' ') << text << "\n";
  }
  void comments(int indent, const std::vector<std::string>& list) {
    for (const auto& c : list) line(indent, c.empty() ? "--" : "-- " + c);
  }

  void print_unit(const EntityDecl& entity) {
    line(0, "entity " + entity.name + " is");
    if (!entity.generics.empty()) {
      line(1, "generic (");
      for (size_t i = 0; i < entity.generics.size(); ++i) {
        const auto& g = entity.generics[i];
        std::string text = g.name + " : " + print_subtype(g.type);
        if (g.default_value) text += " := " + print_expr(*g.default_value);
        if (i + 1 < entity.generics.size()) text += ";";
        line(2, text);
      }
      line(1, ");");
    }
    if (!entity.ports.empty()) {
      line(1, "port (");
      for (size_t i = 0; i < entity.ports.size(); ++i) {
        const auto& p = entity.ports[i];
        std::string text = p.name + " : " + std::string(port_dir_name(p.dir)) +
                           " " + print_subtype(p.type);
        if (i + 1 < entity.ports.size()) text += ";";
        line(2, text);
      }
      line(1, ");");
    }
    line(0, "end entity " + entity.name + ";");
  }

  void print_unit(const ArchitectureBody& arch) {
    line(0, "architecture " + arch.name + " of " + arch.entity_name + " is");
    for (const auto& decl : arch.declarations) print_declaration(decl, 1);
    line(0, "begin");
    for (const auto& stmt : arch.statements) print_concurrent(stmt, 1);
    comments(1, arch.trailing_comments);
    line(0, "end architecture " + arch.name + ";");
  }

  void print_unit(const PackageDecl& pkg) {
    line(0, "package " + pkg.name + " is");
    for (const auto& decl : pkg.declarations) print_declaration(decl, 1);
    line(0, "end package " + pkg.name + ";");
  }

  void print_declaration(const Declaration& decl, int indent) {
    comments(indent, decl.leading_comments);
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SignalDecl>) {
            std::string text =
                "signal " + node.name + " : " + print_subtype(node.type);
            if (node.init) text += " := " + print_expr(*node.init);
            line(indent, text + ";");
          } else if constexpr (std::is_same_v<T, ConstantDecl>) {
            line(indent, "constant " + node.name + " : " +
                             print_subtype(node.type) + " := " +
                             print_expr(node.value) + ";");
          } else if constexpr (std::is_same_v<T, ComponentDecl>) {
            line(indent, "component " + node.name);
            if (!node.ports.empty()) {
              line(indent + 1, "port (");
              for (size_t i = 0; i < node.ports.size(); ++i) {
                const auto& p = node.ports[i];
                std::string text = p.name + " : " +
                                   std::string(port_dir_name(p.dir)) + " " +
                                   print_subtype(p.type);
                if (i + 1 < node.ports.size()) text += ";";
                line(indent + 2, text);
              }
              line(indent + 1, ");");
            }
            line(indent, "end component;");
          } else if constexpr (std::is_same_v<T, FunctionDecl>) {
            std::string head = "function " + node.name;
            if (!node.params.empty()) head += "(" + params_text(node.params) + ")";
            head += " return " + print_subtype(node.return_type) + " is";
            line(indent, head);
            for (const auto& v : node.variables) print_variable(v, indent + 1);
            line(indent, "begin");
            for (const auto& s : node.body) print_seq(s, indent + 1);
            line(indent + 1, "return " + print_expr(*node.return_expr) + ";");
            line(indent, "end function " + node.name + ";");
          } else {
            static_assert(std::is_same_v<T, ProcedureDecl>);
            std::string head = "procedure " + node.name;
            if (!node.params.empty()) head += "(" + params_text(node.params) + ")";
            head += " is";
            line(indent, head);
            for (const auto& v : node.variables) print_variable(v, indent + 1);
            line(indent, "begin");
            for (const auto& s : node.body) print_seq(s, indent + 1);
            line(indent, "end procedure " + node.name + ";");
          }
        },
        decl.node);
  }

  std::string params_text(const std::vector<ParamDecl>& params) {
    std::string out;
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) out += "; ";
      const auto& p = params[i];
      out += p.name + " : ";
      if (p.dir != PortDir::In) out += std::string(port_dir_name(p.dir)) + " ";
      out += print_subtype(p.type);
    }
    return out;
  }

  void print_variable(const VariableDecl& v, int indent) {
    std::string text = "variable " + v.name + " : " + print_subtype(v.type);
    if (v.init) text += " := " + print_expr(*v.init);
    line(indent, text + ";");
  }

  void print_concurrent(const ConcurrentStmt& stmt, int indent) {
    comments(indent, stmt.leading_comments);
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ConcurrentAssign>) {
            line(indent, print_expr(node.target) + " <= " +
                             print_expr(node.value) + ";");
          } else if constexpr (std::is_same_v<T, ConditionalAssign>) {
            std::string text = print_expr(node.target) + " <= ";
            for (size_t i = 0; i < node.branches.size(); ++i) {
              const auto& branch = node.branches[i];
              if (i) text += " else ";
              text += print_expr(branch.value);
              if (branch.condition) text += " when " + print_expr(*branch.condition);
            }
            line(indent, text + ";");
          } else if constexpr (std::is_same_v<T, SelectedAssign>) {
            std::string text = "with " + print_expr(node.selector) +
                               " select " + print_expr(node.target) + " <= ";
            for (size_t i = 0; i < node.waveforms.size(); ++i) {
              const auto& wf = node.waveforms[i];
              if (i) text += ", ";
              text += print_expr(wf.value) + " when ";
              if (wf.is_others) {
                text += "others";
              } else {
                for (size_t c = 0; c < wf.choices.size(); ++c) {
                  if (c) text += " | ";
                  text += print_expr(wf.choices[c]);
                }
              }
            }
            line(indent, text + ";");
          } else if constexpr (std::is_same_v<T, ProcessStmt>) {
            std::string head;
            if (node.label) head += *node.label + " : ";
            head += "process (";
            for (size_t i = 0; i < node.sensitivity.size(); ++i) {
              if (i) head += ", ";
              head += node.sensitivity[i].name;
            }
            head += ")";
            line(indent, head);
            for (const auto& v : node.variables) print_variable(v, indent + 1);
            line(indent, "begin");
            for (const auto& s : node.body) print_seq(s, indent + 1);
            comments(indent + 1, node.trailing_comments);
            line(indent,
                 "end process" + (node.label ? " " + *node.label : "") + ";");
          } else {
            static_assert(std::is_same_v<T, ComponentInstance>);
            std::string text = node.label + " : " + node.component_name +
                               " port map (";
            for (size_t i = 0; i < node.port_map.size(); ++i) {
              if (i) text += ", ";
              const auto& assoc = node.port_map[i];
              if (assoc.formal) text += *assoc.formal + " => ";
              text += print_expr(assoc.actual);
            }
            line(indent, text + ");");
          }
        },
        stmt.node);
  }

  void print_seq(const SeqStmt& stmt, int indent) {
    comments(indent, stmt.leading_comments);
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, SignalAssignStmt>) {
            line(indent, print_expr(node.target) + " <= " +
                             print_expr(node.value) + ";");
          } else if constexpr (std::is_same_v<T, VariableAssignStmt>) {
            line(indent, print_expr(node.target) + " := " +
                             print_expr(node.value) + ";");
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            for (size_t i = 0; i < node.arms.size(); ++i) {
              const auto& arm = node.arms[i];
              line(indent, std::string(i == 0 ? "if " : "elsif ") +
                               print_expr(arm.condition) + " then");
              for (const auto& s : arm.body) print_seq(s, indent + 1);
            }
            if (node.else_body) {
              line(indent, "else");
              for (const auto& s : *node.else_body) print_seq(s, indent + 1);
            }
            line(indent, "end if;");
          } else if constexpr (std::is_same_v<T, CaseStmt>) {
            line(indent, "case " + print_expr(node.selector) + " is");
            for (const auto& arm : node.arms) {
              std::string head = "when ";
              if (arm.is_others) {
                head += "others";
              } else {
                for (size_t c = 0; c < arm.choices.size(); ++c) {
                  if (c) head += " | ";
                  head += print_expr(arm.choices[c]);
                }
              }
              line(indent + 1, head + " =>");
              for (const auto& s : arm.body) print_seq(s, indent + 2);
            }
            line(indent, "end case;");
          } else {
            static_assert(std::is_same_v<T, NullStmt>);
            line(indent, "null;");
          }
        },
        stmt.node);
  }
};

}  // namespace

std::string pretty_print(const DesignFile& design) {
  Printer printer;
  return printer.print(design);
}

std::string pretty_print(const Expr& expr) { return print_expr(expr); }

std::string pretty_print(const DesignUnit& unit) {
  DesignFile file;
  file.units.push_back(unit);
  Printer printer;
  return printer.print(file);
}

std::string pretty_print_stmt(const ConcurrentStmt& stmt) {
  Printer printer;
  return printer.print_one_stmt(stmt);
}

std::string pretty_print_decl(const Declaration& decl) {
  Printer printer;
  return printer.print_one_decl(decl);
}

}  // namespace vcodes::vhdl
