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

#include "vcodes/vhdl/parser.hpp"

#include <set>
#include <unordered_set>

#include "vcodes/util/strutil.hpp"
#include "vcodes/vhdl/lexer.hpp"

namespace vcodes::vhdl {

bool is_builtin_function(std::string_view folded_name) {
  static const std::unordered_set<std::string> kBuiltins = {
      "rising_edge", "falling_edge", "to_unsigned", "to_signed",
      "to_integer",  "resize",       "std_logic_vector", "unsigned", "signed",
  };
  return kBuiltins.count(std::string(folded_name)) > 0;
}

bool is_predefined_name(std::string_view folded_name) {
  static const std::unordered_set<std::string> kPredefined = {
      "std_logic", "std_logic_vector", "unsigned", "signed",
      "integer",   "boolean",          "true",     "false",
  };
  return kPredefined.count(std::string(folded_name)) > 0 ||
         is_builtin_function(folded_name);
}

namespace {

std::string clean_comment(std::string_view lexeme) {
  // Lexeme starts with "--"; normalize to the trimmed text.
  return trim(lexeme.substr(2));
}

std::string describe(const Token& tok) {
  return std::string(token_kind_name(tok.kind)) + " \"" + tok.text + "\"";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  DesignFile parse_file() {
    DesignFile file;
    for (;;) {
      const Token* tok = peek();
      if (tok == nullptr) break;
      if (at_keyword("library") || at_keyword("use")) {
        file.context_clauses.push_back(parse_context_clause());
        continue;
      }
      std::vector<std::string> comments = take_pending();
      SourceSpan start = tok->span;
      DesignUnit unit;
      if (at_keyword("entity")) {
        unit.node = parse_entity();
      } else if (at_keyword("architecture")) {
        unit.node = parse_architecture();
      } else if (at_keyword("package")) {
        unit.node = parse_package();
      } else if (at_keyword("configuration")) {
        throw UnsupportedConstruct(tok->span, "configuration declaration");
      } else {
        throw ParseError(tok->span, "design unit", describe(*tok));
      }
      unit.span = join_spans(start, last_span_);
      unit.leading_comments = std::move(comments);
      file.units.push_back(std::move(unit));
    }
    file.trailing_comments = take_pending();
    return file;
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;
  std::vector<std::string> pending_comments_;
  std::vector<Declaration> queued_decls_;  // tail of split multi-name decls
  std::set<std::string> known_functions_;
  SourceSpan last_span_;

  // ---- token plumbing ------------------------------------------------

  void skip_trivia() {
    while (i_ < toks_.size() && toks_[i_].kind == TokenKind::Comment) {
      pending_comments_.push_back(clean_comment(toks_[i_].text));
      ++i_;
    }
  }

  const Token* peek(size_t ahead = 0) {
    skip_trivia();
    size_t j = i_;
    size_t seen = 0;
    while (j < toks_.size()) {
      if (toks_[j].kind == TokenKind::Comment) {
        ++j;
        continue;
      }
      if (seen == ahead) return &toks_[j];
      ++seen;
      ++j;
    }
    return nullptr;
  }

  const Token& next() {
    skip_trivia();
    if (i_ >= toks_.size())
      throw ParseError(last_span_, "more input", "end of input");
    const Token& tok = toks_[i_++];
    if (tok.kind == TokenKind::Error)
      throw ParseError(tok.span, "token", "unknown character \"" + tok.text + "\"");
    last_span_ = tok.span;
    return tok;
  }

  std::vector<std::string> take_pending() {
    skip_trivia();
    std::vector<std::string> out = std::move(pending_comments_);
    pending_comments_.clear();
    return out;
  }

  bool at_keyword(std::string_view kw, size_t ahead = 0) {
    const Token* tok = peek(ahead);
    return tok != nullptr && tok->kind == TokenKind::Keyword &&
           fold_name(tok->text) == kw;
  }

  bool at_symbol(std::string_view sym, size_t ahead = 0) {
    const Token* tok = peek(ahead);
    return tok != nullptr && tok->kind == TokenKind::Symbol && tok->text == sym;
  }

  bool at_identifier(size_t ahead = 0) {
    const Token* tok = peek(ahead);
    return tok != nullptr && tok->kind == TokenKind::Identifier;
  }

  const Token& expect_keyword(std::string_view kw) {
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, "keyword \"" + std::string(kw) + "\"",
                       "end of input");
    if (tok->kind != TokenKind::Keyword || fold_name(tok->text) != kw)
      throw ParseError(tok->span, "keyword \"" + std::string(kw) + "\"",
                       describe(*tok));
    return next();
  }

  const Token& expect_symbol(std::string_view sym) {
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, "\"" + std::string(sym) + "\"",
                       "end of input");
    if (tok->kind != TokenKind::Symbol || tok->text != sym)
      throw ParseError(tok->span, "\"" + std::string(sym) + "\"",
                       describe(*tok));
    return next();
  }

  const Token& expect_identifier(std::string_view what = "identifier") {
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, std::string(what), "end of input");
    if (tok->kind != TokenKind::Identifier)
      throw ParseError(tok->span, std::string(what), describe(*tok));
    return next();
  }

  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    next();
    return true;
  }

  bool accept_symbol(std::string_view sym) {
    if (!at_symbol(sym)) return false;
    next();
    return true;
  }

  static SourceSpan join_spans(SourceSpan a, SourceSpan b) {
    SourceSpan s = a;
    s.end_line = b.end_line;
    s.end_col = b.end_col;
    return s;
  }

  // Optional trailing label after `end ...`; must match when present.
  void accept_end_label(const std::string& name) {
    if (at_identifier()) {
      const Token& tok = next();
      if (fold_name(tok.text) != fold_name(name))
        throw ParseError(tok.span, "label \"" + name + "\"", describe(tok));
    }
  }

  [[noreturn]] void unsupported_here(const std::string& construct) {
    const Token* tok = peek();
    throw UnsupportedConstruct(tok != nullptr ? tok->span : last_span_,
                               construct);
  }

  // ---- context clauses -----------------------------------------------

  std::string parse_context_clause() {
    std::string out;
    if (accept_keyword("library")) {
      out = "library " + expect_identifier("library name").text;
      while (accept_symbol(",")) out += ", " + expect_identifier().text;
      expect_symbol(";");
      return out + ";";
    }
    expect_keyword("use");
    out = "use " + expect_identifier("library name").text;
    while (accept_symbol(".")) {
      out += ".";
      if (at_keyword("all")) {
        next();
        out += "all";
      } else {
        out += expect_identifier().text;
      }
    }
    expect_symbol(";");
    return out + ";";
  }

  // ---- types -----------------------------------------------------------

  TypeMark parse_type_mark() {
    const Token& tok = expect_identifier("type mark");
    std::string folded = fold_name(tok.text);
    if (folded == "std_logic") return TypeMark::StdLogic;
    if (folded == "std_logic_vector") return TypeMark::StdLogicVector;
    if (folded == "unsigned") return TypeMark::Unsigned;
    if (folded == "signed") return TypeMark::Signed;
    if (folded == "integer") return TypeMark::Integer;
    if (folded == "boolean") return TypeMark::Boolean;
    throw UnsupportedConstruct(tok.span, "type \"" + tok.text + "\"");
  }

  SubtypeSpec parse_subtype() {
    SubtypeSpec spec;
    spec.mark = parse_type_mark();
    if (at_keyword("range")) unsupported_here("range constraint");
    bool vector = type_mark_is_vector(spec.mark);
    if (at_symbol("(")) {
      if (!vector)
        throw ParseError(peek()->span, "no range on scalar type", "\"(\"");
      next();
      RangeSpec range;
      range.left = parse_expression();
      if (accept_keyword("downto")) {
        range.dir = RangeDir::Downto;
      } else if (accept_keyword("to")) {
        range.dir = RangeDir::To;
      } else {
        const Token* tok = peek();
        throw ParseError(tok != nullptr ? tok->span : last_span_,
                         "\"downto\" or \"to\"",
                         tok != nullptr ? describe(*tok) : "end of input");
      }
      range.right = parse_expression();
      expect_symbol(")");
      spec.range = std::move(range);
    } else if (vector) {
      const Token* tok = peek();
      throw ParseError(tok != nullptr ? tok->span : last_span_,
                       "range for vector type",
                       tok != nullptr ? describe(*tok) : "end of input");
    }
    return spec;
  }

  PortDir parse_port_dir() {
    if (accept_keyword("in")) return PortDir::In;
    if (accept_keyword("out")) return PortDir::Out;
    if (accept_keyword("inout")) return PortDir::Inout;
    if (at_keyword("buffer") || at_keyword("linkage"))
      unsupported_here("port mode \"" + peek()->text + "\"");
    const Token* tok = peek();
    throw ParseError(tok != nullptr ? tok->span : last_span_, "port direction",
                     tok != nullptr ? describe(*tok) : "end of input");
  }

  // ---- design units ----------------------------------------------------

  EntityDecl parse_entity() {
    expect_keyword("entity");
    EntityDecl entity;
    const Token& name = expect_identifier("entity name");
    entity.name = name.text;
    entity.name_span = name.span;
    expect_keyword("is");
    if (at_keyword("generic")) entity.generics = parse_generic_clause();
    if (at_keyword("port")) entity.ports = parse_port_clause();
    expect_keyword("end");
    accept_keyword("entity");
    accept_end_label(entity.name);
    expect_symbol(";");
    check_unique_names(entity);
    return entity;
  }

  void check_unique_names(const EntityDecl& entity) {
    std::set<std::string> seen;
    for (const auto& g : entity.generics) {
      if (!seen.insert(fold_name(g.name)).second)
        throw ParseError(g.name_span, "unique generic name",
                         "duplicate \"" + g.name + "\"");
    }
    for (const auto& p : entity.ports) {
      if (!seen.insert(fold_name(p.name)).second)
        throw ParseError(p.name_span, "unique port name",
                         "duplicate \"" + p.name + "\"");
    }
  }

  std::vector<GenericDecl> parse_generic_clause() {
    expect_keyword("generic");
    expect_symbol("(");
    std::vector<GenericDecl> generics;
    for (;;) {
      std::vector<Token> names;
      names.push_back(expect_identifier("generic name"));
      while (accept_symbol(",")) names.push_back(expect_identifier());
      expect_symbol(":");
      SubtypeSpec type = parse_subtype();
      std::optional<Expr> default_value;
      if (accept_symbol(":=")) default_value = parse_expression();
      for (const auto& tok : names) {
        GenericDecl g;
        g.name = tok.text;
        g.name_span = tok.span;
        g.type = type;
        g.default_value = default_value;
        generics.push_back(std::move(g));
      }
      if (!accept_symbol(";")) break;
    }
    expect_symbol(")");
    expect_symbol(";");
    return generics;
  }

  std::vector<PortDecl> parse_port_clause() {
    expect_keyword("port");
    expect_symbol("(");
    std::vector<PortDecl> ports;
    for (;;) {
      std::vector<Token> names;
      names.push_back(expect_identifier("port name"));
      while (accept_symbol(",")) names.push_back(expect_identifier());
      expect_symbol(":");
      PortDir dir = parse_port_dir();
      SubtypeSpec type = parse_subtype();
      for (const auto& tok : names) {
        PortDecl p;
        p.name = tok.text;
        p.name_span = tok.span;
        p.dir = dir;
        p.type = type;
        ports.push_back(std::move(p));
      }
      if (!accept_symbol(";")) break;
    }
    expect_symbol(")");
    expect_symbol(";");
    return ports;
  }

  ArchitectureBody parse_architecture() {
    expect_keyword("architecture");
    ArchitectureBody arch;
    const Token& name = expect_identifier("architecture name");
    arch.name = name.text;
    arch.name_span = name.span;
    expect_keyword("of");
    const Token& ent = expect_identifier("entity name");
    arch.entity_name = ent.text;
    arch.entity_name_span = ent.span;
    expect_keyword("is");
    while (!at_keyword("begin")) {
      arch.declarations.push_back(parse_block_declaration());
      for (auto& queued : queued_decls_)
        arch.declarations.push_back(std::move(queued));
      queued_decls_.clear();
    }
    expect_keyword("begin");
    while (!at_keyword("end")) {
      arch.statements.push_back(parse_concurrent_stmt());
    }
    arch.trailing_comments = take_pending();
    expect_keyword("end");
    accept_keyword("architecture");
    accept_end_label(arch.name);
    expect_symbol(";");
    check_unique_declarations(arch.declarations);
    return arch;
  }

  void check_unique_declarations(const std::vector<Declaration>& decls) {
    std::set<std::string> seen;
    for (const auto& d : decls) {
      const std::string* name = nullptr;
      SourceSpan span = d.span;
      std::visit([&](const auto& n) { name = &n.name; span = n.name_span; },
                 d.node);
      if (name != nullptr && !seen.insert(fold_name(*name)).second)
        throw ParseError(span, "unique declaration name",
                         "duplicate \"" + *name + "\"");
    }
  }

  PackageDecl parse_package() {
    expect_keyword("package");
    PackageDecl pkg;
    const Token& name = expect_identifier("package name");
    pkg.name = name.text;
    pkg.name_span = name.span;
    expect_keyword("is");
    while (!at_keyword("end")) {
      if (at_keyword("signal"))
        unsupported_here("signal declaration in package");
      pkg.declarations.push_back(parse_block_declaration());
      for (auto& queued : queued_decls_)
        pkg.declarations.push_back(std::move(queued));
      queued_decls_.clear();
    }
    expect_keyword("end");
    accept_keyword("package");
    accept_end_label(pkg.name);
    expect_symbol(";");
    check_unique_declarations(pkg.declarations);
    return pkg;
  }

  // ---- declarations ------------------------------------------------------

  Declaration parse_block_declaration() {
    std::vector<std::string> comments = take_pending();
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, "declaration or \"begin\"", "end of input");
    SourceSpan start = tok->span;
    Declaration decl;
    if (at_keyword("signal")) {
      decl.node = parse_signal_decl();
    } else if (at_keyword("constant")) {
      decl.node = parse_constant_decl();
    } else if (at_keyword("component")) {
      decl.node = parse_component_decl();
    } else if (at_keyword("function") || at_keyword("pure") ||
               at_keyword("impure")) {
      decl.node = parse_function_decl();
    } else if (at_keyword("procedure")) {
      decl.node = parse_procedure_decl();
    } else if (at_keyword("type") || at_keyword("subtype") ||
               at_keyword("attribute") || at_keyword("alias") ||
               at_keyword("file") || at_keyword("shared")) {
      unsupported_here("declaration \"" + tok->text + "\"");
    } else {
      throw ParseError(tok->span, "declaration or \"begin\"", describe(*tok));
    }
    decl.span = join_spans(start, last_span_);
    decl.leading_comments = std::move(comments);
    return decl;
  }

  SignalDecl parse_signal_decl() {
    expect_keyword("signal");
    std::vector<Token> names;
    names.push_back(expect_identifier("signal name"));
    while (accept_symbol(",")) names.push_back(expect_identifier());
    expect_symbol(":");
    SubtypeSpec type = parse_subtype();
    std::optional<Expr> init;
    if (accept_symbol(":=")) init = parse_expression();
    expect_symbol(";");
    // Multi-name lists are split into one declaration per name.
    for (size_t k = 1; k < names.size(); ++k) {
      SignalDecl extra;
      extra.name = names[k].text;
      extra.name_span = names[k].span;
      extra.type = type;
      extra.init = init;
      Declaration wrapper;
      wrapper.node = std::move(extra);
      wrapper.span = names[k].span;
      queued_decls_.push_back(std::move(wrapper));
    }
    SignalDecl decl;
    decl.name = names[0].text;
    decl.name_span = names[0].span;
    decl.type = std::move(type);
    decl.init = std::move(init);
    return decl;
  }

  ConstantDecl parse_constant_decl() {
    expect_keyword("constant");
    ConstantDecl decl;
    const Token& name = expect_identifier("constant name");
    decl.name = name.text;
    decl.name_span = name.span;
    expect_symbol(":");
    decl.type = parse_subtype();
    expect_symbol(":=");
    decl.value = parse_expression();
    expect_symbol(";");
    return decl;
  }

  ComponentDecl parse_component_decl() {
    expect_keyword("component");
    ComponentDecl decl;
    const Token& name = expect_identifier("component name");
    decl.name = name.text;
    decl.name_span = name.span;
    accept_keyword("is");
    if (at_keyword("generic")) unsupported_here("component generics");
    if (at_keyword("port")) decl.ports = parse_port_clause();
    expect_keyword("end");
    expect_keyword("component");
    accept_end_label(decl.name);
    expect_symbol(";");
    return decl;
  }

  std::vector<ParamDecl> parse_param_list(bool allow_modes) {
    std::vector<ParamDecl> params;
    expect_symbol("(");
    for (;;) {
      if (at_keyword("signal") || at_keyword("constant") ||
          at_keyword("variable"))
        next();  // interface class is accepted and dropped
      std::vector<Token> names;
      names.push_back(expect_identifier("parameter name"));
      while (accept_symbol(",")) names.push_back(expect_identifier());
      expect_symbol(":");
      PortDir dir = PortDir::In;
      if (at_keyword("in") || at_keyword("out") || at_keyword("inout")) {
        if (!allow_modes && !at_keyword("in"))
          unsupported_here("function parameter mode");
        dir = parse_port_dir();
      }
      SubtypeSpec type = parse_subtype();
      for (const auto& tok : names) {
        ParamDecl p;
        p.name = tok.text;
        p.name_span = tok.span;
        p.dir = dir;
        p.type = type;
        params.push_back(std::move(p));
      }
      if (!accept_symbol(";")) break;
    }
    expect_symbol(")");
    return params;
  }

  std::vector<VariableDecl> parse_variable_decls() {
    std::vector<VariableDecl> vars;
    while (at_keyword("variable")) {
      next();
      std::vector<Token> names;
      names.push_back(expect_identifier("variable name"));
      while (accept_symbol(",")) names.push_back(expect_identifier());
      expect_symbol(":");
      SubtypeSpec type = parse_subtype();
      std::optional<Expr> init;
      if (accept_symbol(":=")) init = parse_expression();
      expect_symbol(";");
      for (const auto& tok : names) {
        VariableDecl v;
        v.name = tok.text;
        v.name_span = tok.span;
        v.type = type;
        v.init = init;
        vars.push_back(std::move(v));
      }
    }
    if (at_keyword("constant") || at_keyword("signal") || at_keyword("type"))
      unsupported_here("declaration \"" + peek()->text + "\" in subprogram/process");
    return vars;
  }

  FunctionDecl parse_function_decl() {
    if (at_keyword("pure") || at_keyword("impure")) next();
    expect_keyword("function");
    FunctionDecl fn;
    const Token& name = expect_identifier("function name");
    fn.name = name.text;
    fn.name_span = name.span;
    if (at_symbol("(")) fn.params = parse_param_list(/*allow_modes=*/false);
    expect_keyword("return");
    fn.return_type = parse_subtype();
    expect_keyword("is");
    fn.variables = parse_variable_decls();
    expect_keyword("begin");
    while (!at_keyword("return")) {
      fn.body.push_back(parse_seq_stmt(/*in_function=*/true));
    }
    expect_keyword("return");
    fn.return_expr = Box<Expr>(parse_expression());
    expect_symbol(";");
    expect_keyword("end");
    accept_keyword("function");
    accept_end_label(fn.name);
    expect_symbol(";");
    known_functions_.insert(fold_name(fn.name));
    return fn;
  }

  ProcedureDecl parse_procedure_decl() {
    expect_keyword("procedure");
    ProcedureDecl proc;
    const Token& name = expect_identifier("procedure name");
    proc.name = name.text;
    proc.name_span = name.span;
    if (at_symbol("(")) proc.params = parse_param_list(/*allow_modes=*/true);
    expect_keyword("is");
    proc.variables = parse_variable_decls();
    expect_keyword("begin");
    while (!at_keyword("end")) {
      proc.body.push_back(parse_seq_stmt(/*in_function=*/false));
    }
    expect_keyword("end");
    accept_keyword("procedure");
    accept_end_label(proc.name);
    expect_symbol(";");
    return proc;
  }

  // ---- concurrent statements ---------------------------------------------

  ConcurrentStmt parse_concurrent_stmt() {
    std::vector<std::string> comments = take_pending();
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, "concurrent statement or \"end\"",
                       "end of input");
    SourceSpan start = tok->span;
    ConcurrentStmt stmt;

    if (at_keyword("for") || at_keyword("generate"))
      unsupported_here("generate statement");
    if (at_keyword("block")) unsupported_here("block statement");
    if (at_keyword("assert")) unsupported_here("concurrent assertion");

    if (at_keyword("process")) {
      stmt.node = parse_process(std::nullopt, SourceSpan{});
    } else if (at_keyword("with")) {
      stmt.node = parse_selected_assign();
    } else if (at_identifier() && at_symbol(":", 1)) {
      const Token& label = next();
      next();  // ':'
      if (at_keyword("process")) {
        stmt.node = parse_process(label.text, label.span);
      } else if (at_keyword("entity")) {
        unsupported_here("direct entity instantiation");
      } else if (at_keyword("for")) {
        unsupported_here("generate statement");
      } else if (at_identifier()) {
        stmt.node = parse_instance(label.text, label.span);
      } else {
        unsupported_here("labeled concurrent statement");
      }
    } else if (at_identifier()) {
      stmt.node = parse_concurrent_assign();
    } else {
      throw ParseError(tok->span, "concurrent statement", describe(*tok));
    }
    stmt.span = join_spans(start, last_span_);
    stmt.leading_comments = std::move(comments);
    return stmt;
  }

  Expr parse_target() {
    const Token& name = expect_identifier("assignment target");
    Expr base;
    base.node = NameRef{name.text};
    base.span = name.span;
    if (!at_symbol("(")) return base;
    next();
    Expr first = parse_expression();
    if (at_keyword("downto") || at_keyword("to")) {
      RangeDir dir =
          accept_keyword("downto") ? RangeDir::Downto
                                   : (expect_keyword("to"), RangeDir::To);
      Expr right = parse_expression();
      expect_symbol(")");
      Expr out;
      out.span = join_spans(name.span, last_span_);
      out.node = SliceExpr{Box<Expr>(std::move(base)), Box<Expr>(std::move(first)),
                           Box<Expr>(std::move(right)), dir};
      return out;
    }
    expect_symbol(")");
    Expr out;
    out.span = join_spans(name.span, last_span_);
    out.node = IndexExpr{Box<Expr>(std::move(base)), Box<Expr>(std::move(first))};
    return out;
  }

  std::variant<ConcurrentAssign, ConditionalAssign, SelectedAssign, ProcessStmt,
               ComponentInstance>
  parse_concurrent_assign() {
    Expr target = parse_target();
    expect_symbol("<=");
    Expr value = parse_expression();
    if (!at_keyword("when")) {
      expect_symbol(";");
      return ConcurrentAssign{std::move(target), std::move(value)};
    }
    ConditionalAssign cond;
    cond.target = std::move(target);
    for (;;) {
      expect_keyword("when");
      Expr condition = parse_expression();
      cond.branches.push_back(CondWaveform{std::move(value), std::move(condition)});
      expect_keyword("else");
      value = parse_expression();
      if (!at_keyword("when")) break;
    }
    cond.branches.push_back(CondWaveform{std::move(value), std::nullopt});
    expect_symbol(";");
    return cond;
  }

  std::variant<ConcurrentAssign, ConditionalAssign, SelectedAssign, ProcessStmt,
               ComponentInstance>
  parse_selected_assign() {
    expect_keyword("with");
    SelectedAssign sel;
    sel.selector = parse_expression();
    expect_keyword("select");
    sel.target = parse_target();
    expect_symbol("<=");
    bool saw_others = false;
    for (;;) {
      SelectedWaveform wf;
      wf.value = parse_expression();
      expect_keyword("when");
      if (accept_keyword("others")) {
        wf.is_others = true;
        saw_others = true;
      } else {
        wf.choices.push_back(parse_choice_literal());
        while (accept_symbol("|")) wf.choices.push_back(parse_choice_literal());
      }
      sel.waveforms.push_back(std::move(wf));
      if (accept_symbol(",")) {
        if (saw_others)
          throw ParseError(last_span_, "\";\" after \"others\" alternative",
                           "\",\"");
        continue;
      }
      break;
    }
    expect_symbol(";");
    check_choice_disjointness_selected(sel);
    return sel;
  }

  Expr parse_choice_literal() {
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, "choice literal", "end of input");
    switch (tok->kind) {
      case TokenKind::LiteralInt:
      case TokenKind::LiteralBit:
      case TokenKind::LiteralBitVector:
      case TokenKind::LiteralChar: {
        const Token& lit = next();
        Expr e;
        e.node = Literal{lit.kind, lit.text};
        e.span = lit.span;
        return e;
      }
      default:
        throw ParseError(tok->span, "literal choice", describe(*tok));
    }
  }

  void check_choice_disjointness_selected(const SelectedAssign& sel) {
    std::set<std::string> seen;
    for (const auto& wf : sel.waveforms) {
      for (const auto& choice : wf.choices) {
        const auto& lit = std::get<Literal>(choice.node);
        if (!seen.insert(lit.text).second)
          throw ParseError(choice.span, "disjoint choices",
                           "duplicate choice " + lit.text);
      }
    }
  }

  ProcessStmt parse_process(std::optional<std::string> label,
                            SourceSpan label_span) {
    expect_keyword("process");
    ProcessStmt proc;
    proc.label = std::move(label);
    proc.label_span = label_span;
    if (!at_symbol("(")) {
      unsupported_here("process without sensitivity list");
    }
    next();
    for (;;) {
      if (at_keyword("all")) unsupported_here("process(all) sensitivity");
      const Token& name = expect_identifier("signal name");
      proc.sensitivity.push_back(NamedItem{name.text, name.span});
      if (!accept_symbol(",")) break;
    }
    expect_symbol(")");
    accept_keyword("is");
    proc.variables = parse_variable_decls();
    expect_keyword("begin");
    while (!at_keyword("end")) {
      proc.body.push_back(parse_seq_stmt(/*in_function=*/false));
    }
    proc.trailing_comments = take_pending();
    expect_keyword("end");
    expect_keyword("process");
    if (proc.label.has_value()) {
      accept_end_label(*proc.label);
    }
    expect_symbol(";");
    validate_process_shape(proc);
    return proc;
  }

  ComponentInstance parse_instance(std::string label, SourceSpan label_span) {
    ComponentInstance inst;
    inst.label = std::move(label);
    inst.label_span = label_span;
    const Token& comp = expect_identifier("component name");
    inst.component_name = comp.text;
    inst.component_span = comp.span;
    if (at_keyword("generic")) unsupported_here("generic map");
    expect_keyword("port");
    expect_keyword("map");
    expect_symbol("(");
    bool named = false;
    bool positional = false;
    for (;;) {
      Association assoc;
      if (at_identifier() && at_symbol("=>", 1)) {
        const Token& formal = next();
        next();  // '=>'
        assoc.formal = formal.text;
        assoc.formal_span = formal.span;
        named = true;
      } else {
        positional = true;
      }
      assoc.actual = parse_expression();
      inst.port_map.push_back(std::move(assoc));
      if (!accept_symbol(",")) break;
    }
    expect_symbol(")");
    expect_symbol(";");
    if (named && positional)
      throw ParseError(last_span_, "all-named or all-positional port map",
                       "mixed association");
    return inst;
  }

  // ---- sequential statements -----------------------------------------------

  SeqStmt parse_seq_stmt(bool in_function) {
    std::vector<std::string> comments = take_pending();
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, "sequential statement", "end of input");
    SourceSpan start = tok->span;
    SeqStmt stmt;

    if (at_keyword("for") || at_keyword("while") || at_keyword("loop"))
      unsupported_here("loop statement");
    if (at_keyword("wait")) unsupported_here("wait statement");
    if (at_keyword("assert") || at_keyword("report"))
      unsupported_here("assertion statement");
    if (at_keyword("next") || at_keyword("exit"))
      unsupported_here("loop control statement");
    if (at_keyword("return") && !in_function)
      unsupported_here("return outside function");

    if (at_keyword("if")) {
      stmt.node = parse_if_stmt(in_function);
    } else if (at_keyword("case")) {
      stmt.node = parse_case_stmt(in_function);
    } else if (at_keyword("null")) {
      next();
      expect_symbol(";");
      stmt.node = NullStmt{};
    } else if (at_identifier()) {
      Expr target = parse_target();
      if (accept_symbol("<=")) {
        Expr value = parse_expression();
        expect_symbol(";");
        stmt.node = SignalAssignStmt{std::move(target), std::move(value)};
      } else if (accept_symbol(":=")) {
        Expr value = parse_expression();
        expect_symbol(";");
        stmt.node = VariableAssignStmt{std::move(target), std::move(value)};
      } else {
        const Token* at = peek();
        throw ParseError(at != nullptr ? at->span : last_span_,
                         "\"<=\" or \":=\"",
                         at != nullptr ? describe(*at) : "end of input");
      }
    } else {
      throw ParseError(tok->span, "sequential statement", describe(*tok));
    }
    stmt.span = join_spans(start, last_span_);
    stmt.leading_comments = std::move(comments);
    return stmt;
  }

  IfStmt parse_if_stmt(bool in_function) {
    expect_keyword("if");
    IfStmt stmt;
    for (;;) {
      CondArm arm;
      arm.condition = parse_expression();
      expect_keyword("then");
      while (!at_keyword("elsif") && !at_keyword("else") && !at_keyword("end")) {
        arm.body.push_back(parse_seq_stmt(in_function));
      }
      stmt.arms.push_back(std::move(arm));
      if (accept_keyword("elsif")) continue;
      break;
    }
    if (accept_keyword("else")) {
      std::vector<SeqStmt> body;
      while (!at_keyword("end")) body.push_back(parse_seq_stmt(in_function));
      stmt.else_body = std::move(body);
    }
    expect_keyword("end");
    expect_keyword("if");
    expect_symbol(";");
    return stmt;
  }

  CaseStmt parse_case_stmt(bool in_function) {
    expect_keyword("case");
    CaseStmt stmt;
    stmt.selector = parse_expression();
    expect_keyword("is");
    std::set<std::string> seen_choices;
    bool saw_others = false;
    while (at_keyword("when")) {
      next();
      CaseArm arm;
      if (saw_others)
        throw ParseError(last_span_, "\"end case\" after \"others\"",
                         "further alternative");
      if (accept_keyword("others")) {
        arm.is_others = true;
        saw_others = true;
      } else {
        arm.choices.push_back(parse_choice_literal());
        while (accept_symbol("|")) arm.choices.push_back(parse_choice_literal());
        for (const auto& choice : arm.choices) {
          const auto& lit = std::get<Literal>(choice.node);
          if (!seen_choices.insert(lit.text).second)
            throw ParseError(choice.span, "disjoint choices",
                             "duplicate choice " + lit.text);
        }
      }
      expect_symbol("=>");
      while (!at_keyword("when") && !at_keyword("end")) {
        arm.body.push_back(parse_seq_stmt(in_function));
      }
      stmt.arms.push_back(std::move(arm));
    }
    expect_keyword("end");
    expect_keyword("case");
    expect_symbol(";");
    if (stmt.arms.empty())
      throw ParseError(last_span_, "at least one case alternative", "none");
    return stmt;
  }

  // ---- expressions -----------------------------------------------------

  static bool is_logical(BinaryOp op) {
    return op == BinaryOp::And || op == BinaryOp::Or || op == BinaryOp::Nand ||
           op == BinaryOp::Nor || op == BinaryOp::Xor || op == BinaryOp::Xnor;
  }

  std::optional<BinaryOp> peek_logical_op() {
    const Token* tok = peek();
    if (tok == nullptr || tok->kind != TokenKind::Keyword) return std::nullopt;
    std::string folded = fold_name(tok->text);
    if (folded == "and") return BinaryOp::And;
    if (folded == "or") return BinaryOp::Or;
    if (folded == "nand") return BinaryOp::Nand;
    if (folded == "nor") return BinaryOp::Nor;
    if (folded == "xor") return BinaryOp::Xor;
    if (folded == "xnor") return BinaryOp::Xnor;
    return std::nullopt;
  }

  Expr parse_expression() {
    Expr lhs = parse_relation();
    std::optional<BinaryOp> op = peek_logical_op();
    if (!op) return lhs;
    next();
    Expr rhs = parse_relation();
    SourceSpan span = join_spans(lhs.span, rhs.span);
    Expr out;
    out.node = BinaryExpr{*op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))};
    out.span = span;
    // VHDL forbids mixing logical operators without parentheses, and
    // nand/nor are non-associative.
    for (;;) {
      std::optional<BinaryOp> more = peek_logical_op();
      if (!more) break;
      if (*more != *op || *op == BinaryOp::Nand || *op == BinaryOp::Nor)
        throw ParseError(peek()->span,
                         "parenthesized expression (mixed logical operators)",
                         describe(*peek()));
      next();
      Expr next_rhs = parse_relation();
      SourceSpan s2 = join_spans(out.span, next_rhs.span);
      Expr combined;
      combined.node = BinaryExpr{*op, Box<Expr>(std::move(out)),
                                 Box<Expr>(std::move(next_rhs))};
      combined.span = s2;
      out = std::move(combined);
    }
    return out;
  }

  std::optional<BinaryOp> peek_relational_op() {
    const Token* tok = peek();
    if (tok == nullptr || tok->kind != TokenKind::Symbol) return std::nullopt;
    if (tok->text == "=") return BinaryOp::Eq;
    if (tok->text == "/=") return BinaryOp::Ne;
    if (tok->text == "<") return BinaryOp::Lt;
    if (tok->text == "<=") return BinaryOp::Le;
    if (tok->text == ">") return BinaryOp::Gt;
    if (tok->text == ">=") return BinaryOp::Ge;
    return std::nullopt;
  }

  Expr parse_relation() {
    Expr lhs = parse_simple_expr();
    std::optional<BinaryOp> op = peek_relational_op();
    if (!op) return lhs;
    next();
    Expr rhs = parse_simple_expr();
    SourceSpan span = join_spans(lhs.span, rhs.span);
    Expr out;
    out.node = BinaryExpr{*op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))};
    out.span = span;
    return out;
  }

  Expr parse_simple_expr() {
    bool negate = false;
    SourceSpan sign_span{};
    if (at_symbol("-")) {
      sign_span = peek()->span;
      next();
      negate = true;
    } else if (at_symbol("+")) {
      next();
    }
    Expr lhs = parse_factor();
    if (negate) {
      SourceSpan span = join_spans(sign_span, lhs.span);
      Expr neg;
      neg.node = UnaryExpr{UnaryOp::Minus, Box<Expr>(std::move(lhs))};
      neg.span = span;
      lhs = std::move(neg);
    }
    for (;;) {
      BinaryOp op;
      if (at_symbol("+")) {
        op = BinaryOp::Add;
      } else if (at_symbol("-")) {
        op = BinaryOp::Sub;
      } else if (at_symbol("&")) {
        op = BinaryOp::Concat;
      } else {
        break;
      }
      next();
      Expr rhs = parse_factor();
      SourceSpan span = join_spans(lhs.span, rhs.span);
      Expr out;
      out.node = BinaryExpr{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))};
      out.span = span;
      lhs = std::move(out);
    }
    return lhs;
  }

  Expr parse_factor() {
    if (at_symbol("*") || at_symbol("/"))
      unsupported_here("multiplying operator");
    if (at_keyword("not")) {
      SourceSpan start = peek()->span;
      next();
      Expr operand = parse_factor();
      SourceSpan span = join_spans(start, operand.span);
      Expr out;
      out.node = UnaryExpr{UnaryOp::Not, Box<Expr>(std::move(operand))};
      out.span = span;
      return out;
    }
    if (at_keyword("abs")) unsupported_here("abs operator");
    return parse_primary();
  }

  Expr parse_primary() {
    const Token* tok = peek();
    if (tok == nullptr)
      throw ParseError(last_span_, "expression", "end of input");

    if (tok->kind == TokenKind::Symbol && tok->text == "(") {
      SourceSpan start = tok->span;
      next();
      if (at_keyword("others")) {
        next();
        expect_symbol("=>");
        Expr value = parse_expression();
        expect_symbol(")");
        Expr out;
        out.node = AggregateOthers{Box<Expr>(std::move(value))};
        out.span = join_spans(start, last_span_);
        return out;
      }
      Expr inner = parse_expression();
      expect_symbol(")");
      return inner;
    }

    switch (tok->kind) {
      case TokenKind::LiteralInt:
      case TokenKind::LiteralBit:
      case TokenKind::LiteralBitVector:
      case TokenKind::LiteralChar:
      case TokenKind::LiteralString: {
        const Token& lit = next();
        Expr out;
        out.node = Literal{lit.kind, lit.text};
        out.span = lit.span;
        return out;
      }
      case TokenKind::Identifier:
        return parse_name_expr();
      default:
        if (tok->kind == TokenKind::Symbol && tok->text == "'")
          unsupported_here("attribute reference");
        throw ParseError(tok->span, "expression", describe(*tok));
    }
  }

  Expr parse_name_expr() {
    const Token& name = next();
    Expr base;
    base.node = NameRef{name.text};
    base.span = name.span;
    if (at_symbol("'")) unsupported_here("attribute reference");
    if (!at_symbol("(")) return base;
    next();
    Expr first = parse_expression();
    if (at_keyword("downto") || at_keyword("to")) {
      RangeDir dir =
          accept_keyword("downto") ? RangeDir::Downto
                                   : (expect_keyword("to"), RangeDir::To);
      Expr right = parse_expression();
      expect_symbol(")");
      Expr out;
      out.span = join_spans(name.span, last_span_);
      out.node = SliceExpr{Box<Expr>(std::move(base)), Box<Expr>(std::move(first)),
                           Box<Expr>(std::move(right)), dir};
      return out;
    }
    if (at_symbol(",")) {
      CallExpr call;
      call.callee = name.text;
      call.args.push_back(std::move(first));
      while (accept_symbol(",")) call.args.push_back(parse_expression());
      expect_symbol(")");
      Expr out;
      out.span = join_spans(name.span, last_span_);
      out.node = std::move(call);
      return out;
    }
    expect_symbol(")");
    std::string folded = fold_name(name.text);
    bool is_call =
        is_builtin_function(folded) || known_functions_.count(folded) > 0;
    Expr out;
    out.span = join_spans(name.span, last_span_);
    if (is_call) {
      CallExpr call;
      call.callee = name.text;
      call.args.push_back(std::move(first));
      out.node = std::move(call);
    } else {
      out.node = IndexExpr{Box<Expr>(std::move(base)), Box<Expr>(std::move(first))};
    }
    return out;
  }

  // ---- clocked-process shape validation ------------------------------------

  static bool is_edge_call(const Expr& e, std::string* clock_name) {
    const auto* call = std::get_if<CallExpr>(&e.node);
    if (call == nullptr) return false;
    std::string folded = fold_name(call->callee);
    if (folded != "rising_edge" && folded != "falling_edge") return false;
    if (call->args.size() != 1) return false;
    const auto* name = std::get_if<NameRef>(&call->args[0].node);
    if (name == nullptr) return false;
    if (clock_name != nullptr) *clock_name = fold_name(name->name);
    return true;
  }

  static int count_edge_calls(const Expr& e) {
    if (is_edge_call(e, nullptr)) return 1;  // arg is a plain name
    int n = 0;
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, UnaryExpr>) {
            n += count_edge_calls(*node.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            n += count_edge_calls(*node.lhs) + count_edge_calls(*node.rhs);
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            for (const auto& a : node.args) n += count_edge_calls(a);
          } else if constexpr (std::is_same_v<T, IndexExpr>) {
            n += count_edge_calls(*node.base) + count_edge_calls(*node.index);
          } else if constexpr (std::is_same_v<T, SliceExpr>) {
            n += count_edge_calls(*node.base) + count_edge_calls(*node.left) +
                 count_edge_calls(*node.right);
          } else if constexpr (std::is_same_v<T, AggregateOthers>) {
            n += count_edge_calls(*node.value);
          }
        },
        e.node);
    return n;
  }

  static int count_edge_calls_stmts(const std::vector<SeqStmt>& stmts) {
    int n = 0;
    for (const auto& s : stmts) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, SignalAssignStmt> ||
                          std::is_same_v<T, VariableAssignStmt>) {
              n += count_edge_calls(node.value) + count_edge_calls(node.target);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              for (const auto& arm : node.arms) {
                n += count_edge_calls(arm.condition);
                n += count_edge_calls_stmts(arm.body);
              }
              if (node.else_body) n += count_edge_calls_stmts(*node.else_body);
            } else if constexpr (std::is_same_v<T, CaseStmt>) {
              n += count_edge_calls(node.selector);
              for (const auto& arm : node.arms) n += count_edge_calls_stmts(arm.body);
            }
          },
          s.node);
    }
    return n;
  }

  // Supported clocked shapes:
  //   (A) process(clk) ... if rising_edge(clk) then ... end if;
  //   (B) process(clk, rst) ... if <reset cond> then ... elsif rising_edge(clk)
  //       then ... end if;
  // Everything else containing an edge call is rejected.
  void validate_process_shape(const ProcessStmt& proc) {
    int total = count_edge_calls_stmts(proc.body);
    if (total == 0) return;
    SourceSpan span = proc.body.empty() ? last_span_ : proc.body.front().span;
    UnsupportedConstruct bad(span, "clocked process shape");
    if (total > 1 || proc.body.size() != 1) throw bad;
    const auto* top = std::get_if<IfStmt>(&proc.body.front().node);
    if (top == nullptr) throw bad;
    if (top->else_body.has_value()) throw bad;
    if (top->arms.size() == 1) {
      if (!is_edge_call(top->arms[0].condition, nullptr)) throw bad;
    } else if (top->arms.size() == 2) {
      if (count_edge_calls(top->arms[0].condition) != 0) throw bad;
      if (!is_edge_call(top->arms[1].condition, nullptr)) throw bad;
    } else {
      throw bad;
    }
  }
};

}  // namespace

DesignFile parse(std::string_view text) {
  Parser parser(tokenize(text));
  return parser.parse_file();
}

}  // namespace vcodes::vhdl
