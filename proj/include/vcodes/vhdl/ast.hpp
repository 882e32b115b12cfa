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

#ifndef VCODES_VHDL_AST_HPP
#define VCODES_VHDL_AST_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vcodes/util/box.hpp"
#include "vcodes/vhdl/token.hpp"

namespace vcodes::vhdl {

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class UnaryOp { Not, Minus };
enum class BinaryOp {
  And, Or, Nand, Nor, Xor, Xnor,
  Add, Sub,
  Eq, Ne, Lt, Le, Gt, Ge,
  Concat,
};
enum class RangeDir { Downto, To };

struct Expr;

struct NameRef {
  std::string name;
};

// Literal keeps the exact source lexeme (quotes included for bit/char/string
// forms) so printing is lossless.
struct Literal {
  TokenKind kind;  // LiteralInt / LiteralBit / LiteralBitVector / LiteralChar / LiteralString
  std::string text;
};

struct UnaryExpr {
  UnaryOp op;
  Box<Expr> operand;
};

struct BinaryExpr {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
};

struct CallExpr {
  std::string callee;
  std::vector<Expr> args;
};

struct IndexExpr {
  Box<Expr> base;
  Box<Expr> index;
};

// base(left dir right), stored as written.
struct SliceExpr {
  Box<Expr> base;
  Box<Expr> left;
  Box<Expr> right;
  RangeDir dir;
};

// (others => value)
struct AggregateOthers {
  Box<Expr> value;
};

struct Expr {
  std::variant<NameRef, Literal, UnaryExpr, BinaryExpr, CallExpr, IndexExpr,
               SliceExpr, AggregateOthers>
      node;
  SourceSpan span;
};

// ---------------------------------------------------------------------------
// Types and declarations
// ---------------------------------------------------------------------------

enum class TypeMark { StdLogic, StdLogicVector, Unsigned, Signed, Integer, Boolean };
enum class PortDir { In, Out, Inout };

bool type_mark_is_vector(TypeMark mark);
const char* type_mark_name(TypeMark mark);
const char* port_dir_name(PortDir dir);

struct RangeSpec {
  Expr left;
  Expr right;
  RangeDir dir;
};

struct SubtypeSpec {
  TypeMark mark;
  std::optional<RangeSpec> range;  // required for vector marks
};

struct PortDecl {
  std::string name;
  PortDir dir;
  SubtypeSpec type;
  SourceSpan name_span;
};

struct GenericDecl {
  std::string name;
  SubtypeSpec type;
  std::optional<Expr> default_value;
  SourceSpan name_span;
};

struct SignalDecl {
  std::string name;
  SubtypeSpec type;
  std::optional<Expr> init;
  SourceSpan name_span;
};

struct ConstantDecl {
  std::string name;
  SubtypeSpec type;
  Expr value;
  SourceSpan name_span;
};

struct VariableDecl {
  std::string name;
  SubtypeSpec type;
  std::optional<Expr> init;
  SourceSpan name_span;
};

struct ComponentDecl {
  std::string name;
  std::vector<PortDecl> ports;
  SourceSpan name_span;
};

struct ParamDecl {
  std::string name;
  PortDir dir;  // functions only use In
  SubtypeSpec type;
  SourceSpan name_span;
};

struct SeqStmt;

// Function bodies are sequential statements over local variables with one
// trailing `return <expr>;`.
struct FunctionDecl {
  std::string name;
  std::vector<ParamDecl> params;
  SubtypeSpec return_type;
  std::vector<VariableDecl> variables;
  std::vector<SeqStmt> body;
  Box<Expr> return_expr;
  SourceSpan name_span;
};

struct ProcedureDecl {
  std::string name;
  std::vector<ParamDecl> params;
  std::vector<VariableDecl> variables;
  std::vector<SeqStmt> body;
  SourceSpan name_span;
};

struct Declaration {
  std::variant<SignalDecl, ConstantDecl, ComponentDecl, FunctionDecl,
               ProcedureDecl>
      node;
  SourceSpan span;
  std::vector<std::string> leading_comments;
};

// ---------------------------------------------------------------------------
// Sequential statements
// ---------------------------------------------------------------------------

struct SignalAssignStmt {
  Expr target;  // NameRef / IndexExpr / SliceExpr
  Expr value;
};

struct VariableAssignStmt {
  Expr target;
  Expr value;
};

struct CondArm {
  Expr condition;
  std::vector<SeqStmt> body;
};

struct IfStmt {
  std::vector<CondArm> arms;  // if + elsif chain, in order
  std::optional<std::vector<SeqStmt>> else_body;
};

struct CaseArm {
  std::vector<Expr> choices;  // literals; empty when is_others
  bool is_others = false;
  std::vector<SeqStmt> body;
};

struct CaseStmt {
  Expr selector;
  std::vector<CaseArm> arms;
};

struct NullStmt {};

struct SeqStmt {
  std::variant<SignalAssignStmt, VariableAssignStmt, IfStmt, CaseStmt, NullStmt>
      node;
  SourceSpan span;
  std::vector<std::string> leading_comments;
};

// ---------------------------------------------------------------------------
// Concurrent statements
// ---------------------------------------------------------------------------

struct ConcurrentAssign {
  Expr target;
  Expr value;
};

struct CondWaveform {
  Expr value;
  std::optional<Expr> condition;  // absent on the final else branch
};

struct ConditionalAssign {
  Expr target;
  std::vector<CondWaveform> branches;
};

struct SelectedWaveform {
  Expr value;
  std::vector<Expr> choices;
  bool is_others = false;
};

struct SelectedAssign {
  Expr selector;
  Expr target;
  std::vector<SelectedWaveform> waveforms;
};

struct NamedItem {
  std::string name;
  SourceSpan span;
};

struct ProcessStmt {
  std::optional<std::string> label;
  SourceSpan label_span;
  std::vector<NamedItem> sensitivity;
  std::vector<VariableDecl> variables;
  std::vector<SeqStmt> body;
  std::vector<std::string> trailing_comments;
};

struct Association {
  std::optional<std::string> formal;  // all-named or all-positional per map
  SourceSpan formal_span;
  Expr actual;
};

struct ComponentInstance {
  std::string label;
  SourceSpan label_span;
  std::string component_name;
  SourceSpan component_span;
  std::vector<Association> port_map;
};

struct ConcurrentStmt {
  std::variant<ConcurrentAssign, ConditionalAssign, SelectedAssign, ProcessStmt,
               ComponentInstance>
      node;
  SourceSpan span;
  std::vector<std::string> leading_comments;
};

// ---------------------------------------------------------------------------
// Design units
// ---------------------------------------------------------------------------

struct EntityDecl {
  std::string name;
  std::vector<GenericDecl> generics;
  std::vector<PortDecl> ports;
  SourceSpan name_span;
};

struct ArchitectureBody {
  std::string name;
  std::string entity_name;
  SourceSpan name_span;
  SourceSpan entity_name_span;
  std::vector<Declaration> declarations;
  std::vector<ConcurrentStmt> statements;
  std::vector<std::string> trailing_comments;
};

struct PackageDecl {
  std::string name;
  std::vector<Declaration> declarations;
  SourceSpan name_span;
};

struct DesignUnit {
  std::variant<EntityDecl, ArchitectureBody, PackageDecl> node;
  SourceSpan span;
  std::vector<std::string> leading_comments;
};

struct DesignFile {
  std::vector<std::string> context_clauses;  // canonicalized library/use lines
  std::vector<DesignUnit> units;
  std::vector<std::string> trailing_comments;
};

// ---------------------------------------------------------------------------
// Structural equality (spans excluded)
// ---------------------------------------------------------------------------

bool struct_equal(const Expr& a, const Expr& b);
bool struct_equal(const SeqStmt& a, const SeqStmt& b);
bool struct_equal(const ConcurrentStmt& a, const ConcurrentStmt& b);
bool struct_equal(const Declaration& a, const Declaration& b);
bool struct_equal(const DesignUnit& a, const DesignUnit& b);
bool struct_equal(const DesignFile& a, const DesignFile& b);

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
  ParseError(SourceSpan s, std::string expected_, std::string found_)
      : std::runtime_error("parse error: expected " + expected_ + ", found " +
                           found_),
        span(s),
        expected(std::move(expected_)),
        found(std::move(found_)) {}
  SourceSpan span;
  std::string expected;
  std::string found;
};

struct UnsupportedConstruct : std::runtime_error {
  UnsupportedConstruct(SourceSpan s, std::string construct_)
      : std::runtime_error("unsupported construct: " + construct_),
        span(s),
        construct(std::move(construct_)) {}
  SourceSpan span;
  std::string construct;
};

}  // namespace vcodes::vhdl

#endif  // VCODES_VHDL_AST_HPP
