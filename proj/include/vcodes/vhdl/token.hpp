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

#ifndef VCODES_VHDL_TOKEN_HPP
#define VCODES_VHDL_TOKEN_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcodes::vhdl {

// 1-based, inclusive on both ends.
struct SourceSpan {
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;
};

enum class TokenKind {
  Keyword,
  Identifier,
  LiteralInt,
  LiteralBit,
  LiteralBitVector,
  LiteralChar,
  LiteralString,
  Symbol,
  Comment,
  Error,  // unknown character; the lexer stays total
};

struct Token {
  TokenKind kind;
  std::string text;  // exact source lexeme (quotes and "--" included)
  SourceSpan span;
};

struct LexError : std::runtime_error {
  LexError(SourceSpan s, const std::string& message)
      : std::runtime_error(message), span(s) {}
  SourceSpan span;
};

// VHDL identifiers are case-insensitive; this is the canonical form.
std::string fold_name(std::string_view spelling);

// Full reserved-word list (not just the keywords the parser consumes).
bool is_reserved_word(std::string_view word);

// Lexical validity of a (non-reserved) identifier.
bool is_valid_identifier(std::string_view word);

const char* token_kind_name(TokenKind kind);

}  // namespace vcodes::vhdl

#endif  // VCODES_VHDL_TOKEN_HPP
