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

#include "vcodes/vhdl/token.hpp"

#include <cctype>
#include <unordered_set>

#include "vcodes/util/strutil.hpp"

namespace vcodes::vhdl {

std::string fold_name(std::string_view spelling) { return to_lower(spelling); }

bool is_reserved_word(std::string_view word) {
  static const std::unordered_set<std::string> kReserved = {
      "abs",        "access",    "after",      "alias",     "all",
      "and",        "architecture", "array",   "assert",    "attribute",
      "begin",      "block",     "body",       "buffer",    "bus",
      "case",       "component", "configuration", "constant", "disconnect",
      "downto",     "else",      "elsif",      "end",       "entity",
      "exit",       "file",      "for",        "function",  "generate",
      "generic",    "group",     "guarded",    "if",        "impure",
      "in",         "inertial",  "inout",      "is",        "label",
      "library",    "linkage",   "literal",    "loop",      "map",
      "mod",        "nand",      "new",        "next",      "nor",
      "not",        "null",      "of",         "on",        "open",
      "or",         "others",    "out",        "package",   "port",
      "postponed",  "procedure", "process",    "pure",      "range",
      "record",     "register",  "reject",     "rem",       "report",
      "return",     "rol",       "ror",        "select",    "severity",
      "shared",     "signal",    "sla",        "sll",       "sra",
      "srl",        "subtype",   "then",       "to",        "transport",
      "type",       "unaffected", "units",     "until",     "use",
      "variable",   "wait",      "when",       "while",     "with",
      "xnor",       "xor",
  };
  return kReserved.count(fold_name(word)) > 0;
}

bool is_valid_identifier(std::string_view word) {
  if (word.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(word[0]))) return false;
  bool prev_underscore = false;
  for (size_t i = 0; i < word.size(); ++i) {
    char c = word[i];
    if (c == '_') {
      if (prev_underscore || i + 1 == word.size()) return false;
      prev_underscore = true;
      continue;
    }
    prev_underscore = false;
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::LiteralInt: return "literal_int";
    case TokenKind::LiteralBit: return "literal_bit";
    case TokenKind::LiteralBitVector: return "literal_bitvector";
    case TokenKind::LiteralChar: return "literal_char";
    case TokenKind::LiteralString: return "literal_string";
    case TokenKind::Symbol: return "symbol";
    case TokenKind::Comment: return "comment";
    case TokenKind::Error: return "error";
  }
  return "unknown";
}

}  // namespace vcodes::vhdl
