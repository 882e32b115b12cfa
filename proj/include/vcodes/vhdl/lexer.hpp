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

#ifndef VCODES_VHDL_LEXER_HPP
#define VCODES_VHDL_LEXER_HPP

#include <string_view>
#include <vector>

#include "vcodes/vhdl/token.hpp"

namespace vcodes::vhdl {

/// Tokenizes VHDL source text. Comments are emitted as tokens; unknown
/// characters become Error tokens. Throws LexError only for unterminated
/// string/character literals. Concatenating token texts with the skipped
/// whitespace reconstructs the input exactly.
std::vector<Token> tokenize(std::string_view text);

}  // namespace vcodes::vhdl

#endif  // VCODES_VHDL_LEXER_HPP
