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

#ifndef VCODES_VHDL_PARSER_HPP
#define VCODES_VHDL_PARSER_HPP

#include <string_view>

#include "vcodes/vhdl/ast.hpp"

namespace vcodes::vhdl {

/// Recursive-descent parser for the supported VHDL subset. Throws ParseError
/// for malformed input inside the subset and UnsupportedConstruct for grammar
/// outside it (generate statements, loops, configurations, multi-clock
/// processes beyond the supported shape, ...).
DesignFile parse(std::string_view text);

// Names with builtin meaning in expressions (edge detectors and the
// numeric_std conversion set). These are callable and must not be shadowed or
// introduced by renames.
bool is_builtin_function(std::string_view folded_name);

// Type names and predefined enumeration literals of the subset.
bool is_predefined_name(std::string_view folded_name);

}  // namespace vcodes::vhdl

#endif  // VCODES_VHDL_PARSER_HPP
