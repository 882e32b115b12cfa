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

#ifndef VCODES_VHDL_PRINTER_HPP
#define VCODES_VHDL_PRINTER_HPP

#include <string>

#include "vcodes/vhdl/ast.hpp"

namespace vcodes::vhdl {

/// Deterministic formatter: 2-space indent, one declaration per line,
/// lower-case keywords, identifier spelling preserved. The output re-parses
/// to a structurally equal AST.
std::string pretty_print(const DesignFile& design);

std::string pretty_print(const Expr& expr);
std::string pretty_print(const DesignUnit& unit);
std::string pretty_print_stmt(const ConcurrentStmt& stmt);
std::string pretty_print_decl(const Declaration& decl);

}  // namespace vcodes::vhdl

#endif  // VCODES_VHDL_PRINTER_HPP
