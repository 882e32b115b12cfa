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

#ifndef VCODES_VHDL_OUTLINE_HPP
#define VCODES_VHDL_OUTLINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "vcodes/vhdl/ast.hpp"

namespace vcodes::vhdl {

enum class OutlineKind { Entity, Architecture, Process, Component, Procedure, Function };

const char* outline_kind_name(OutlineKind kind);

struct OutlineRow {
  OutlineKind kind;
  std::string name;
  std::optional<std::string> parent_name;
  SourceSpan span;
};

/// One row per non-leaf construct, in source order. Component rows carry the
/// instance label; unlabeled processes get generated names ("process_1", ...)
/// numbered per architecture.
std::vector<OutlineRow> ast_outline(const DesignFile& design);

/// Pretty-printed source of the construct an outline row points at, used to
/// prefix prompt templates.
std::string outline_node_source(const DesignFile& design, const OutlineRow& row);

}  // namespace vcodes::vhdl

#endif  // VCODES_VHDL_OUTLINE_HPP
