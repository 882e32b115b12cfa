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

#ifndef VCODES_VHDL_IDENTIFIERS_HPP
#define VCODES_VHDL_IDENTIFIERS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcodes/vhdl/ast.hpp"

namespace vcodes::vhdl {

enum class IdentifierKind {
  Entity,
  Package,
  Process,
  Architecture,
  Port,
  Signal,
  Constant,
  Component,
  Function,
  Procedure,
  Variable,
  Label,
};

const char* identifier_kind_name(IdentifierKind kind);

struct Occurrence {
  SourceSpan span;
  std::string spelling;
};

struct IdentifierEntry {
  std::string canonical_name;     // case-folded
  std::string original_spelling;  // spelling at the declaration
  IdentifierKind kind;
  std::vector<Occurrence> occurrences;  // declaration first, then uses
};

struct IdentifierTable {
  std::vector<IdentifierEntry> entries;  // declaration order

  const IdentifierEntry* find(const std::string& canonical,
                              IdentifierKind kind) const;
  bool name_exists(const std::string& canonical) const;
};

/// Collects every declared identifier of the design with all its occurrences
/// (declaration plus uses). Spellings differing only in case share one entry.
IdentifierTable collect_identifiers(const DesignFile& design);

struct RenameCollision : std::runtime_error {
  explicit RenameCollision(const std::string& name_)
      : std::runtime_error("rename collision on \"" + name_ + "\""),
        name(name_) {}
  std::string name;
};

struct ReservedWordError : std::runtime_error {
  explicit ReservedWordError(const std::string& name_)
      : std::runtime_error("\"" + name_ + "\" is a reserved word"),
        name(name_) {}
  std::string name;
};

/// Applies a simultaneous, consistent rename keyed by canonical name. New
/// names must be valid identifiers, not reserved words, and must not collide
/// (case-insensitively) with unmapped names, predefined names, or each other.
DesignFile rename(const DesignFile& design,
                  const std::map<std::string, std::string>& mapping);

}  // namespace vcodes::vhdl

#endif  // VCODES_VHDL_IDENTIFIERS_HPP
