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

#ifndef VCODES_CLONE_SUGGEST_HPP
#define VCODES_CLONE_SUGGEST_HPP

#include <memory>
#include <string>

#include "vcodes/llm/gateway.hpp"
#include "vcodes/vhdl/identifiers.hpp"

namespace vcodes::clone {

// Produces replacement identifiers for renames. Suggestions are always valid
// VHDL identifiers and never reserved words.
class NameSuggester {
 public:
  virtual ~NameSuggester() = default;
  virtual std::string suggest(const std::string& identifier,
                              vhdl::IdentifierKind kind,
                              const std::string& code_context) = 0;
};

// Deterministic kind-prefix dictionary ("a" as a port becomes "operand_a").
class DictionarySuggester : public NameSuggester {
 public:
  std::string suggest(const std::string& identifier, vhdl::IdentifierKind kind,
                      const std::string& code_context) override;
};

// Asks the model for a descriptive identifier; falls back to the dictionary
// when the reply is not a usable identifier.
class LlmSuggester : public NameSuggester {
 public:
  explicit LlmSuggester(llm::Gateway& gateway) : gateway_(gateway) {}
  std::string suggest(const std::string& identifier, vhdl::IdentifierKind kind,
                      const std::string& code_context) override;

 private:
  llm::Gateway& gateway_;
  DictionarySuggester fallback_;
};

}  // namespace vcodes::clone

#endif  // VCODES_CLONE_SUGGEST_HPP
