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

#ifndef VCODES_CLONE_TRANSFORMS_HPP
#define VCODES_CLONE_TRANSFORMS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vcodes/clone/suggest.hpp"
#include "vcodes/equiv/check.hpp"
#include "vcodes/vhdl/ast.hpp"

namespace vcodes::clone {

enum class CloneType { Type2, Type3, Type4 };
const char* clone_type_name(CloneType type);
std::optional<CloneType> clone_type_from_name(const std::string& name);

enum class Type3Template { InertSignal, NullProcess, ReorderSignals, ReorderPorts };

enum class Type4Mode { RuleBased, ExternalBacktranslation };

struct Type2Weights {
  double permute = 0.4;
  double abbreviate = 0.3;
  double llm_suggest = 0.3;
};

struct TransformConfig {
  uint64_t seed = 0;
  Type2Weights type2_weights;
  std::set<Type3Template> type3_templates = {
      Type3Template::InertSignal, Type3Template::NullProcess,
      Type3Template::ReorderSignals, Type3Template::ReorderPorts};
  Type4Mode type4_mode = Type4Mode::RuleBased;
  std::optional<std::string> to_verilog_cmd;  // templates with {input}/{output}
  std::optional<std::string> to_vhdl_cmd;
  double command_timeout_s = 60;
};

struct NoApplicableTransform : std::runtime_error {
  explicit NoApplicableTransform(const std::string& detail)
      : std::runtime_error("no applicable transform: " + detail) {}
};

struct BacktranslationFailed : std::runtime_error {
  BacktranslationFailed(int exit_code_, const std::string& excerpt)
      : std::runtime_error("back-translation failed (exit " +
                           std::to_string(exit_code_) + "): " + excerpt),
        exit_code(exit_code_),
        stderr_excerpt(excerpt) {}
  int exit_code;
  std::string stderr_excerpt;
};

struct RoundTripUnparseable : std::runtime_error {
  explicit RoundTripUnparseable(const std::string& detail)
      : std::runtime_error("back-translated output is outside the supported "
                           "subset: " +
                           detail) {}
};

struct TransformOutcome {
  vhdl::DesignFile design;
  std::vector<std::string> log;  // human-readable edit records
};

/// Consistent identifier rewrite: single-character identifiers go through the
/// suggester; snake/camel-case identifiers are permuted, abbreviated, or
/// replaced by seeded choice. Plain single-word identifiers are left alone.
TransformOutcome transform_type2(const vhdl::DesignFile& design,
                                 const TransformConfig& config,
                                 NameSuggester& suggester);

/// Inserts functionally inert code and/or reorders declarations. Port
/// reordering first rewrites positional port maps to named association.
TransformOutcome transform_type3(const vhdl::DesignFile& design,
                                 const TransformConfig& config, uint64_t seed);

/// Semantic rewrites (if/elsif <-> case, De Morgan forms, intermediate
/// signals) followed by a full rename; or an external back-translation
/// command pipeline when configured.
TransformOutcome transform_type4(const vhdl::DesignFile& design,
                                 const TransformConfig& config,
                                 NameSuggester& suggester);

struct ClonePair {
  std::string pair_id;
  CloneType clone_type = CloneType::Type2;
  std::string original_code;
  std::string transformed_code;
  std::vector<std::string> transform_log;
  std::optional<std::string> source_path;
  uint64_t seed = 0;
};

/// Parses both sides and delegates to the equivalence checker (combinational
/// or sequential as elaborated). Parse/elaboration failures surface as
/// Unknown verdicts.
equiv::EquivalenceVerdict verify_pair(const ClonePair& pair,
                                      const equiv::EquivBudget& budget);

}  // namespace vcodes::clone

#endif  // VCODES_CLONE_TRANSFORMS_HPP
