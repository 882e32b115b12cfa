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

#ifndef VCODES_EQUIV_CHECK_HPP
#define VCODES_EQUIV_CHECK_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcodes/equiv/elaborate.hpp"

namespace vcodes::equiv {

struct InterfaceMismatch : std::runtime_error {
  explicit InterfaceMismatch(const std::string& detail_)
      : std::runtime_error("interface mismatch: " + detail_), detail(detail_) {}
  std::string detail;
};

struct EquivBudget {
  int max_input_bits = 16;
  int max_depth = 8;
  int64_t max_step_evaluations = int64_t{1} << 24;
};

// Inputs are keyed by design A's canonical port names.
struct Counterexample {
  std::vector<std::map<std::string, BitVec>> input_sequence;
  std::string diverging_output;
  int step_index = 0;
  BitVec value_a;
  BitVec value_b;
};

struct EquivalenceVerdict {
  enum class Kind { Equivalent, Inequivalent, Unknown };
  enum class UnknownReason {
    UnsupportedConstruct,
    InputBudgetExceeded,
    DepthBudgetExhausted,
    ElaborationFailure,
  };

  Kind kind = Kind::Unknown;
  bool bounded = false;  // Equivalent only: proof cut off at the depth budget
  std::optional<Counterexample> counterexample;
  std::optional<UnknownReason> reason;
  std::string detail;

  bool equivalent() const { return kind == Kind::Equivalent; }
};

const char* verdict_kind_name(EquivalenceVerdict::Kind kind);
const char* unknown_reason_name(EquivalenceVerdict::UnknownReason reason);

// Port correspondence from design A to design B: case-insensitive name
// matching first, positional (with width checks) as fallback.
struct Correspondence {
  std::vector<int> b_input_for_a;
  std::vector<int> b_output_for_a;
};
Correspondence match_interfaces(const ElaboratedDesign& a,
                                const ElaboratedDesign& b);

/// Exhaustive truth-table check; both designs must be register-free.
EquivalenceVerdict check_combinational_equiv(const ElaboratedDesign& a,
                                             const ElaboratedDesign& b,
                                             const EquivBudget& budget);

/// Breadth-first exploration of all input sequences up to the depth budget
/// with joint-state memoization; both designs must have registers. Outputs
/// are sampled after each active clock edge. A verdict of Equivalent with
/// bounded=false means the reachable joint state space was exhausted.
EquivalenceVerdict check_sequential_equiv(const ElaboratedDesign& a,
                                          const ElaboratedDesign& b,
                                          const EquivBudget& budget);

/// Routes to the combinational or sequential checker; accepts any register
/// mix by treating register-free designs as one-state machines.
EquivalenceVerdict check_design_equivalence(const ElaboratedDesign& a,
                                            const ElaboratedDesign& b,
                                            const EquivBudget& budget);

/// Parses both sources, picks their top entities, elaborates, and checks.
/// Elaboration and parse failures become Unknown verdicts.
EquivalenceVerdict check_source_equivalence(const std::string& code_a,
                                            const std::string& code_b,
                                            const EquivBudget& budget);

/// True iff the recorded divergence reproduces exactly.
bool replay(const Counterexample& cex, const ElaboratedDesign& a,
            const ElaboratedDesign& b);

/// Line-oriented trace: one "step <i>: <port>=<binary> ..." line per step
/// plus a final divergence line.
std::string format_trace(const Counterexample& cex);

}  // namespace vcodes::equiv

#endif  // VCODES_EQUIV_CHECK_HPP
