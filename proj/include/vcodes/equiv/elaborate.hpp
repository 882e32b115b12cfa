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

#ifndef VCODES_EQUIV_ELABORATE_HPP
#define VCODES_EQUIV_ELABORATE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcodes/equiv/netlist.hpp"
#include "vcodes/vhdl/ast.hpp"

namespace vcodes::equiv {

struct ElaborationError : std::runtime_error {
  explicit ElaborationError(const std::string& message)
      : std::runtime_error("elaboration error: " + message) {}
};

struct WidthMismatch : std::runtime_error {
  explicit WidthMismatch(const std::string& message)
      : std::runtime_error("width mismatch: " + message) {}
};

struct PortInfo {
  std::string name;  // canonical
  int width;
};

struct RegInfo {
  std::string name;  // canonical, instance-prefixed
  int width;
  BitVec init;
};

struct ClockInfo {
  std::string name;  // canonical top-level port name
  bool rising;
};

struct ResetInfo {
  std::string name;  // canonical top-level port name
  bool active_high;
  bool is_async;
};

// Flattened single-level design: inputs and registers feed a combinational
// DAG producing outputs and register next-values. One evaluation per clock
// step; the clock port is implicit and carries no input slot.
struct ElaboratedDesign {
  std::vector<PortInfo> inputs;   // declaration order, clock excluded
  std::vector<PortInfo> outputs;  // declaration order
  std::vector<RegInfo> registers;
  std::optional<ClockInfo> clock;
  std::optional<ResetInfo> reset;
  Netlist netlist;
  std::vector<NodeId> output_roots;      // parallel to outputs
  std::vector<NodeId> next_state_roots;  // parallel to registers
  int total_input_bits = 0;

  int input_index(const std::string& canonical_name) const;
  std::vector<BitVec> initial_state() const;
};

/// Flattens `top_entity` (component instances included) into an executable
/// design. Clocked processes contribute registers; everything else becomes
/// combinational output/next-state functions.
ElaboratedDesign elaborate(const vhdl::DesignFile& file,
                           const std::string& top_entity);

/// Picks the top entity of a design file: the unique entity with an
/// architecture that no other architecture instantiates (the last declared
/// one when several roots exist).
std::string find_top_entity(const vhdl::DesignFile& file);

/// One simulation step: outputs are a function of (state, inputs); the
/// returned state is the register file after the active clock edge.
struct StepResult {
  std::vector<BitVec> next_state;
  std::map<std::string, BitVec> outputs;  // canonical output name -> value
};
StepResult simulate_step(const ElaboratedDesign& design,
                         const std::vector<BitVec>& state,
                         const std::map<std::string, BitVec>& inputs);

}  // namespace vcodes::equiv

#endif  // VCODES_EQUIV_ELABORATE_HPP
