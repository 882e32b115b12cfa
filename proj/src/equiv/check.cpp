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

#include "vcodes/equiv/check.hpp"

#include <unordered_map>

#include "vcodes/vhdl/parser.hpp"

namespace vcodes::equiv {

const char* verdict_kind_name(EquivalenceVerdict::Kind kind) {
  switch (kind) {
    case EquivalenceVerdict::Kind::Equivalent: return "equivalent";
    case EquivalenceVerdict::Kind::Inequivalent: return "inequivalent";
    case EquivalenceVerdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

const char* unknown_reason_name(EquivalenceVerdict::UnknownReason reason) {
  switch (reason) {
    case EquivalenceVerdict::UnknownReason::UnsupportedConstruct:
      return "unsupported_construct";
    case EquivalenceVerdict::UnknownReason::InputBudgetExceeded:
      return "input_budget_exceeded";
    case EquivalenceVerdict::UnknownReason::DepthBudgetExhausted:
      return "depth_budget_exhausted";
    case EquivalenceVerdict::UnknownReason::ElaborationFailure:
      return "elaboration_error";
  }
  return "?";
}

namespace {

std::vector<int> match_port_lists(const std::vector<PortInfo>& a,
                                  const std::vector<PortInfo>& b,
                                  const char* what) {
  if (a.size() != b.size())
    throw InterfaceMismatch(std::string(what) + " count differs (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  std::vector<int> mapping(a.size(), -1);
  bool names_match = true;
  for (size_t i = 0; i < a.size(); ++i) {
    int found = -1;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].name == a[i].name) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0) {
      names_match = false;
      break;
    }
    if (b[static_cast<size_t>(found)].width != a[i].width)
      throw InterfaceMismatch(std::string(what) + " \"" + a[i].name +
                              "\" width differs");
    mapping[i] = found;
  }
  if (names_match) return mapping;
  // Positional fallback for renamed clones: widths must line up.
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].width != b[i].width)
      throw InterfaceMismatch(std::string(what) + " #" + std::to_string(i) +
                              " width differs under positional matching");
    mapping[i] = static_cast<int>(i);
  }
  return mapping;
}

class JointSim {
 public:
  JointSim(const ElaboratedDesign& a, const ElaboratedDesign& b,
           const Correspondence& corr)
      : a_(a), b_(b), corr_(corr) {
    inputs_a_.resize(a.inputs.size(), BitVec(1, 0));
    inputs_b_.resize(b.inputs.size(), BitVec(1, 0));
  }

  int input_bits() const { return a_.total_input_bits; }

  // Decodes an assignment index into both designs' input vectors.
  void set_inputs(uint64_t index) {
    int shift = 0;
    for (size_t i = 0; i < a_.inputs.size(); ++i) {
      int w = a_.inputs[i].width;
      uint64_t chunk =
          (index >> shift) & (w == 64 ? ~0ULL : ((1ULL << w) - 1));
      inputs_a_[i] = BitVec(w, chunk);
      inputs_b_[static_cast<size_t>(corr_.b_input_for_a[i])] = BitVec(w, chunk);
      shift += w;
    }
  }

  void set_inputs(const std::map<std::string, BitVec>& named) {
    for (size_t i = 0; i < a_.inputs.size(); ++i) {
      auto it = named.find(a_.inputs[i].name);
      if (it == named.end()) {
        // Keys may belong to the other design (replay with swapped args).
        const auto& b_port =
            b_.inputs[static_cast<size_t>(corr_.b_input_for_a[i])];
        it = named.find(b_port.name);
        if (it == named.end())
          throw WidthMismatch("missing input \"" + a_.inputs[i].name + "\"");
      }
      inputs_a_[i] = it->second;
      inputs_b_[static_cast<size_t>(corr_.b_input_for_a[i])] = it->second;
    }
  }

  std::map<std::string, BitVec> current_inputs() const {
    std::map<std::string, BitVec> named;
    for (size_t i = 0; i < a_.inputs.size(); ++i)
      named[a_.inputs[i].name] = inputs_a_[i];
    return named;
  }

  void step(const std::vector<BitVec>& state_a, const std::vector<BitVec>& state_b,
            std::vector<BitVec>& next_a, std::vector<BitVec>& next_b) {
    a_.netlist.eval(inputs_a_, state_a, values_a_);
    b_.netlist.eval(inputs_b_, state_b, values_b_);
    next_a.clear();
    next_b.clear();
    for (NodeId root : a_.next_state_roots)
      next_a.push_back(values_a_[static_cast<size_t>(root)]);
    for (NodeId root : b_.next_state_roots)
      next_b.push_back(values_b_[static_cast<size_t>(root)]);
  }

  // Output comparison for the current inputs and the given (post-edge)
  // states. Returns the index of the first diverging output or -1.
  int compare_outputs(const std::vector<BitVec>& state_a,
                      const std::vector<BitVec>& state_b, BitVec* va,
                      BitVec* vb) {
    a_.netlist.eval(inputs_a_, state_a, values_a_);
    b_.netlist.eval(inputs_b_, state_b, values_b_);
    for (size_t i = 0; i < a_.outputs.size(); ++i) {
      const BitVec& av = values_a_[static_cast<size_t>(a_.output_roots[i])];
      const BitVec& bv =
          values_b_[static_cast<size_t>(b_.output_roots[static_cast<size_t>(
              corr_.b_output_for_a[i])])];
      if (av != bv) {
        if (va != nullptr) *va = av;
        if (vb != nullptr) *vb = bv;
        return static_cast<int>(i);
      }
    }
    return -1;
  }

  // Applies the reset warm-up policy: when a reset port is known, hold it
  // active for one uncompared step from the declared initial states.
  void warm_start(std::vector<BitVec>& state_a, std::vector<BitVec>& state_b) {
    state_a = a_.initial_state();
    state_b = b_.initial_state();
    std::optional<ResetInfo> reset = a_.reset;
    if (!reset && b_.reset) {
      // Map design B's reset port back onto design A's naming.
      int b_index = b_.input_index(b_.reset->name);
      for (size_t i = 0; i < a_.inputs.size(); ++i) {
        if (corr_.b_input_for_a[i] == b_index) {
          reset = ResetInfo{a_.inputs[i].name, b_.reset->active_high,
                            b_.reset->is_async};
          break;
        }
      }
    }
    if (!reset) return;
    int index = a_.input_index(reset->name);
    if (index < 0 || a_.inputs[static_cast<size_t>(index)].width != 1) return;
    if (a_.registers.empty() && b_.registers.empty()) return;
    std::map<std::string, BitVec> warm;
    for (const auto& port : a_.inputs)
      warm[port.name] = BitVec(port.width, 0);
    warm[reset->name] = BitVec(1, reset->active_high ? 1 : 0);
    set_inputs(warm);
    std::vector<BitVec> next_a, next_b;
    step(state_a, state_b, next_a, next_b);
    state_a = std::move(next_a);
    state_b = std::move(next_b);
  }

 private:
  const ElaboratedDesign& a_;
  const ElaboratedDesign& b_;
  const Correspondence& corr_;
  std::vector<BitVec> inputs_a_, inputs_b_;
  std::vector<BitVec> values_a_, values_b_;
};

std::string encode_state(const std::vector<BitVec>& a,
                         const std::vector<BitVec>& b) {
  std::string key;
  key.reserve((a.size() + b.size()) * 8 + 1);
  auto append = [&key](const std::vector<BitVec>& regs) {
    for (const auto& r : regs) {
      uint64_t bits = r.bits();
      for (int i = 0; i < 8; ++i) key += static_cast<char>((bits >> (i * 8)) & 0xff);
    }
  };
  append(a);
  key += '|';
  append(b);
  return key;
}

EquivalenceVerdict joint_explore(const ElaboratedDesign& a,
                                 const ElaboratedDesign& b,
                                 const EquivBudget& budget) {
  Correspondence corr = match_interfaces(a, b);
  EquivalenceVerdict verdict;
  if (a.total_input_bits != b.total_input_bits)
    throw InterfaceMismatch("total input widths differ");
  if (a.total_input_bits > budget.max_input_bits) {
    verdict.kind = EquivalenceVerdict::Kind::Unknown;
    verdict.reason = EquivalenceVerdict::UnknownReason::InputBudgetExceeded;
    verdict.detail = std::to_string(a.total_input_bits) + " input bits exceed " +
                     std::to_string(budget.max_input_bits);
    return verdict;
  }

  JointSim sim(a, b, corr);
  uint64_t combos = 1ULL << a.total_input_bits;

  struct Entry {
    std::vector<BitVec> state_a, state_b;
    int parent;
    uint64_t via_input;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::string, int> seen;

  std::vector<BitVec> init_a, init_b;
  sim.warm_start(init_a, init_b);
  entries.push_back({init_a, init_b, -1, 0});
  seen.emplace(encode_state(init_a, init_b), 0);

  std::vector<int> frontier = {0};
  int64_t evals = 0;

  auto build_cex = [&](int entry_index, uint64_t last_input, int depth,
                       int output_index, BitVec va, BitVec vb) {
    std::vector<uint64_t> path;
    path.push_back(last_input);
    for (int at = entry_index; entries[static_cast<size_t>(at)].parent >= 0;
         at = entries[static_cast<size_t>(at)].parent)
      path.push_back(entries[static_cast<size_t>(at)].via_input);
    Counterexample cex;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      sim.set_inputs(*it);
      cex.input_sequence.push_back(sim.current_inputs());
    }
    cex.diverging_output = a.outputs[static_cast<size_t>(output_index)].name;
    cex.step_index = depth;
    cex.value_a = va;
    cex.value_b = vb;
    verdict.kind = EquivalenceVerdict::Kind::Inequivalent;
    verdict.counterexample = std::move(cex);
  };

  std::vector<BitVec> next_a, next_b;
  for (int depth = 0; depth < budget.max_depth; ++depth) {
    std::vector<int> next_frontier;
    for (int entry_index : frontier) {
      for (uint64_t input = 0; input < combos; ++input) {
        evals += 2;
        if (evals > budget.max_step_evaluations) {
          verdict.kind = EquivalenceVerdict::Kind::Unknown;
          verdict.reason =
              EquivalenceVerdict::UnknownReason::DepthBudgetExhausted;
          verdict.detail = "step evaluation budget exhausted";
          return verdict;
        }
        const Entry& entry = entries[static_cast<size_t>(entry_index)];
        sim.set_inputs(input);
        sim.step(entry.state_a, entry.state_b, next_a, next_b);
        BitVec va, vb;
        int diverged = sim.compare_outputs(next_a, next_b, &va, &vb);
        if (diverged >= 0) {
          build_cex(entry_index, input, depth, diverged, va, vb);
          return verdict;
        }
        std::string key = encode_state(next_a, next_b);
        if (seen.find(key) == seen.end()) {
          int id = static_cast<int>(entries.size());
          entries.push_back({next_a, next_b, entry_index, input});
          seen.emplace(std::move(key), id);
          next_frontier.push_back(id);
        }
      }
    }
    if (next_frontier.empty()) {
      // Reachable joint state space exhausted: a full proof, not a bound.
      verdict.kind = EquivalenceVerdict::Kind::Equivalent;
      verdict.bounded = false;
      return verdict;
    }
    frontier = std::move(next_frontier);
  }
  verdict.kind = EquivalenceVerdict::Kind::Equivalent;
  verdict.bounded = true;
  verdict.detail = "equivalent up to depth " + std::to_string(budget.max_depth);
  return verdict;
}

}  // namespace

Correspondence match_interfaces(const ElaboratedDesign& a,
                                const ElaboratedDesign& b) {
  Correspondence corr;
  corr.b_input_for_a = match_port_lists(a.inputs, b.inputs, "input");
  corr.b_output_for_a = match_port_lists(a.outputs, b.outputs, "output");
  bool a_clocked = a.clock.has_value() || !a.registers.empty();
  bool b_clocked = b.clock.has_value() || !b.registers.empty();
  if (a_clocked != b_clocked)
    throw InterfaceMismatch("one design is clocked and the other is not");
  return corr;
}

EquivalenceVerdict check_combinational_equiv(const ElaboratedDesign& a,
                                             const ElaboratedDesign& b,
                                             const EquivBudget& budget) {
  if (!a.registers.empty() || !b.registers.empty())
    throw std::invalid_argument(
        "check_combinational_equiv requires register-free designs");
  Correspondence corr = match_interfaces(a, b);
  EquivalenceVerdict verdict;
  if (a.total_input_bits != b.total_input_bits)
    throw InterfaceMismatch("total input widths differ");
  if (a.total_input_bits > budget.max_input_bits) {
    verdict.kind = EquivalenceVerdict::Kind::Unknown;
    verdict.reason = EquivalenceVerdict::UnknownReason::InputBudgetExceeded;
    verdict.detail = std::to_string(a.total_input_bits) +
                     " input bits exceed " +
                     std::to_string(budget.max_input_bits);
    return verdict;
  }

  JointSim sim(a, b, corr);
  uint64_t combos = 1ULL << a.total_input_bits;
  std::vector<BitVec> empty_a, empty_b;
  for (uint64_t input = 0; input < combos; ++input) {
    sim.set_inputs(input);
    BitVec va, vb;
    int diverged = sim.compare_outputs(empty_a, empty_b, &va, &vb);
    if (diverged >= 0) {
      Counterexample cex;
      cex.input_sequence.push_back(sim.current_inputs());
      cex.diverging_output = a.outputs[static_cast<size_t>(diverged)].name;
      cex.step_index = 0;
      cex.value_a = va;
      cex.value_b = vb;
      verdict.kind = EquivalenceVerdict::Kind::Inequivalent;
      verdict.counterexample = std::move(cex);
      return verdict;
    }
  }
  verdict.kind = EquivalenceVerdict::Kind::Equivalent;
  verdict.bounded = false;
  return verdict;
}

EquivalenceVerdict check_sequential_equiv(const ElaboratedDesign& a,
                                          const ElaboratedDesign& b,
                                          const EquivBudget& budget) {
  return joint_explore(a, b, budget);
}

EquivalenceVerdict check_design_equivalence(const ElaboratedDesign& a,
                                            const ElaboratedDesign& b,
                                            const EquivBudget& budget) {
  if (a.registers.empty() && b.registers.empty())
    return check_combinational_equiv(a, b, budget);
  return joint_explore(a, b, budget);
}

EquivalenceVerdict check_source_equivalence(const std::string& code_a,
                                            const std::string& code_b,
                                            const EquivBudget& budget) {
  EquivalenceVerdict verdict;
  try {
    vhdl::DesignFile file_a = vhdl::parse(code_a);
    vhdl::DesignFile file_b = vhdl::parse(code_b);
    ElaboratedDesign a = elaborate(file_a, find_top_entity(file_a));
    ElaboratedDesign b = elaborate(file_b, find_top_entity(file_b));
    return check_design_equivalence(a, b, budget);
  } catch (const vhdl::UnsupportedConstruct& e) {
    verdict.kind = EquivalenceVerdict::Kind::Unknown;
    verdict.reason = EquivalenceVerdict::UnknownReason::UnsupportedConstruct;
    verdict.detail = e.what();
  } catch (const InterfaceMismatch& e) {
    verdict.kind = EquivalenceVerdict::Kind::Unknown;
    verdict.reason = EquivalenceVerdict::UnknownReason::ElaborationFailure;
    verdict.detail = e.what();
  } catch (const std::exception& e) {  // parse and elaboration failures
    verdict.kind = EquivalenceVerdict::Kind::Unknown;
    verdict.reason = EquivalenceVerdict::UnknownReason::ElaborationFailure;
    verdict.detail = e.what();
  }
  return verdict;
}

bool replay(const Counterexample& cex, const ElaboratedDesign& a,
            const ElaboratedDesign& b) {
  try {
    Correspondence corr = match_interfaces(a, b);
    JointSim sim(a, b, corr);
    std::vector<BitVec> state_a, state_b;
    sim.warm_start(state_a, state_b);
    std::vector<BitVec> next_a, next_b;
    for (size_t i = 0; i < cex.input_sequence.size(); ++i) {
      sim.set_inputs(cex.input_sequence[i]);
      sim.step(state_a, state_b, next_a, next_b);
      BitVec va, vb;
      int diverged = sim.compare_outputs(next_a, next_b, &va, &vb);
      if (static_cast<int>(i) == cex.step_index) {
        if (diverged < 0) return false;
        const std::string& name = a.outputs[static_cast<size_t>(diverged)].name;
        // The recorded output may be named after either design's ports.
        bool name_ok = name == cex.diverging_output;
        if (!name_ok) {
          int bi = corr.b_output_for_a[static_cast<size_t>(diverged)];
          name_ok = b.outputs[static_cast<size_t>(bi)].name == cex.diverging_output;
        }
        return name_ok && va == cex.value_a && vb == cex.value_b;
      }
      if (diverged >= 0) return false;  // diverged earlier than recorded
      state_a = next_a;
      state_b = next_b;
    }
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

std::string format_trace(const Counterexample& cex) {
  std::string out;
  for (size_t i = 0; i < cex.input_sequence.size(); ++i) {
    out += "step " + std::to_string(i) + ":";
    for (const auto& [name, value] : cex.input_sequence[i])
      out += " " + name + "=" + value.to_binary();
    out += "\n";
  }
  out += "diverge at step " + std::to_string(cex.step_index) + ": " +
         cex.diverging_output + " = " + cex.value_a.to_binary() + " (a) vs " +
         cex.value_b.to_binary() + " (b)\n";
  return out;
}

}  // namespace vcodes::equiv
