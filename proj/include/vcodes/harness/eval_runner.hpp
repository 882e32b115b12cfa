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

#ifndef VCODES_HARNESS_EVAL_RUNNER_HPP
#define VCODES_HARNESS_EVAL_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcodes/clone/dataset.hpp"
#include "vcodes/codes/engine.hpp"
#include "vcodes/harness/eval_dataset.hpp"
#include "vcodes/harness/testbench.hpp"
#include "vcodes/llm/gateway.hpp"
#include "vcodes/metrics/metrics.hpp"

namespace vcodes::harness {

enum class PromptMode { ZeroShot, Single, Multi };
enum class DescLength { Short, Long };

const char* prompt_mode_name(PromptMode mode);

enum class ScBackend { EquivChecker, Testbench };

struct RunConfig {
  std::string provider_id = "mock";
  std::string model_id = "mock-model";
  llm::SamplingParams sampling;
  PromptMode mode = PromptMode::ZeroShot;
  ScBackend sc_backend = ScBackend::EquivChecker;
  DescLength desc_length = DescLength::Long;
  codes::SummarizationGranularity granularity =
      codes::SummarizationGranularity::LineByLine;
  int n_samples = 1;
  equiv::EquivBudget budget;
  std::string out_dir;  // empty disables per-item record files (no resume)
  uint64_t seed = 0;
  std::optional<SimulatorAdapter> tb_adapter;
  bool use_plan_profile = false;
};

// Per-item records are JSON files under <out_dir>/items/; an existing record
// is trusted and skipped on re-runs, which makes interrupted runs resumable
// and repeated runs byte-identical.
struct GenerationEvalResult {
  std::optional<double> pass1_tb;
  std::optional<double> pass1_eq;
  int items = 0;
  int item_failures = 0;
  std::vector<nlohmann::json> records;
};
GenerationEvalResult run_generation_eval(const std::vector<EvalTask>& tasks,
                                         const RunConfig& config,
                                         llm::Gateway& gateway);

struct SummarizationEvalResult {
  std::optional<double> pr_eval_percent;   // VHDL-Eval path
  std::optional<double> rouge_l_xform;     // clone-pair path
  std::optional<double> pr_xform_percent;  // clone-pair path
  int items = 0;
  int item_failures = 0;
  std::vector<nlohmann::json> records;
};
SummarizationEvalResult run_summarization_eval_tasks(
    const std::vector<EvalTask>& tasks, const RunConfig& config,
    llm::Gateway& gateway);
SummarizationEvalResult run_summarization_eval_pairs(
    const std::vector<clone::PairRecord>& pairs, const RunConfig& config,
    llm::Gateway& gateway);

struct SelfConsistencyEvalResult {
  double sc1 = 0;
  int items = 0;
  int item_failures = 0;
  std::vector<nlohmann::json> records;
};
SelfConsistencyEvalResult run_self_consistency_eval(
    const std::vector<EvalTask>& tasks, const RunConfig& config,
    llm::Gateway& gateway);

// Aggregation helpers shared by runners and consistency checks: every
// aggregate is recomputable from the stored per-item records.
std::optional<double> aggregate_mean(const std::vector<nlohmann::json>& records,
                                     const std::string& field);

enum class AblationAxis { DescLength, Granularity, ExecMode };
std::optional<AblationAxis> ablation_axis_from_name(const std::string& name);

struct AblationArm {
  std::string setting;
  std::map<std::string, double> metrics;
};
struct AblationReport {
  AblationAxis axis;
  AblationArm arms[2];
  std::string to_markdown() const;
  std::string to_json() const;
};

/// Runs both settings of one ablation axis with identical seeds and provider
/// and returns the paired comparison.
AblationReport run_ablation(AblationAxis axis,
                            const std::vector<EvalTask>& tasks,
                            const RunConfig& config, llm::Gateway& gateway);

}  // namespace vcodes::harness

#endif  // VCODES_HARNESS_EVAL_RUNNER_HPP
