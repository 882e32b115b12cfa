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

#ifndef VCODES_METRICS_METRICS_HPP
#define VCODES_METRICS_METRICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcodes/equiv/check.hpp"
#include "vcodes/llm/gateway.hpp"

namespace vcodes::metrics {

// ---------------------------------------------------------------------------
// pass@k
// ---------------------------------------------------------------------------

struct PassAtKInput {
  int n;  // samples generated
  int c;  // samples judged functionally correct
  int k;
};

/// Unbiased estimator 1 - C(n-c, k)/C(n, k) in overflow-safe product form.
double pass_at_k(const PassAtKInput& input);

// ---------------------------------------------------------------------------
// ROUGE-L
// ---------------------------------------------------------------------------

struct RougeScore {
  double precision = 0;
  double recall = 0;
  double f = 0;
  int lcs_length = 0;
};

/// Lower-cased tokens split on whitespace and punctuation boundaries
/// (punctuation runs become their own tokens).
std::vector<std::string> rouge_tokenize(const std::string& text);

/// LCS-based similarity; f is the harmonic mean (beta = 1, symmetric).
/// `beta` is configurable for the classical recall-weighted variant.
RougeScore rouge_l(const std::string& candidate, const std::string& reference,
                   double beta = 1.0);

// ---------------------------------------------------------------------------
// Judge prompts and preference rate
// ---------------------------------------------------------------------------

struct JudgePrompt {
  std::string text;
  bool reference_is_a = true;  // slot assignment from the seeded coin
};

/// Pairwise judgment prompt for reference-vs-generated summaries. The
/// reference lands in slot A or B by a fair coin drawn from `item_seed`
/// (position-bias control); the judge must answer with the single letter.
JudgePrompt build_judge_prompt_eval(const std::string& problem_statement,
                                    const std::string& reference_summary,
                                    const std::string& generated_summary,
                                    uint64_t item_seed);

/// Alignment prompt for clone pairs: does the transformed-code summary
/// describe the same functionality as the original code and its summary?
/// Expected answer tokens: yes / no.
std::string build_judge_prompt_xform(const std::string& original_code,
                                     const std::string& original_summary,
                                     const std::string& transformed_summary);

enum class PreferenceVerdict { Preferred, NotPreferred, Invalid };

struct PreferenceRecord {
  std::string item_id;
  std::string dataset;  // "vhdl_eval" | "vhdl_xform"
  PreferenceVerdict verdict = PreferenceVerdict::Invalid;
  std::string judge_raw;
  int retries = 0;
};

struct PreferenceRate {
  double percent = 0;
  int preferred = 0;
  int total = 0;
  bool empty_input = false;
};

/// 100 * preferred / all records; invalid verdicts count in the denominator.
PreferenceRate preference_rate(const std::vector<PreferenceRecord>& records);

// ---------------------------------------------------------------------------
// Self-consistency (chain length 1)
// ---------------------------------------------------------------------------

struct SelfConsistencyRecord {
  std::string task_id;
  std::string pl0;  // canonical solution
  std::string nl0;  // generated summary
  std::string pl1;  // code regenerated from the summary
  int sc = 0;       // 1 iff pl0 ~ pl1 per the equivalence checker
  equiv::EquivalenceVerdict verdict_detail;
  std::string failure_reason;  // provider/parse failures (sc = 0)
};

struct SelfConsistencyResult {
  double sc1 = 0;  // mean of sc over tasks, in [0,1]
  std::vector<SelfConsistencyRecord> records;
};

struct SelfConsistencyTask {
  std::string task_id;
  std::string canonical_solution;
};

enum class CodesMode { ZeroShot, Single, Multi };

/// code -> summary -> code round trip per task; sc = 1 iff the regenerated
/// code is equivalent to the canonical solution. Unknown verdicts and
/// provider/parse failures count as sc = 0 with the reason recorded.
SelfConsistencyResult self_consistency(
    const std::vector<SelfConsistencyTask>& tasks, llm::Gateway& gateway,
    CodesMode mode, const equiv::EquivBudget& budget,
    const llm::SamplingParams& sampling = llm::SamplingParams{});

// ---------------------------------------------------------------------------
// Report row (Table-style columns)
// ---------------------------------------------------------------------------

struct MetricReportRow {
  std::string model_id;
  std::optional<double> pass1_tb;
  std::optional<double> pass1_eq;
  std::optional<double> sc1_percent;
  std::optional<double> pr_eval_percent;
  std::optional<double> rouge_l_xform;
  std::optional<double> pr_xform_percent;
};

}  // namespace vcodes::metrics

#endif  // VCODES_METRICS_METRICS_HPP
