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

#include <stdexcept>

#include "vcodes/metrics/metrics.hpp"
#include "vcodes/util/rng.hpp"

namespace vcodes::metrics {

JudgePrompt build_judge_prompt_eval(const std::string& problem_statement,
                                    const std::string& reference_summary,
                                    const std::string& generated_summary,
                                    uint64_t item_seed) {
  if (problem_statement.empty() || reference_summary.empty() ||
      generated_summary.empty())
    throw std::invalid_argument("judge prompt inputs must be non-empty");
  Rng rng(item_seed);
  JudgePrompt prompt;
  prompt.reference_is_a = rng.coin();
  const std::string& a =
      prompt.reference_is_a ? reference_summary : generated_summary;
  const std::string& b =
      prompt.reference_is_a ? generated_summary : reference_summary;
  prompt.text =
      "You are judging two summaries of a VHDL design.\n"
      "Problem description:\n" +
      problem_statement +
      "\n\nSummary A:\n" + a + "\n\nSummary B:\n" + b +
      "\n\nWhich summary better captures the described functionality? "
      "Answer with the single letter A or B.";
  return prompt;
}

std::string build_judge_prompt_xform(const std::string& original_code,
                                     const std::string& original_summary,
                                     const std::string& transformed_summary) {
  if (original_code.empty() || original_summary.empty() ||
      transformed_summary.empty())
    throw std::invalid_argument("judge prompt inputs must be non-empty");
  return "Original VHDL code:\n" + original_code +
         "\n\nSummary of the original code:\n" + original_summary +
         "\n\nCandidate summary of a transformed version of this code:\n" +
         transformed_summary +
         "\n\nDoes the candidate summary describe the same functionality as "
         "the original code and its summary? Answer yes or no.";
}

PreferenceRate preference_rate(const std::vector<PreferenceRecord>& records) {
  PreferenceRate rate;
  rate.total = static_cast<int>(records.size());
  if (records.empty()) {
    rate.empty_input = true;
    return rate;
  }
  for (const auto& record : records) {
    if (record.verdict == PreferenceVerdict::Preferred) ++rate.preferred;
  }
  rate.percent = 100.0 * static_cast<double>(rate.preferred) /
                 static_cast<double>(rate.total);
  return rate;
}

}  // namespace vcodes::metrics
