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

#include "vcodes/codes/engine.hpp"
#include "vcodes/metrics/metrics.hpp"

namespace vcodes::metrics {

namespace {

std::string summarize_leg(const std::string& code, llm::Gateway& gateway,
                          CodesMode mode, const llm::SamplingParams& sampling) {
  switch (mode) {
    case CodesMode::ZeroShot:
      return gateway.complete(codes::zero_shot_summarization_prompt(code),
                              sampling)
          .text;
    case CodesMode::Single:
      return codes::execute_single_step(code, codes::Task::Summarize, gateway,
                                        sampling)
          .final_response;
    case CodesMode::Multi: {
      codes::SummarizationRequest request;
      request.code = code;
      request.granularity = codes::SummarizationGranularity::LineByLine;
      request.mode = codes::ExecutionMode::MultiStep;
      request.sampling = sampling;
      return codes::run_summarization(request, gateway).final_response;
    }
  }
  return "";
}

std::optional<std::string> generate_leg(const std::string& summary,
                                        llm::Gateway& gateway, CodesMode mode,
                                        const llm::SamplingParams& sampling) {
  switch (mode) {
    case CodesMode::ZeroShot: {
      std::string response =
          gateway.complete(codes::description_to_code_prompt(summary), sampling)
              .text;
      return codes::extract_code(response);
    }
    case CodesMode::Single: {
      codes::CodesResult result = codes::execute_single_step(
          "implement the following description:\n" + summary,
          codes::Task::Generate, gateway, sampling);
      return result.extracted_code;
    }
    case CodesMode::Multi: {
      codes::GenerationRequest request;
      request.problem_statement =
          "implement the following description:\n" + summary;
      request.original_input = codes::description_to_code_prompt(summary);
      request.mode = codes::ExecutionMode::MultiStep;
      request.sampling = sampling;
      return codes::run_generation(request, gateway).extracted_code;
    }
  }
  return std::nullopt;
}

}  // namespace

SelfConsistencyResult self_consistency(
    const std::vector<SelfConsistencyTask>& tasks, llm::Gateway& gateway,
    CodesMode mode, const equiv::EquivBudget& budget,
    const llm::SamplingParams& sampling) {
  SelfConsistencyResult result;
  for (const auto& task : tasks) {
    SelfConsistencyRecord record;
    record.task_id = task.task_id;
    record.pl0 = task.canonical_solution;
    try {
      record.nl0 = summarize_leg(task.canonical_solution, gateway, mode,
                                 sampling);
      if (record.nl0.empty()) {
        record.failure_reason = "empty summary";
      } else {
        std::optional<std::string> pl1 =
            generate_leg(record.nl0, gateway, mode, sampling);
        if (!pl1 || pl1->empty()) {
          record.failure_reason = "no code extracted from regeneration";
        } else {
          record.pl1 = *pl1;
          record.verdict_detail =
              equiv::check_source_equivalence(record.pl0, record.pl1, budget);
          record.sc = record.verdict_detail.equivalent() ? 1 : 0;
          if (record.verdict_detail.kind ==
              equiv::EquivalenceVerdict::Kind::Unknown)
            record.failure_reason =
                std::string("equivalence unknown: ") +
                record.verdict_detail.detail;
        }
      }
    } catch (const llm::ProviderError& error) {
      record.failure_reason = error.what();
    } catch (const vhdl::ParseError& error) {
      record.failure_reason = error.what();
    }
    result.records.push_back(std::move(record));
  }
  if (!result.records.empty()) {
    int sum = 0;
    for (const auto& record : result.records) sum += record.sc;
    result.sc1 = static_cast<double>(sum) /
                 static_cast<double>(result.records.size());
  }
  return result;
}

}  // namespace vcodes::metrics
