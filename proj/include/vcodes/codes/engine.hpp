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

#ifndef VCODES_CODES_ENGINE_HPP
#define VCODES_CODES_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "vcodes/codes/refine.hpp"
#include "vcodes/llm/gateway.hpp"
#include "vcodes/vhdl/ast.hpp"

namespace vcodes::codes {

enum class SummarizationGranularity { LineByLine, AstGuided };

// ---- prompt templates (pure builders, placeholder substitution only) ----

std::string generation_plan_prompt(const std::string& problem_statement);
std::string line_explanation_prompt(const std::string& code_context,
                                    const std::string& code_line);
std::string single_step_generation_prompt(const std::string& problem_statement);
std::string single_step_summarization_prompt(const std::string& code);
std::string multi_step_execution_prompt(const std::string& original_input,
                                        const Plan& plan, Task task);
std::string zero_shot_summarization_prompt(const std::string& code);
std::string description_to_code_prompt(const std::string& description);

// ---- operations ----

/// Sends the plan-formulation template for `problem_statement` and returns
/// the raw completion text.
std::string formulate_generation_plan(const std::string& problem_statement,
                                      llm::Gateway& gateway,
                                      const llm::SamplingParams& sampling,
                                      std::vector<PromptBundle>* prompt_log);

/// One prompt per non-blank, non-comment line, context = all prior lines.
/// Failed lines yield empty step texts and an entry in `errors`.
std::vector<std::string> formulate_summarization_plan_lines(
    const std::string& code, llm::Gateway& gateway,
    const llm::SamplingParams& sampling, std::vector<PromptBundle>* prompt_log,
    std::vector<std::string>* errors);

/// One prompt per outline row with a matching template, prefixed by the
/// pretty-printed source of the node.
std::vector<std::string> formulate_summarization_plan_ast(
    const vhdl::DesignFile& design, llm::Gateway& gateway,
    const llm::SamplingParams& sampling, std::vector<PromptBundle>* prompt_log,
    std::vector<std::string>* errors);

CodesResult execute_multi_step(const std::string& original_input,
                               const Plan& plan, Task task,
                               llm::Gateway& gateway,
                               const llm::SamplingParams& sampling);

CodesResult execute_single_step(const std::string& problem_statement, Task task,
                                llm::Gateway& gateway,
                                const llm::SamplingParams& sampling);

/// First fenced code block; else text from the first line starting with
/// `library`/`entity`/`architecture` to the end; else absent.
std::optional<std::string> extract_code(const std::string& response);

struct GenerationRequest {
  std::string problem_statement;  // feeds plan formulation
  std::string original_input;     // execution context (the task prompt)
  ExecutionMode mode = ExecutionMode::MultiStep;
  bool use_plan_profile = false;  // alternate sampling for formulation
  llm::SamplingParams sampling;
  RefineOptions refine = RefineOptions::defaults();
};
CodesResult run_generation(const GenerationRequest& request,
                           llm::Gateway& gateway);

struct SummarizationRequest {
  std::string code;
  SummarizationGranularity granularity = SummarizationGranularity::LineByLine;
  ExecutionMode mode = ExecutionMode::MultiStep;
  llm::SamplingParams sampling;
  RefineOptions refine = RefineOptions::defaults();
};
CodesResult run_summarization(const SummarizationRequest& request,
                              llm::Gateway& gateway);

}  // namespace vcodes::codes

#endif  // VCODES_CODES_ENGINE_HPP
