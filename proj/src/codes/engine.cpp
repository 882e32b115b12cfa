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

#include <chrono>

#include "vcodes/util/strutil.hpp"
#include "vcodes/vhdl/outline.hpp"
#include "vcodes/vhdl/parser.hpp"
#include "vcodes/vhdl/printer.hpp"

namespace vcodes::codes {

namespace {

int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void log_prompt(std::vector<PromptBundle>* log, std::string text, Stage stage,
                Task task) {
  if (log != nullptr) log->push_back({std::move(text), stage, task});
}

}  // namespace

std::string generation_plan_prompt(const std::string& problem_statement) {
  return "Generate a plan specifying the intermediate steps to " +
         problem_statement;
}

std::string line_explanation_prompt(const std::string& code_context,
                                    const std::string& code_line) {
  return code_context +
         "\nExplain the following line of code given the context above:\n" +
         code_line;
}

std::string single_step_generation_prompt(const std::string& problem_statement) {
  return "Generate a plan to " + problem_statement +
         ", then provide the final VHDL code";
}

std::string single_step_summarization_prompt(const std::string& code) {
  return "Generate a plan to summarize the following VHDL code, then provide "
         "the final summary.\n" +
         code;
}

std::string zero_shot_summarization_prompt(const std::string& code) {
  return "Summarize the following VHDL code:\n" + code;
}

std::string description_to_code_prompt(const std::string& description) {
  return "Generate VHDL code for the following description:\n" + description;
}

std::string multi_step_execution_prompt(const std::string& original_input,
                                        const Plan& plan, Task task) {
  if (plan.empty()) return original_input;  // degrade to the zero-shot prompt
  std::string prompt = original_input + "\nFollow these steps:\n";
  for (const auto& step : plan.steps)
    prompt += std::to_string(step.index) + ". " + step.text + "\n";
  prompt += task == Task::Generate ? "Provide the final VHDL code."
                                   : "Provide the final summary.";
  return prompt;
}

std::string formulate_generation_plan(const std::string& problem_statement,
                                      llm::Gateway& gateway,
                                      const llm::SamplingParams& sampling,
                                      std::vector<PromptBundle>* prompt_log) {
  std::string prompt = generation_plan_prompt(problem_statement);
  log_prompt(prompt_log, prompt, Stage::Formulate, Task::Generate);
  return gateway.complete(prompt, sampling).text;
}

std::vector<std::string> formulate_summarization_plan_lines(
    const std::string& code, llm::Gateway& gateway,
    const llm::SamplingParams& sampling, std::vector<PromptBundle>* prompt_log,
    std::vector<std::string>* errors) {
  std::vector<std::string> lines = split_lines(code);
  std::vector<std::string> steps;
  std::string context;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string trimmed = trim(lines[i]);
    bool skip = trimmed.empty() || trimmed.rfind("--", 0) == 0;
    if (!skip) {
      std::string prompt = line_explanation_prompt(context, lines[i]);
      log_prompt(prompt_log, prompt, Stage::Formulate, Task::Summarize);
      try {
        steps.push_back(gateway.complete(prompt, sampling).text);
      } catch (const llm::ProviderError& error) {
        steps.push_back("");
        if (errors != nullptr)
          errors->push_back("line " + std::to_string(i + 1) + ": " +
                            error.what());
      }
    }
    if (!context.empty()) context += "\n";
    context += lines[i];
  }
  return steps;
}

namespace {

std::optional<std::string> ast_row_prompt(const vhdl::DesignFile& design,
                                          const vhdl::OutlineRow& row) {
  using vhdl::OutlineKind;
  std::string body;
  switch (row.kind) {
    case OutlineKind::Entity:
      body = "Explain the purpose of the entity named \"" + row.name +
             "\" along with its port information.";
      break;
    case OutlineKind::Architecture:
      body = "Explain the functionality and behavior implemented in the "
             "architecture named \"" +
             row.name + "\" for the entity \"" + row.parent_name.value_or("") +
             "\".";
      break;
    case OutlineKind::Process:
      body = "Explain the behavior within the process named \"" + row.name +
             "\".";
      break;
    case OutlineKind::Component:
      body = "Explain the role and instantiation details of the component \"" +
             row.name + "\" in the architecture \"" +
             row.parent_name.value_or("") + "\".";
      break;
    case OutlineKind::Procedure:
      body = "Explain the functionality of the procedure named \"" + row.name +
             "\" and its intended functionality.";
      break;
    case OutlineKind::Function:
      body = "Explain the purpose and return value of the function named \"" +
             row.name + "\".";
      break;
    default:
      return std::nullopt;
  }
  std::string source = vhdl::outline_node_source(design, row);
  if (source.empty()) return body;
  return source + "\n" + body;
}

}  // namespace

std::vector<std::string> formulate_summarization_plan_ast(
    const vhdl::DesignFile& design, llm::Gateway& gateway,
    const llm::SamplingParams& sampling, std::vector<PromptBundle>* prompt_log,
    std::vector<std::string>* errors) {
  std::vector<std::string> steps;
  for (const auto& row : vhdl::ast_outline(design)) {
    std::optional<std::string> prompt = ast_row_prompt(design, row);
    if (!prompt) continue;  // rows without a template are skipped
    log_prompt(prompt_log, *prompt, Stage::Formulate, Task::Summarize);
    try {
      steps.push_back(gateway.complete(*prompt, sampling).text);
    } catch (const llm::ProviderError& error) {
      steps.push_back("");
      if (errors != nullptr)
        errors->push_back(std::string(outline_kind_name(row.kind)) + " " +
                          row.name + ": " + error.what());
    }
  }
  return steps;
}

CodesResult execute_multi_step(const std::string& original_input,
                               const Plan& plan, Task task,
                               llm::Gateway& gateway,
                               const llm::SamplingParams& sampling) {
  CodesResult result;
  result.task = task;
  result.mode = ExecutionMode::MultiStep;
  result.plan = plan;
  std::string prompt = multi_step_execution_prompt(original_input, plan, task);
  result.prompt_log.push_back({prompt, Stage::Execute, task});
  int64_t start = now_ms();
  result.final_response = gateway.complete(prompt, sampling).text;
  result.timings_ms["execute"] = now_ms() - start;
  if (task == Task::Generate)
    result.extracted_code = extract_code(result.final_response);
  return result;
}

CodesResult execute_single_step(const std::string& problem_statement, Task task,
                                llm::Gateway& gateway,
                                const llm::SamplingParams& sampling) {
  CodesResult result;
  result.task = task;
  result.mode = ExecutionMode::SingleStep;
  std::string prompt = task == Task::Generate
                           ? single_step_generation_prompt(problem_statement)
                           : single_step_summarization_prompt(problem_statement);
  result.prompt_log.push_back({prompt, Stage::Combined, task});
  int64_t start = now_ms();
  result.final_response = gateway.complete(prompt, sampling).text;
  result.timings_ms["combined"] = now_ms() - start;
  // The plan is recovered from the response for logging only.
  result.plan = refine_plan(
      result.final_response, [] { return std::string(); },
      task == Task::Generate ? PlanSource::Generation
                             : PlanSource::SummarizationLines);
  if (task == Task::Generate)
    result.extracted_code = extract_code(result.final_response);
  return result;
}

std::optional<std::string> extract_code(const std::string& response) {
  size_t fence = response.find("```");
  if (fence != std::string::npos) {
    size_t line_end = response.find('\n', fence + 3);
    if (line_end != std::string::npos) {
      size_t close = response.find("```", line_end + 1);
      if (close != std::string::npos) {
        std::string body = response.substr(line_end + 1, close - line_end - 1);
        while (!body.empty() && (body.back() == '\n' || body.back() == '\r'))
          body.pop_back();
        if (!body.empty()) return body;
      }
    }
  }
  std::vector<std::string> lines = split_lines(response);
  size_t offset = 0;
  for (const auto& line : lines) {
    std::string lowered = to_lower(trim(line));
    if (lowered.rfind("library ", 0) == 0 || lowered.rfind("entity ", 0) == 0 ||
        lowered.rfind("architecture ", 0) == 0) {
      size_t start = response.find(line, offset);
      if (start != std::string::npos) {
        std::string body = response.substr(start);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
          body.pop_back();
        return body;
      }
    }
    offset += line.size() + 1;
  }
  return std::nullopt;
}

CodesResult run_generation(const GenerationRequest& request,
                           llm::Gateway& gateway) {
  if (request.mode == ExecutionMode::SingleStep) {
    return execute_single_step(request.problem_statement, Task::Generate,
                               gateway, request.sampling);
  }
  llm::SamplingParams plan_sampling = request.use_plan_profile
                                          ? llm::plan_formulation_profile()
                                          : request.sampling;
  std::vector<PromptBundle> prompts;
  int64_t start = now_ms();
  std::string raw = formulate_generation_plan(request.problem_statement,
                                              gateway, plan_sampling, &prompts);
  int64_t formulated = now_ms();
  Plan plan = refine_plan(
      raw,
      [&] {
        return formulate_generation_plan(request.problem_statement, gateway,
                                         plan_sampling, &prompts);
      },
      PlanSource::Generation, request.refine);
  int64_t refined = now_ms();
  CodesResult result = execute_multi_step(request.original_input, plan,
                                          Task::Generate, gateway,
                                          request.sampling);
  result.prompt_log.insert(result.prompt_log.begin(), prompts.begin(),
                           prompts.end());
  result.timings_ms["formulate"] = formulated - start;
  result.timings_ms["refine"] = refined - formulated;
  return result;
}

CodesResult run_summarization(const SummarizationRequest& request,
                              llm::Gateway& gateway) {
  if (request.mode == ExecutionMode::SingleStep) {
    if (request.granularity == SummarizationGranularity::AstGuided)
      vhdl::parse(request.code);  // AST mode requires parseable input
    return execute_single_step(request.code, Task::Summarize, gateway,
                               request.sampling);
  }
  std::vector<PromptBundle> prompts;
  std::vector<std::string> errors;
  int64_t start = now_ms();
  std::vector<std::string> raw_steps;
  PlanSource source;
  if (request.granularity == SummarizationGranularity::AstGuided) {
    vhdl::DesignFile design = vhdl::parse(request.code);
    raw_steps = formulate_summarization_plan_ast(design, gateway,
                                                 request.sampling, &prompts,
                                                 &errors);
    source = PlanSource::SummarizationAst;
  } else {
    raw_steps = formulate_summarization_plan_lines(request.code, gateway,
                                                   request.sampling, &prompts,
                                                   &errors);
    source = PlanSource::SummarizationLines;
  }
  int64_t formulated = now_ms();
  Plan plan = refine_steps(raw_steps, source, request.refine);
  CodesResult result = execute_multi_step(request.code, plan, Task::Summarize,
                                          gateway, request.sampling);
  result.prompt_log.insert(result.prompt_log.begin(), prompts.begin(),
                           prompts.end());
  result.errors = std::move(errors);
  result.timings_ms["formulate"] = formulated - start;
  return result;
}

}  // namespace vcodes::codes
