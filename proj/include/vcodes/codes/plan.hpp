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

#ifndef VCODES_CODES_PLAN_HPP
#define VCODES_CODES_PLAN_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vcodes::codes {

enum class PlanSource { Generation, SummarizationLines, SummarizationAst };
enum class ExecutionMode { SingleStep, MultiStep };
enum class Task { Generate, Summarize };
enum class Stage { Formulate, Execute, Combined };

struct PlanStep {
  int index = 1;  // 1-based
  std::string text;
};

// Ordered intermediate descriptive steps. The empty plan is the designated
// failure value after refinement gives up.
struct Plan {
  std::vector<PlanStep> steps;
  PlanSource source = PlanSource::Generation;
  std::string raw_response;
  int refinement_attempts = 1;

  bool empty() const { return steps.empty(); }
};

struct PromptBundle {
  std::string text;
  Stage stage;
  Task task;
};

struct CodesResult {
  Task task = Task::Generate;
  ExecutionMode mode = ExecutionMode::MultiStep;
  Plan plan;
  std::string final_response;
  std::optional<std::string> extracted_code;  // generation only
  std::vector<PromptBundle> prompt_log;       // every prompt sent, in order
  std::map<std::string, int64_t> timings_ms;  // per-stage durations
  std::vector<std::string> errors;            // per-step failures, if any
};

const char* execution_mode_name(ExecutionMode mode);
const char* task_name(Task task);
const char* stage_name(Stage stage);
const char* plan_source_name(PlanSource source);

}  // namespace vcodes::codes

#endif  // VCODES_CODES_PLAN_HPP
