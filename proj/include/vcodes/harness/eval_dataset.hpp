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

#ifndef VCODES_HARNESS_EVAL_DATASET_HPP
#define VCODES_HARNESS_EVAL_DATASET_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace vcodes::harness {

// One evaluation problem. All eight fields are required; task_id is
// "<source>/<identifier>" (e.g. "tutorial/ripple_carry_adder").
struct EvalTask {
  std::string task_id;
  std::string declaration;
  std::string problem_statement;
  std::string short_description;
  std::string long_description;
  std::string prompt;
  std::string canonical_solution;
  std::string testbench;
};

struct SchemaError : std::runtime_error {
  SchemaError(int line_, const std::string& detail_)
      : std::runtime_error("schema error at line " + std::to_string(line_) +
                           ": " + detail_),
        line(line_),
        detail(detail_) {}
  int line;
  std::string detail;
};

/// Line-delimited JSON records, validated against the eight-field schema.
std::vector<EvalTask> parse_eval_dataset(const std::string& text);
std::vector<EvalTask> load_eval_dataset(const std::string& path);
void write_eval_dataset(const std::string& path,
                        const std::vector<EvalTask>& tasks);
std::string eval_task_to_json(const EvalTask& task);

/// Content hash used to stamp reports with the datasets they measured.
std::string dataset_fingerprint(const std::string& file_content);

}  // namespace vcodes::harness

#endif  // VCODES_HARNESS_EVAL_DATASET_HPP
