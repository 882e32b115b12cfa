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

#include "vcodes/harness/eval_dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vcodes/util/strutil.hpp"

namespace vcodes::harness {

namespace {

const std::set<std::string>& schema_fields() {
  static const std::set<std::string> kFields = {
      "task_id",          "declaration",       "problem_statement",
      "short_description", "long_description", "prompt",
      "canonical_solution", "testbench",
  };
  return kFields;
}

}  // namespace

std::vector<EvalTask> parse_eval_dataset(const std::string& text) {
  std::vector<EvalTask> tasks;
  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError(line_no, "record is not an object");
    for (const auto& field : schema_fields()) {
      if (!doc.contains(field))
        throw SchemaError(line_no, "missing field \"" + field + "\"");
      if (!doc[field].is_string())
        throw SchemaError(line_no, "field \"" + field + "\" is not a string");
    }
    for (const auto& [key, value] : doc.items()) {
      (void)value;
      if (schema_fields().count(key) == 0)
        throw SchemaError(line_no, "extra field \"" + key + "\"");
    }
    EvalTask task;
    task.task_id = doc["task_id"].get<std::string>();
    task.declaration = doc["declaration"].get<std::string>();
    task.problem_statement = doc["problem_statement"].get<std::string>();
    task.short_description = doc["short_description"].get<std::string>();
    task.long_description = doc["long_description"].get<std::string>();
    task.prompt = doc["prompt"].get<std::string>();
    task.canonical_solution = doc["canonical_solution"].get<std::string>();
    task.testbench = doc["testbench"].get<std::string>();
    if (task.task_id.find('/') == std::string::npos)
      throw SchemaError(line_no, "task_id must be \"<source>/<identifier>\"");
    tasks.push_back(std::move(task));
  }
  return tasks;
}

std::vector<EvalTask> load_eval_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_eval_dataset(buffer.str());
}

std::string eval_task_to_json(const EvalTask& task) {
  nlohmann::json doc;
  doc["task_id"] = task.task_id;
  doc["declaration"] = task.declaration;
  doc["problem_statement"] = task.problem_statement;
  doc["short_description"] = task.short_description;
  doc["long_description"] = task.long_description;
  doc["prompt"] = task.prompt;
  doc["canonical_solution"] = task.canonical_solution;
  doc["testbench"] = task.testbench;
  return doc.dump();
}

void write_eval_dataset(const std::string& path,
                        const std::vector<EvalTask>& tasks) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset: " + path);
  for (const auto& task : tasks) out << eval_task_to_json(task) << "\n";
}

std::string dataset_fingerprint(const std::string& file_content) {
  return "fnv1a64:" + fnv1a64_hex(file_content);
}

}  // namespace vcodes::harness
