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

#include "vcodes/codes/refine.hpp"

#include <regex>

#include "vcodes/util/strutil.hpp"

namespace vcodes::codes {

const char* execution_mode_name(ExecutionMode mode) {
  return mode == ExecutionMode::SingleStep ? "single" : "multi";
}
const char* task_name(Task task) {
  return task == Task::Generate ? "generate" : "summarize";
}
const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::Formulate: return "formulate";
    case Stage::Execute: return "execute";
    case Stage::Combined: return "combined";
  }
  return "?";
}
const char* plan_source_name(PlanSource source) {
  switch (source) {
    case PlanSource::Generation: return "generation";
    case PlanSource::SummarizationLines: return "summarization_lines";
    case PlanSource::SummarizationAst: return "summarization_ast";
  }
  return "?";
}

RefineOptions RefineOptions::defaults() {
  RefineOptions options;
  options.boilerplate_patterns = {
      R"(answer\s*:)",
      R"(sure[,.!]?)",
      R"(here is a step-by-step approach\s*[.:]*)",
      R"(here's a step-by-step approach\s*[.:]*)",
      R"(here is the implementation in vhdl\s*[.:]*)",
      R"(here is the plan\s*[.:]*)",
      R"(here is a plan\s*[.:]*)",
      R"(here are the steps\s*[.:]*)",
  };
  return options;
}

std::string strip_boilerplate(const std::string& raw,
                              const RefineOptions& options) {
  std::string text = raw;
  bool changed = true;
  while (changed) {
    changed = false;
    size_t ws = 0;
    while (ws < text.size() &&
           std::isspace(static_cast<unsigned char>(text[ws])))
      ++ws;
    if (ws > 0) {
      text.erase(0, ws);
      changed = true;
    }
    for (const auto& pattern : options.boilerplate_patterns) {
      std::regex re(pattern, std::regex::icase);
      std::smatch match;
      if (std::regex_search(text, match, re,
                            std::regex_constants::match_continuous)) {
        text.erase(0, static_cast<size_t>(match.length(0)));
        changed = true;
        break;
      }
    }
  }
  return text;
}

std::string clean_step_text(const std::string& text) {
  static const std::regex kStepMarker(R"(^\s*step\s*\d+\s*[:.)\-]*\s*)",
                                      std::regex::icase);
  static const std::regex kEnumMarker(R"(^\s*\d+\s*[.)]\s*)");
  static const std::regex kBullet(R"(^\s*[-*]\s*)");
  std::string out = text;
  for (int round = 0; round < 3; ++round) {
    std::smatch match;
    if (std::regex_search(out, match, kStepMarker,
                          std::regex_constants::match_continuous)) {
      out.erase(0, static_cast<size_t>(match.length(0)));
      continue;
    }
    if (std::regex_search(out, match, kEnumMarker,
                          std::regex_constants::match_continuous)) {
      out.erase(0, static_cast<size_t>(match.length(0)));
      continue;
    }
    if (std::regex_search(out, match, kBullet,
                          std::regex_constants::match_continuous)) {
      out.erase(0, static_cast<size_t>(match.length(0)));
      continue;
    }
    break;
  }
  return collapse_ws(out);
}

namespace {

std::vector<std::string> cleaned_nonempty(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::string text = clean_step_text(item);
    if (!text.empty()) out.push_back(std::move(text));
  }
  return out;
}

}  // namespace

std::vector<std::string> extract_steps(const std::string& cleaned) {
  // (a) an opening line ending in a colon: the remainder is the step list.
  static const std::regex kColonNewline(R"(^[^\n]*:[ \t]*\r?\n)");
  std::smatch match;
  if (std::regex_search(cleaned, match, kColonNewline,
                        std::regex_constants::match_continuous)) {
    std::string remainder =
        cleaned.substr(static_cast<size_t>(match.position(0) + match.length(0)));
    std::vector<std::string> lines;
    for (auto& line : split_lines(remainder)) {
      if (!trim(line).empty()) lines.push_back(line);
    }
    std::vector<std::string> steps = cleaned_nonempty(lines);
    if (!steps.empty()) return steps;
  }

  std::vector<std::string> lines = split_lines(cleaned);

  // (b) explicit "Step <n>" markers.
  static const std::regex kStepLine(R"(^\s*step\s*\d+)", std::regex::icase);
  std::vector<std::string> marked;
  for (const auto& line : lines) {
    if (std::regex_search(line, kStepLine,
                          std::regex_constants::match_continuous))
      marked.push_back(line);
  }
  if (!marked.empty()) {
    std::vector<std::string> steps = cleaned_nonempty(marked);
    if (!steps.empty()) return steps;
  }

  // (c) "<n>." enumeration.
  static const std::regex kEnumLine(R"(^\s*\d+\.)");
  marked.clear();
  for (const auto& line : lines) {
    if (std::regex_search(line, kEnumLine,
                          std::regex_constants::match_continuous))
      marked.push_back(line);
  }
  if (!marked.empty()) {
    std::vector<std::string> steps = cleaned_nonempty(marked);
    if (!steps.empty()) return steps;
  }

  // (d) plain newline split; a single line is prose, not a plan.
  std::vector<std::string> nonempty;
  for (const auto& line : lines) {
    if (!trim(line).empty()) nonempty.push_back(line);
  }
  if (nonempty.size() >= 2) {
    std::vector<std::string> steps = cleaned_nonempty(nonempty);
    if (steps.size() >= 2) return steps;
  }
  return {};
}

Plan refine_plan(const std::string& raw,
                 const std::function<std::string()>& resample,
                 PlanSource source, const RefineOptions& options) {
  Plan plan;
  plan.source = source;
  std::string raw_text = raw;
  for (int attempt = 1; attempt <= 3; ++attempt) {
    plan.raw_response = raw_text;
    plan.refinement_attempts = attempt;
    std::vector<std::string> steps =
        extract_steps(strip_boilerplate(raw_text, options));
    if (!steps.empty()) {
      for (size_t i = 0; i < steps.size(); ++i)
        plan.steps.push_back({static_cast<int>(i) + 1, steps[i]});
      return plan;
    }
    if (attempt < 3) raw_text = resample();
  }
  return plan;  // the Empty plan, attempts == 3
}

Plan refine_steps(const std::vector<std::string>& raw_steps, PlanSource source,
                  const RefineOptions& options) {
  Plan plan;
  plan.source = source;
  plan.refinement_attempts = 1;
  std::string raw_all;
  for (const auto& step : raw_steps) {
    if (!raw_all.empty()) raw_all += "\n";
    raw_all += step;
  }
  plan.raw_response = raw_all;
  for (const auto& raw : raw_steps) {
    std::string text = clean_step_text(strip_boilerplate(raw, options));
    if (text.empty()) continue;
    plan.steps.push_back({static_cast<int>(plan.steps.size()) + 1, text});
  }
  return plan;
}

}  // namespace vcodes::codes
