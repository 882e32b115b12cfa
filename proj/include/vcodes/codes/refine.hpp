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

#ifndef VCODES_CODES_REFINE_HPP
#define VCODES_CODES_REFINE_HPP

#include <functional>
#include <string>
#include <vector>

#include "vcodes/codes/plan.hpp"

namespace vcodes::codes {

// Boilerplate prefixes are stripped iteratively, case-insensitively, before
// step extraction. The list is configuration; these are the defaults.
struct RefineOptions {
  std::vector<std::string> boilerplate_patterns;
  static RefineOptions defaults();
};

std::string strip_boilerplate(const std::string& raw,
                              const RefineOptions& options);

// Step extraction, first matching rule wins:
//   (a) text after an opening line ending in a colon, split on newlines
//   (b) lines with "Step <n>" markers
//   (c) lines with "<n>." enumeration
//   (d) split on newlines (needs at least two non-empty lines to count as a
//       plan; a single prose blob is not one)
std::vector<std::string> extract_steps(const std::string& cleaned);

// Strips leading enumeration markers/bullets and collapses whitespace.
std::string clean_step_text(const std::string& text);

/// Refines a raw plan. `resample` supplies fresh raw text when no rule
/// matches; after 3 total attempts the Empty plan is returned.
Plan refine_plan(const std::string& raw,
                 const std::function<std::string()>& resample,
                 PlanSource source = PlanSource::Generation,
                 const RefineOptions& options = RefineOptions::defaults());

/// Refinement for plans already structured as one raw text per step
/// (summarization): each step is cleaned, empties dropped.
Plan refine_steps(const std::vector<std::string>& raw_steps, PlanSource source,
                  const RefineOptions& options = RefineOptions::defaults());

}  // namespace vcodes::codes

#endif  // VCODES_CODES_REFINE_HPP
