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

#ifndef VCODES_HARNESS_REPORT_HPP
#define VCODES_HARNESS_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "vcodes/metrics/metrics.hpp"

namespace vcodes::harness {

struct ReportDoc {
  std::vector<metrics::MetricReportRow> rows;
  std::map<std::string, std::string> dataset_fingerprints;
  uint64_t seed = 0;
  std::string provider;
};

/// Markdown table, one row per model:
/// Model | Pass@1 (TB) | Pass@1 (EQ, desk-scale) | SC1 (%) | PR (%) | R_L |
/// PR-xform (%). R_L values are stored in [0,1] and rendered x100.
std::string render_markdown(const ReportDoc& doc);

/// Lossless machine format (JSON) with byte-identical round trips.
std::string render_machine(const ReportDoc& doc);
ReportDoc parse_machine(const std::string& text);

}  // namespace vcodes::harness

#endif  // VCODES_HARNESS_REPORT_HPP
