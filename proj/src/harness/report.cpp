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

#include "vcodes/harness/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace vcodes::harness {

namespace {

std::string fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

std::string cell(const std::optional<double>& value, int decimals,
                 double scale = 1.0) {
  if (!value) return "-";
  return fixed(*value * scale, decimals);
}

void put_optional(nlohmann::json& doc, const char* key,
                  const std::optional<double>& value) {
  if (value) {
    doc[key] = *value;
  } else {
    doc[key] = nullptr;
  }
}

std::optional<double> get_optional(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return doc[key].get<double>();
}

}  // namespace

std::string render_markdown(const ReportDoc& doc) {
  if (doc.rows.empty())
    throw std::invalid_argument("report requires at least one row");
  std::string out =
      "| Model | Pass@1 (TB) | Pass@1 (EQ, desk-scale) | SC1 (%) | PR (%) | "
      "R_L | PR-xform (%) |\n"
      "| --- | --- | --- | --- | --- | --- | --- |\n";
  for (const auto& row : doc.rows) {
    out += "| " + row.model_id + " | " + cell(row.pass1_tb, 3) + " | " +
           cell(row.pass1_eq, 3) + " | " + cell(row.sc1_percent, 1) + " | " +
           cell(row.pr_eval_percent, 1) + " | " +
           cell(row.rouge_l_xform, 2, 100.0) + " | " +
           cell(row.pr_xform_percent, 1) + " |\n";
  }
  if (!doc.dataset_fingerprints.empty()) {
    out += "\nDatasets:";
    for (const auto& [name, fingerprint] : doc.dataset_fingerprints)
      out += " " + name + "=" + fingerprint;
    out += "\n";
  }
  return out;
}

std::string render_machine(const ReportDoc& doc) {
  if (doc.rows.empty())
    throw std::invalid_argument("report requires at least one row");
  nlohmann::json root;
  root["seed"] = doc.seed;
  root["provider"] = doc.provider;
  root["dataset_fingerprints"] = doc.dataset_fingerprints;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : doc.rows) {
    nlohmann::json r;
    r["model_id"] = row.model_id;
    put_optional(r, "pass1_tb", row.pass1_tb);
    put_optional(r, "pass1_eq", row.pass1_eq);
    put_optional(r, "sc1_percent", row.sc1_percent);
    put_optional(r, "pr_eval_percent", row.pr_eval_percent);
    put_optional(r, "rouge_l_xform", row.rouge_l_xform);
    put_optional(r, "pr_xform_percent", row.pr_xform_percent);
    rows.push_back(std::move(r));
  }
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

ReportDoc parse_machine(const std::string& text) {
  nlohmann::json root = nlohmann::json::parse(text);
  ReportDoc doc;
  doc.seed = root.value("seed", uint64_t{0});
  doc.provider = root.value("provider", "");
  if (root.contains("dataset_fingerprints")) {
    for (const auto& [key, value] : root["dataset_fingerprints"].items())
      doc.dataset_fingerprints[key] = value.get<std::string>();
  }
  for (const auto& r : root.value("rows", nlohmann::json::array())) {
    metrics::MetricReportRow row;
    row.model_id = r.value("model_id", "");
    row.pass1_tb = get_optional(r, "pass1_tb");
    row.pass1_eq = get_optional(r, "pass1_eq");
    row.sc1_percent = get_optional(r, "sc1_percent");
    row.pr_eval_percent = get_optional(r, "pr_eval_percent");
    row.rouge_l_xform = get_optional(r, "rouge_l_xform");
    row.pr_xform_percent = get_optional(r, "pr_xform_percent");
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

}  // namespace vcodes::harness
