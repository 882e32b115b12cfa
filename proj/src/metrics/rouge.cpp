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

#include <algorithm>
#include <cctype>

#include "vcodes/metrics/metrics.hpp"

namespace vcodes::metrics {

std::vector<std::string> rouge_tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  auto is_word = [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  };
  enum class Mode { None, Word, Punct } mode = Mode::None;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      flush();
      mode = Mode::None;
      continue;
    }
    Mode next = is_word(c) ? Mode::Word : Mode::Punct;
    if (next != mode) flush();
    mode = next;
    current += static_cast<char>(std::tolower(c));
  }
  flush();
  return tokens;
}

namespace {

// Two-row LCS so long summaries stay cheap.
int lcs_length(const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> prev(b.size() + 1, 0);
  std::vector<int> row(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) {
        row[j] = prev[j - 1] + 1;
      } else {
        row[j] = std::max(prev[j], row[j - 1]);
      }
    }
    std::swap(prev, row);
  }
  return prev[b.size()];
}

}  // namespace

RougeScore rouge_l(const std::string& candidate, const std::string& reference,
                   double beta) {
  RougeScore score;
  std::vector<std::string> cand = rouge_tokenize(candidate);
  std::vector<std::string> ref = rouge_tokenize(reference);
  if (cand.empty() || ref.empty()) return score;
  score.lcs_length = lcs_length(cand, ref);
  if (score.lcs_length == 0) return score;
  score.precision = static_cast<double>(score.lcs_length) /
                    static_cast<double>(cand.size());
  score.recall = static_cast<double>(score.lcs_length) /
                 static_cast<double>(ref.size());
  double b2 = beta * beta;
  score.f = (1.0 + b2) * score.precision * score.recall /
            (score.recall + b2 * score.precision);
  return score;
}

}  // namespace vcodes::metrics
