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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"
#include "vcodes/harness/eval_dataset.hpp"
#include "vcodes/llm/mock.hpp"
#include "vcodes/metrics/metrics.hpp"
#include "vcodes/util/rng.hpp"
#include "vcodes/util/strutil.hpp"

using namespace vcodes;
using namespace vcodes::metrics;

namespace {

// Brute-force oracle: fraction of k-subsets of n samples containing at least
// one of the c correct ones, by full enumeration.
double pass_at_k_oracle(int n, int c, int k) {
  std::vector<int> picks(static_cast<size_t>(k));
  long total = 0;
  long hit = 0;
  // enumerate combinations via indices
  for (int i = 0; i < k; ++i) picks[static_cast<size_t>(i)] = i;
  for (;;) {
    ++total;
    bool any = false;
    for (int index : picks)
      if (index < c) any = true;
    if (any) ++hit;
    // next combination
    int pos = k - 1;
    while (pos >= 0 && picks[static_cast<size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++picks[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      picks[static_cast<size_t>(i)] = picks[static_cast<size_t>(i - 1)] + 1;
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

// Classical full-table LCS oracle.
int lcs_oracle(const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
  std::vector<std::vector<int>> table(a.size() + 1,
                                      std::vector<int>(b.size() + 1, 0));
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      table[i][j] = a[i - 1] == b[j - 1]
                        ? table[i - 1][j - 1] + 1
                        : std::max(table[i - 1][j], table[i][j - 1]);
    }
  }
  return table[a.size()][b.size()];
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

}  // namespace

TEST_CASE("pass_at_k matches the derived examples exactly") {
  CHECK(pass_at_k({10, 3, 1}) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(pass_at_k({5, 2, 3}) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(pass_at_k({7, 7, 2}) == doctest::Approx(1.0));
  CHECK(pass_at_k({7, 0, 2}) == doctest::Approx(0.0));
}

TEST_CASE("pass_at_k agrees with exhaustive subset enumeration") {
  for (int n = 1; n <= 12; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        double expected = pass_at_k_oracle(n, c, k);
        double actual = pass_at_k({n, c, k});
        CAPTURE(n);
        CAPTURE(c);
        CAPTURE(k);
        CHECK(actual == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pass_at_k monotonicity") {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int c = 1; c <= n; ++c)
        CHECK(pass_at_k({n, c, k}) >= pass_at_k({n, c - 1, k}));
    }
    for (int c = 0; c <= n; ++c) {
      for (int k = 2; k <= n; ++k)
        CHECK(pass_at_k({n, c, k}) >= pass_at_k({n, c, k - 1}));
    }
  }
}

TEST_CASE("rouge_l fixed examples") {
  RougeScore same = rouge_l("The cat sat", "the CAT sat");
  CHECK(same.f == doctest::Approx(1.0));

  RougeScore two_thirds = rouge_l("the cat sat", "the dog sat");
  CHECK(two_thirds.lcs_length == 2);
  CHECK(two_thirds.precision == doctest::Approx(2.0 / 3.0));
  CHECK(two_thirds.recall == doctest::Approx(2.0 / 3.0));
  CHECK(two_thirds.f == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  CHECK(rouge_l("alpha beta", "gamma delta").f == doctest::Approx(0.0));
  CHECK(rouge_l("", "anything").f == doctest::Approx(0.0));
  CHECK(rouge_l("anything", "").f == doctest::Approx(0.0));
}

TEST_CASE("rouge tokenizer splits punctuation boundaries") {
  std::vector<std::string> tokens = rouge_tokenize("a+b, c_d!");
  CHECK(tokens == std::vector<std::string>{"a", "+", "b", ",", "c_d", "!"});
}

TEST_CASE("rouge_l lcs matches the DP oracle on random pairs") {
  Rng rng(99);
  const std::vector<std::string> vocab = {"clk", "counter", "the",  "adds",
                                          "bit", "signal",  "wraps", "design"};
  for (int round = 0; round < 1000; ++round) {
    std::vector<std::string> a, b;
    size_t la = rng.below(50), lb = rng.below(50);
    for (size_t i = 0; i < la; ++i) a.push_back(vocab[rng.below(vocab.size())]);
    for (size_t i = 0; i < lb; ++i) b.push_back(vocab[rng.below(vocab.size())]);
    RougeScore score = rouge_l(join_tokens(a), join_tokens(b));
    CHECK(score.lcs_length == lcs_oracle(a, b));
  }
}

TEST_CASE("rouge_l f is symmetric with beta 1") {
  Rng rng(123);
  const std::vector<std::string> vocab = {"x", "y", "z", "w"};
  for (int round = 0; round < 100; ++round) {
    std::vector<std::string> a, b;
    size_t la = 1 + rng.below(20), lb = 1 + rng.below(20);
    for (size_t i = 0; i < la; ++i) a.push_back(vocab[rng.below(vocab.size())]);
    for (size_t i = 0; i < lb; ++i) b.push_back(vocab[rng.below(vocab.size())]);
    double ab = rouge_l(join_tokens(a), join_tokens(b)).f;
    double ba = rouge_l(join_tokens(b), join_tokens(a)).f;
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  }
}

TEST_CASE("judge prompt coin is fair and deterministic") {
  JudgePrompt prompt =
      build_judge_prompt_eval("problem", "the reference", "the generated", 42);
  JudgePrompt again =
      build_judge_prompt_eval("problem", "the reference", "the generated", 42);
  CHECK(prompt.text == again.text);
  CHECK(prompt.reference_is_a == again.reference_is_a);
  CHECK(prompt.text.find("the reference") != std::string::npos);
  CHECK(prompt.text.find("the generated") != std::string::npos);
  CHECK(prompt.text.find("single letter A or B") != std::string::npos);

  int reference_a = 0;
  const int trials = 10000;
  for (int seed = 0; seed < trials; ++seed) {
    if (build_judge_prompt_eval("p", "r", "g", static_cast<uint64_t>(seed))
            .reference_is_a)
      ++reference_a;
  }
  double share = static_cast<double>(reference_a) / trials;
  CHECK(share > 0.45);
  CHECK(share < 0.55);

  CHECK_THROWS_AS(build_judge_prompt_eval("p", "r", "", 1),
                  std::invalid_argument);
}

TEST_CASE("xform judge prompt embeds all three inputs") {
  std::string prompt =
      build_judge_prompt_xform("the code", "summary one", "summary two");
  CHECK(prompt.find("the code") != std::string::npos);
  CHECK(prompt.find("summary one") != std::string::npos);
  CHECK(prompt.find("summary two") != std::string::npos);
  CHECK(prompt.find("Answer yes or no.") != std::string::npos);
  CHECK(prompt == build_judge_prompt_xform("the code", "summary one",
                                           "summary two"));
}

TEST_CASE("preference rate counts invalid in the denominator") {
  std::vector<PreferenceRecord> records;
  for (int i = 0; i < 7; ++i)
    records.push_back({"", "vhdl_eval", PreferenceVerdict::Preferred, "", 0});
  for (int i = 0; i < 3; ++i)
    records.push_back({"", "vhdl_eval", PreferenceVerdict::NotPreferred, "", 0});
  CHECK(preference_rate(records).percent == doctest::Approx(70.0));

  std::vector<PreferenceRecord> invalid(4);
  for (auto& record : invalid) record.verdict = PreferenceVerdict::Invalid;
  CHECK(preference_rate(invalid).percent == doctest::Approx(0.0));

  PreferenceRate empty = preference_rate({});
  CHECK(empty.percent == doctest::Approx(0.0));
  CHECK(empty.empty_input);
}

TEST_CASE("self-consistency over mock legs") {
  std::vector<harness::EvalTask> tasks = harness::load_eval_dataset(
      testsupport::data_dir() + "/eval_tasks.jsonl");
  std::vector<SelfConsistencyTask> sc_tasks;
  for (const auto& task : tasks)
    sc_tasks.push_back({task.task_id, task.canonical_solution});

  auto build_script = [&](bool correct_half, bool all_correct) {
    llm::MockScript script;
    for (size_t i = 0; i < tasks.size(); ++i) {
      std::string marker = "MARKER_" + std::to_string(i);
      llm::MockRule summarize;
      summarize.match = llm::MockRule::Match::Substring;
      // the entity declaration line is unique per task
      std::string entity_name = split(tasks[i].task_id, '/')[1];
      summarize.needle = "entity " + entity_name + " is";
      summarize.responses = {marker};
      script.rules.push_back(summarize);

      llm::MockRule generate;
      generate.match = llm::MockRule::Match::Substring;
      generate.needle = marker;
      bool correct = all_correct || (correct_half && i % 2 == 0);
      generate.responses = {correct ? tasks[i].canonical_solution
                                    : tasks[0].canonical_solution};
      script.rules.push_back(generate);
    }
    return script;
  };

  equiv::EquivBudget budget;
  {
    llm::MockGateway mock = llm::make_mock_gateway(build_script(false, true));
    SelfConsistencyResult result = self_consistency(
        sc_tasks, *mock.gateway, CodesMode::ZeroShot, budget);
    CHECK(result.sc1 == doctest::Approx(1.0));
    for (const auto& record : result.records) CHECK(record.sc == 1);
  }
  {
    // every regeneration returns the and2 gate: only task 0 stays consistent
    llm::MockGateway mock = llm::make_mock_gateway(build_script(false, false));
    SelfConsistencyResult result = self_consistency(
        sc_tasks, *mock.gateway, CodesMode::ZeroShot, budget);
    CHECK(result.sc1 == doctest::Approx(0.1));
  }
  {
    llm::MockGateway mock = llm::make_mock_gateway(build_script(true, false));
    SelfConsistencyResult result = self_consistency(
        sc_tasks, *mock.gateway, CodesMode::ZeroShot, budget);
    // half correct, plus task 0's "wrong" answer coincides with its canonical
    CHECK(result.sc1 == doctest::Approx(0.5).epsilon(0.11));
    double mean = 0;
    for (const auto& record : result.records) mean += record.sc;
    mean /= static_cast<double>(result.records.size());
    CHECK(result.sc1 == doctest::Approx(mean));
  }
}
