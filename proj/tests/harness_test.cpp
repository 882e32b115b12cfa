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

#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "vcodes/harness/eval_dataset.hpp"
#include "vcodes/harness/eval_runner.hpp"
#include "vcodes/harness/report.hpp"
#include "vcodes/harness/testbench.hpp"
#include "vcodes/llm/mock.hpp"
#include "vcodes/util/strutil.hpp"

using namespace vcodes;
using namespace vcodes::harness;

namespace {

std::vector<EvalTask> fixture_tasks() {
  return load_eval_dataset(testsupport::data_dir() + "/eval_tasks.jsonl");
}

// Mock that answers every generation prompt with the task's canonical
// solution (keyed by the problem statement embedded in the prompt).
llm::MockScript canonical_script(const std::vector<EvalTask>& tasks) {
  llm::MockScript script;
  for (const auto& task : tasks) {
    llm::MockRule rule;
    rule.match = llm::MockRule::Match::Substring;
    rule.needle = task.problem_statement;
    rule.responses = {task.canonical_solution};
    script.rules.push_back(rule);
  }
  script.default_response = "no idea";
  return script;
}

// Wrong-polarity designs: same interface, one behavior-breaking patch per
// task.
llm::MockScript inverted_script(const std::vector<EvalTask>& tasks) {
  llm::MockScript script;
  for (const auto& task : tasks) {
    llm::MockRule rule;
    rule.match = llm::MockRule::Match::Substring;
    rule.needle = task.problem_statement;
    std::string name = split(task.task_id, '/')[1];
    std::string wrong = task.canonical_solution;
    if (name == "and2") {
      wrong = replace_all(wrong, "a and b", "a or b");
    } else if (name == "or2") {
      wrong = replace_all(wrong, "a or b", "a and b");
    } else if (name == "xor2") {
      wrong = replace_all(wrong, "a xor b", "a xnor b");
    } else if (name == "nand2") {
      wrong = replace_all(wrong, "a nand b", "a nor b");
    } else if (name == "nor2") {
      wrong = replace_all(wrong, "a nor b", "a nand b");
    } else if (name == "mux2") {
      wrong = replace_all(wrong, "a when sel = '0' else b",
                          "b when sel = '0' else a");
    } else if (name == "halfadder") {
      wrong = replace_all(wrong, "a xor b", "a xnor b");
    } else if (name == "fulladder") {
      wrong = replace_all(wrong, "p xor cin", "p xnor cin");
    } else if (name == "counter2") {
      wrong = replace_all(wrong, "cnt + 1", "cnt + 2");
    } else if (name == "shift_register") {
      wrong = replace_all(wrong, "reg(2 downto 0) & d",
                          "reg(2 downto 0) & '0'");
    }
    rule.responses = {wrong};
    script.rules.push_back(rule);
  }
  return script;
}

}  // namespace

TEST_CASE("eval dataset schema validation") {
  std::vector<EvalTask> tasks = fixture_tasks();
  CHECK(tasks.size() == 10);
  CHECK(tasks[0].task_id.find('/') != std::string::npos);

  CHECK(parse_eval_dataset("").empty());

  std::string missing =
      R"({"task_id":"a/b","declaration":"d","problem_statement":"p",)"
      R"("short_description":"s","long_description":"l","prompt":"pr",)"
      R"("canonical_solution":"c"})";
  try {
    parse_eval_dataset(missing);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.line == 1);
    CHECK(std::string(e.what()).find("testbench") != std::string::npos);
  }

  std::string extra =
      R"({"task_id":"a/b","declaration":"d","problem_statement":"p",)"
      R"("short_description":"s","long_description":"l","prompt":"pr",)"
      R"("canonical_solution":"c","testbench":"t","bonus":"x"})";
  CHECK_THROWS_AS(parse_eval_dataset(extra), SchemaError);

  std::string second_line_bad =
      eval_task_to_json(tasks[0]) + "\n" + "{not json}";
  try {
    parse_eval_dataset(second_line_bad);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("testbench adapter: stub pass, compile fail, timeout") {
  std::string scratch = testsupport::fresh_scratch_dir("tb");
  SimulatorAdapter ok;
  ok.compile_cmd_template = "cat {design} {testbench} > compiled.txt";
  ok.run_cmd_template = "echo ALL TESTS PASSED";
  ok.pass_pattern = "ALL TESTS PASSED";
  ok.timeout_s = 10;
  TestbenchResult pass = run_testbench("design text", "tb text", ok, scratch);
  CHECK(pass.pass);
  CHECK(pass.workdir.empty());  // removed on success

  SimulatorAdapter bad = ok;
  bad.compile_cmd_template = "cat {design} && false";
  TestbenchResult fail = run_testbench("design", "tb", bad, scratch);
  CHECK_FALSE(fail.pass);
  CHECK(fail.fail_reason.find("compile exited") != std::string::npos);
  CHECK(std::filesystem::exists(fail.workdir));  // retained on failure

  SimulatorAdapter slow = ok;
  slow.run_cmd_template = "sleep 30";
  slow.timeout_s = 1;
  TestbenchResult timeout = run_testbench("design", "tb", slow, scratch);
  CHECK_FALSE(timeout.pass);
  CHECK(timeout.fail_reason.find("timeout") != std::string::npos);

  SimulatorAdapter missing = ok;
  missing.compile_cmd_template = "no_such_tool_xyz {design}";
  CHECK_THROWS_AS(run_testbench("d", "t", missing, scratch), ToolMissing);

  SimulatorAdapter invalid;
  invalid.compile_cmd_template = "true";  // lacks {design}
  invalid.run_cmd_template = "true";
  CHECK_THROWS_AS(validate_adapter(invalid), std::invalid_argument);
}

TEST_CASE("generation eval: canonical mock scores 1.0, inverted scores 0.0") {
  std::vector<EvalTask> tasks = fixture_tasks();
  RunConfig config;
  config.mode = PromptMode::ZeroShot;
  config.seed = 1;

  {
    llm::MockGateway mock = llm::make_mock_gateway(canonical_script(tasks));
    GenerationEvalResult result =
        run_generation_eval(tasks, config, *mock.gateway);
    REQUIRE(result.pass1_eq.has_value());
    CHECK(*result.pass1_eq == doctest::Approx(1.0));
    CHECK(result.item_failures == 0);
  }
  {
    llm::MockGateway mock = llm::make_mock_gateway(inverted_script(tasks));
    GenerationEvalResult result =
        run_generation_eval(tasks, config, *mock.gateway);
    REQUIRE(result.pass1_eq.has_value());
    CHECK(*result.pass1_eq == doctest::Approx(0.0));
    // counterexamples are stored for diverging samples
    bool saw_cex = false;
    for (const auto& record : result.records) {
      for (const auto& sample : record["samples"]) {
        if (sample.contains("counterexample")) saw_cex = true;
      }
    }
    CHECK(saw_cex);
  }
}

TEST_CASE("generation eval with stub testbench adapter") {
  std::vector<EvalTask> tasks = fixture_tasks();
  RunConfig config;
  config.mode = PromptMode::ZeroShot;
  SimulatorAdapter adapter;
  adapter.compile_cmd_template = "test -s {design}";
  adapter.run_cmd_template = "echo SIMULATION PASSED";
  adapter.pass_pattern = "SIMULATION PASSED";
  config.tb_adapter = adapter;

  llm::MockGateway mock = llm::make_mock_gateway(canonical_script(tasks));
  GenerationEvalResult result =
      run_generation_eval(tasks, config, *mock.gateway);
  REQUIRE(result.pass1_tb.has_value());
  CHECK(*result.pass1_tb == doctest::Approx(1.0));
}

TEST_CASE("zero-shot and multi with empty plan produce identical prompts") {
  std::vector<EvalTask> tasks = fixture_tasks();
  // One-line prose responses to every formulation prompt keep the plan empty
  // (refinement needs two lines or markers).
  llm::MockScript script;
  llm::MockRule plan_rule;
  plan_rule.match = llm::MockRule::Match::Substring;
  plan_rule.needle = "Generate a plan specifying";
  plan_rule.responses = {"just prose with no steps at all"};
  script.rules.push_back(plan_rule);
  for (const auto& task : tasks) {
    llm::MockRule rule;
    rule.match = llm::MockRule::Match::Substring;
    rule.needle = task.problem_statement;
    rule.responses = {task.canonical_solution};
    script.rules.push_back(rule);
  }

  RunConfig zero;
  zero.mode = PromptMode::ZeroShot;
  RunConfig multi;
  multi.mode = PromptMode::Multi;

  llm::MockGateway mock_zero = llm::make_mock_gateway(script);
  llm::MockGateway mock_multi = llm::make_mock_gateway(script);
  GenerationEvalResult zero_result =
      run_generation_eval({tasks[0]}, zero, *mock_zero.gateway);
  GenerationEvalResult multi_result =
      run_generation_eval({tasks[0]}, multi, *mock_multi.gateway);

  std::string zero_prompt =
      zero_result.records[0]["samples"][0]["prompts"].back();
  std::string multi_prompt =
      multi_result.records[0]["samples"][0]["prompts"].back();
  CHECK(zero_prompt == multi_prompt);
  CHECK(*zero_result.pass1_eq == *multi_result.pass1_eq);
}

TEST_CASE("summarization eval over tasks and pairs") {
  std::vector<EvalTask> tasks = fixture_tasks();
  {
    // identical summaries everywhere; judge always prefers A
    llm::MockScript script;
    llm::MockRule judge;
    judge.match = llm::MockRule::Match::Substring;
    judge.needle = "Which summary better captures";
    judge.responses = {"A"};
    script.rules.push_back(judge);
    script.default_response = "a generated summary";
    llm::MockGateway mock = llm::make_mock_gateway(std::move(script));
    RunConfig config;
    config.mode = PromptMode::ZeroShot;
    SummarizationEvalResult result =
        run_summarization_eval_tasks(tasks, config, *mock.gateway);
    REQUIRE(result.pr_eval_percent.has_value());
    // seeded coin puts the generated summary at A sometimes; PR is between
    CHECK(*result.pr_eval_percent >= 0.0);
    CHECK(*result.pr_eval_percent <= 100.0);
    CHECK(result.items == 10);
  }
  {
    // clone pairs: identical mock summaries give R_L = 1.0; always-yes judge
    // gives PR 100
    clone::PairRecord pair;
    pair.pair.pair_id = "type2-0001";
    pair.pair.original_code = tasks[0].canonical_solution;
    pair.pair.transformed_code = tasks[1].canonical_solution;
    llm::MockScript script;
    llm::MockRule judge;
    judge.match = llm::MockRule::Match::Substring;
    judge.needle = "Answer yes or no";
    judge.responses = {"yes"};
    script.rules.push_back(judge);
    script.default_response = "identical summary text";
    llm::MockGateway mock = llm::make_mock_gateway(std::move(script));
    RunConfig config;
    config.mode = PromptMode::ZeroShot;
    SummarizationEvalResult result =
        run_summarization_eval_pairs({pair}, config, *mock.gateway);
    REQUIRE(result.rouge_l_xform.has_value());
    CHECK(*result.rouge_l_xform == doctest::Approx(1.0));
    REQUIRE(result.pr_xform_percent.has_value());
    CHECK(*result.pr_xform_percent == doctest::Approx(100.0));
  }
  {
    // empty summaries: excluded from the ROUGE mean, invalid for PR
    clone::PairRecord pair;
    pair.pair.pair_id = "type2-0002";
    pair.pair.original_code = "code a";
    pair.pair.transformed_code = "code b";
    llm::MockScript script;
    script.default_response = "";
    llm::MockGateway mock = llm::make_mock_gateway(std::move(script));
    RunConfig config;
    config.mode = PromptMode::ZeroShot;
    SummarizationEvalResult result =
        run_summarization_eval_pairs({pair}, config, *mock.gateway);
    CHECK_FALSE(result.rouge_l_xform.has_value());
    REQUIRE(result.pr_xform_percent.has_value());
    CHECK(*result.pr_xform_percent == doctest::Approx(0.0));
    CHECK(result.records[0]["flag"] == "empty_summary");
  }
}

TEST_CASE("resumability: interrupted run resumes to identical records") {
  std::vector<EvalTask> tasks = fixture_tasks();
  std::string out_a = testsupport::fresh_scratch_dir("resume-a");
  std::string out_b = testsupport::fresh_scratch_dir("resume-b");

  RunConfig config;
  config.mode = PromptMode::ZeroShot;
  config.seed = 5;

  // full run in out_a
  config.out_dir = out_a;
  llm::MockGateway mock_a = llm::make_mock_gateway(canonical_script(tasks));
  GenerationEvalResult full =
      run_generation_eval(tasks, config, *mock_a.gateway);

  // interrupted (first half), then resumed run in out_b
  config.out_dir = out_b;
  llm::MockGateway mock_b = llm::make_mock_gateway(canonical_script(tasks));
  std::vector<EvalTask> half(tasks.begin(), tasks.begin() + 5);
  run_generation_eval(half, config, *mock_b.gateway);
  GenerationEvalResult resumed =
      run_generation_eval(tasks, config, *mock_b.gateway);

  CHECK(full.pass1_eq == resumed.pass1_eq);
  REQUIRE(full.records.size() == resumed.records.size());
  for (size_t i = 0; i < full.records.size(); ++i)
    CHECK(full.records[i].dump() == resumed.records[i].dump());

  // record files are byte-identical between the two directories
  namespace fs = std::filesystem;
  for (const auto& entry : fs::directory_iterator(out_a + "/items")) {
    std::string name = entry.path().filename().string();
    CHECK(testsupport::read_file(entry.path().string()) ==
          testsupport::read_file(out_b + "/items/" + name));
  }
}

TEST_CASE("report renders table-shaped markdown and lossless machine form") {
  ReportDoc doc;
  doc.seed = 7;
  doc.provider = "mock";
  doc.dataset_fingerprints["eval"] = "fnv1a64:0123456789abcdef";
  metrics::MetricReportRow row;
  row.model_id = "mock-model";
  row.pass1_tb = 0.25;
  row.pass1_eq = 0.2;
  row.sc1_percent = 50.0;
  row.pr_eval_percent = 70.0;
  row.rouge_l_xform = 0.3663;
  row.pr_xform_percent = 36.6;
  doc.rows.push_back(row);
  metrics::MetricReportRow second = row;
  second.model_id = "other-model";
  second.pass1_tb = std::nullopt;
  doc.rows.push_back(second);

  std::string markdown = render_markdown(doc);
  std::vector<std::string> lines = split_lines(markdown);
  REQUIRE(lines.size() >= 4);
  CHECK(lines[0] ==
        "| Model | Pass@1 (TB) | Pass@1 (EQ, desk-scale) | SC1 (%) | PR (%) | "
        "R_L | PR-xform (%) |");
  // two data rows of 7 columns each
  for (int i : {2, 3}) {
    int pipes = 0;
    for (char c : lines[static_cast<size_t>(i)])
      if (c == '|') ++pipes;
    CHECK(pipes == 8);
  }
  CHECK(lines[2].find("0.366") == std::string::npos);  // rendered x100
  CHECK(lines[2].find("36.63") != std::string::npos);
  CHECK(lines[3].find("| - |") != std::string::npos);  // missing TB column

  std::string machine = render_machine(doc);
  ReportDoc parsed = parse_machine(machine);
  CHECK(render_machine(parsed) == machine);

  ReportDoc empty;
  CHECK_THROWS_AS(render_markdown(empty), std::invalid_argument);
  CHECK_THROWS_AS(render_machine(empty), std::invalid_argument);
}

TEST_CASE("ablation produces paired arms per axis") {
  std::vector<EvalTask> tasks = fixture_tasks();
  llm::MockScript script = canonical_script(tasks);
  // give formulation prompts a scripted step list so multi mode works
  llm::MockRule plan_rule;
  plan_rule.match = llm::MockRule::Match::Substring;
  plan_rule.needle = "Generate a plan specifying";
  plan_rule.responses = {"1. Declare the ports\n2. Implement the logic"};
  script.rules.insert(script.rules.begin(), plan_rule);

  RunConfig config;
  config.mode = PromptMode::Multi;

  {
    llm::MockGateway mock = llm::make_mock_gateway(script);
    AblationReport report = run_ablation(AblationAxis::ExecMode,
                                         {tasks[0], tasks[1]}, config,
                                         *mock.gateway);
    CHECK(report.arms[0].setting == "single");
    CHECK(report.arms[1].setting == "multi");
    CHECK(report.arms[1].metrics.count("pass1_eq") == 1);
    std::string markdown = report.to_markdown();
    CHECK(markdown.find("| Metric | single | multi |") != std::string::npos);
  }
  {
    llm::MockGateway mock = llm::make_mock_gateway(script);
    AblationReport report = run_ablation(AblationAxis::DescLength,
                                         {tasks[0]}, config, *mock.gateway);
    CHECK(report.arms[0].setting == "short");
    CHECK(report.arms[1].setting == "long");
  }
  {
    llm::MockScript sum_script;
    llm::MockRule judge;
    judge.match = llm::MockRule::Match::Substring;
    judge.needle = "Which summary better captures";
    judge.responses = {"B"};
    sum_script.rules.push_back(judge);
    sum_script.default_response = "a summary";
    llm::MockGateway mock = llm::make_mock_gateway(std::move(sum_script));
    AblationReport report = run_ablation(AblationAxis::Granularity,
                                         {tasks[0], tasks[1]}, config,
                                         *mock.gateway);
    CHECK(report.arms[0].setting == "lines");
    CHECK(report.arms[1].setting == "ast");
    CHECK(report.arms[0].metrics.count("pr_eval_percent") == 1);
  }
}

TEST_CASE("self-consistency eval with the testbench backend") {
  std::vector<EvalTask> tasks = fixture_tasks();
  std::vector<EvalTask> two(tasks.begin(), tasks.begin() + 2);

  llm::MockScript script;
  for (size_t i = 0; i < two.size(); ++i) {
    llm::MockRule summarize;
    summarize.match = llm::MockRule::Match::Substring;
    summarize.needle = "entity " + split(two[i].task_id, '/')[1] + " is";
    summarize.responses = {"SC_MARK_" + std::to_string(i)};
    script.rules.push_back(summarize);
    llm::MockRule generate;
    generate.match = llm::MockRule::Match::Substring;
    generate.needle = "SC_MARK_" + std::to_string(i);
    generate.responses = {two[i].canonical_solution};
    script.rules.push_back(generate);
  }

  RunConfig config;
  config.mode = PromptMode::ZeroShot;
  config.sc_backend = ScBackend::Testbench;
  SimulatorAdapter adapter;
  adapter.compile_cmd_template = "test -s {design}";
  adapter.run_cmd_template = "echo TB OK";
  adapter.pass_pattern = "TB OK";
  config.tb_adapter = adapter;

  llm::MockGateway mock = llm::make_mock_gateway(std::move(script));
  SelfConsistencyEvalResult result =
      run_self_consistency_eval(two, config, *mock.gateway);
  CHECK(result.sc1 == doctest::Approx(1.0));
  CHECK(result.records[0]["verdict"] == "tb_pass");
}

TEST_CASE("aggregates recompute from stored records") {
  std::vector<EvalTask> tasks = fixture_tasks();
  RunConfig config;
  config.mode = PromptMode::ZeroShot;
  llm::MockGateway mock = llm::make_mock_gateway(canonical_script(tasks));
  GenerationEvalResult result =
      run_generation_eval(tasks, config, *mock.gateway);
  std::optional<double> recomputed = aggregate_mean(result.records, "pass1_eq");
  REQUIRE(recomputed.has_value());
  CHECK(*recomputed == doctest::Approx(*result.pass1_eq).epsilon(1e-9));
}
