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

#include "test_support.hpp"
#include "vcodes/codes/engine.hpp"
#include "vcodes/llm/mock.hpp"
#include "vcodes/util/rng.hpp"
#include "vcodes/vhdl/parser.hpp"

using namespace vcodes;
using namespace vcodes::codes;

namespace {

llm::MockGateway echo_gateway() {
  llm::MockScript script;
  script.default_response = "echo";
  return llm::make_mock_gateway(std::move(script));
}

}  // namespace

TEST_CASE("formulation template is verbatim with substitution") {
  CHECK(generation_plan_prompt("design a 4-bit binary counter") ==
        "Generate a plan specifying the intermediate steps to design a 4-bit "
        "binary counter");
  // trailing punctuation is preserved, nothing added
  CHECK(generation_plan_prompt("design an adder.") ==
        "Generate a plan specifying the intermediate steps to design an "
        "adder.");

  // property: template fidelity under arbitrary placeholder strings
  Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    std::string placeholder;
    size_t len = 1 + rng.below(24);
    for (size_t i = 0; i < len; ++i)
      placeholder += static_cast<char>('a' + rng.below(26));
    std::string prompt = generation_plan_prompt(placeholder);
    CHECK(prompt ==
          "Generate a plan specifying the intermediate steps to " + placeholder);
    CHECK(single_step_generation_prompt(placeholder) ==
          "Generate a plan to " + placeholder +
              ", then provide the final VHDL code");
  }
}

TEST_CASE("scripted formulation returns the scripted plan") {
  llm::MockScript script;
  llm::MockRule rule;
  rule.match = llm::MockRule::Match::Exact;
  rule.needle =
      "Generate a plan specifying the intermediate steps to design a 4-bit "
      "binary counter";
  rule.responses = {"1. Define the entity\n2. Add the clocked process"};
  script.rules.push_back(rule);
  llm::MockGateway mock = llm::make_mock_gateway(std::move(script));
  std::string raw = formulate_generation_plan(
      "design a 4-bit binary counter", *mock.gateway, llm::SamplingParams{},
      nullptr);
  CHECK(raw == "1. Define the entity\n2. Add the clocked process");
}

TEST_CASE("per-line formulation prompts carry growing context") {
  llm::MockGateway mock = echo_gateway();
  std::vector<PromptBundle> prompts;
  std::string code = "line one\nline two\nline three";
  std::vector<std::string> steps = formulate_summarization_plan_lines(
      code, *mock.gateway, llm::SamplingParams{}, &prompts, nullptr);
  REQUIRE(steps.size() == 3);
  REQUIRE(prompts.size() == 3);
  CHECK(prompts[0].text ==
        "\nExplain the following line of code given the context above:\nline "
        "one");
  CHECK(prompts[1].text ==
        "line one\nExplain the following line of code given the context "
        "above:\nline two");
  CHECK(prompts[2].text.find("line one\nline two\n") == 0);

  // blank and comment-only lines are skipped but still enter the context
  std::vector<PromptBundle> prompts2;
  formulate_summarization_plan_lines("a <= b;\n\n-- note\ny <= a;",
                                     *mock.gateway, llm::SamplingParams{},
                                     &prompts2, nullptr);
  REQUIRE(prompts2.size() == 2);
  CHECK(prompts2[1].text.find("-- note") != std::string::npos);
}

TEST_CASE("ast formulation uses the node templates") {
  vhdl::DesignFile design = vhdl::parse(testsupport::read_file(
      testsupport::corpus_dir() + "/counter2.vhd"));
  llm::MockGateway mock = echo_gateway();
  std::vector<PromptBundle> prompts;
  std::vector<std::string> steps = formulate_summarization_plan_ast(
      design, *mock.gateway, llm::SamplingParams{}, &prompts, nullptr);
  REQUIRE(steps.size() == 3);  // entity, architecture, unnamed process
  CHECK(prompts[0].text.find("Explain the purpose of the entity named "
                             "\"counter2\" along with its port information.") !=
        std::string::npos);
  CHECK(prompts[1].text.find(
            "Explain the functionality and behavior implemented in the "
            "architecture named \"rtl\" for the entity \"counter2\".") !=
        std::string::npos);
  CHECK(prompts[2].text.find("Explain the behavior within the process named "
                             "\"process_1\".") != std::string::npos);
  // each prompt is prefixed by the pretty-printed node source
  CHECK(prompts[0].text.find("entity counter2 is") == 0);

  // entity-only design yields a single step
  vhdl::DesignFile entity_only = vhdl::parse(
      "entity lonely is\n  port (a : in std_logic; y : out std_logic);\nend "
      "entity lonely;\n");
  std::vector<std::string> single = formulate_summarization_plan_ast(
      entity_only, *mock.gateway, llm::SamplingParams{}, nullptr, nullptr);
  CHECK(single.size() == 1);
}

TEST_CASE("refinement rule fixtures") {
  auto steps_of = [](const std::string& raw) {
    Plan plan = refine_plan(raw, [] { return std::string(); });
    std::vector<std::string> out;
    for (const auto& step : plan.steps) out.push_back(step.text);
    return out;
  };

  CHECK(steps_of("Answer: Here is a step-by-step approach:\nStep 1: Define "
                 "the entity\nStep 2: Add the clocked process") ==
        std::vector<std::string>{"Define the entity",
                                 "Add the clocked process"});
  CHECK(steps_of("1. Declare ports\n2. Write architecture") ==
        std::vector<std::string>{"Declare ports", "Write architecture"});
  CHECK(steps_of("The plan is as follows:\nDefine the entity\nAdd a clocked "
                 "process\nConnect the output") ==
        std::vector<std::string>{"Define the entity", "Add a clocked process",
                                 "Connect the output"});
  CHECK(steps_of("Step 1: Parse inputs\nsome note\nStep 2: Emit code") ==
        std::vector<std::string>{"Parse inputs", "Emit code"});
  CHECK(steps_of("10. step ten\n11. step eleven") ==
        std::vector<std::string>{"step ten", "step eleven"});
}

TEST_CASE("refinement attempts and the empty plan") {
  int resamples = 0;
  auto prose = [&] {
    ++resamples;
    return std::string("still just prose without any markers");
  };
  Plan plan = refine_plan("pure prose on a single line", prose);
  CHECK(plan.empty());
  CHECK(plan.refinement_attempts == 3);
  CHECK(resamples == 2);  // attempts 2 and 3 were resamples

  // a resample that produces a pattern succeeds on attempt 2
  int calls = 0;
  auto second_try = [&] {
    ++calls;
    return std::string("1. first\n2. second");
  };
  Plan recovered = refine_plan("nothing useful here", second_try);
  CHECK(recovered.refinement_attempts == 2);
  REQUIRE(recovered.steps.size() == 2);
  CHECK(recovered.steps[0].text == "first");
}

TEST_CASE("refinement idempotence on clean numbered lists") {
  Plan first = refine_plan("1. Declare ports\n2. Write architecture",
                           [] { return std::string(); });
  std::string reassembled;
  for (const auto& step : first.steps)
    reassembled += std::to_string(step.index) + ". " + step.text + "\n";
  Plan second = refine_plan(reassembled, [] { return std::string(); });
  REQUIRE(first.steps.size() == second.steps.size());
  for (size_t i = 0; i < first.steps.size(); ++i)
    CHECK(first.steps[i].text == second.steps[i].text);
}

TEST_CASE("multi-step execution prompt contains problem and steps") {
  llm::MockGateway mock = echo_gateway();
  Plan plan;
  plan.steps = {{1, "Define the entity"}, {2, "Add the clocked process"}};
  CodesResult result = execute_multi_step(
      "-- Design a 4-bit binary counter.\nentity counter4 is",
      plan, Task::Generate, *mock.gateway, llm::SamplingParams{});
  REQUIRE(result.prompt_log.size() == 1);
  const std::string& prompt = result.prompt_log[0].text;
  CHECK(prompt.find("Design a 4-bit binary counter.") != std::string::npos);
  CHECK(prompt.find("1. Define the entity") != std::string::npos);
  CHECK(prompt.find("2. Add the clocked process") != std::string::npos);
  CHECK(prompt.find("Provide the final VHDL code.") != std::string::npos);
}

TEST_CASE("empty plan degrades to the zero-shot prompt") {
  Plan empty;
  CHECK(multi_step_execution_prompt("the original prompt", empty,
                                    Task::Generate) == "the original prompt");
}

TEST_CASE("single-step issues exactly one provider call") {
  llm::MockGateway mock = echo_gateway();
  CodesResult result =
      execute_single_step("design a 4-bit binary counter", Task::Generate,
                          *mock.gateway, llm::SamplingParams{});
  CHECK(result.mode == ExecutionMode::SingleStep);
  CHECK(mock.transport->call_count() == 1);
  CHECK(mock.transport->prompts()[0] ==
        "Generate a plan to design a 4-bit binary counter, then provide the "
        "final VHDL code");
}

TEST_CASE("multi-step generation issues at least two calls") {
  llm::MockScript script;
  llm::MockRule rule;
  rule.match = llm::MockRule::Match::Substring;
  rule.needle = "Generate a plan specifying";
  rule.responses = {"1. One\n2. Two"};
  script.rules.push_back(rule);
  script.default_response = "entity x is end entity x;";
  llm::MockGateway mock = llm::make_mock_gateway(std::move(script));

  GenerationRequest request;
  request.problem_statement = "design a 4-bit binary counter";
  request.original_input = "the zero-shot prompt";
  request.mode = ExecutionMode::MultiStep;
  CodesResult result = run_generation(request, *mock.gateway);
  CHECK(mock.transport->call_count() >= 2);
  CHECK(result.plan.steps.size() == 2);
}

TEST_CASE("extract_code prefers fences, falls back to keywords") {
  std::string fenced = "some prose\n```vhdl\nentity x is\nend entity x;\n```\ntail";
  REQUIRE(extract_code(fenced).has_value());
  CHECK(*extract_code(fenced) == "entity x is\nend entity x;");

  std::string keyword = "Sure, here you go:\nlibrary ieee;\nentity y is\nend;";
  REQUIRE(extract_code(keyword).has_value());
  CHECK(extract_code(keyword)->find("library ieee;") == 0);

  CHECK(!extract_code("no code at all").has_value());
}

TEST_CASE("summarization pipeline composes per granularity") {
  std::string code = testsupport::read_file(testsupport::corpus_dir() +
                                            "/shift_register.vhd");
  llm::MockGateway mock = echo_gateway();

  SummarizationRequest request;
  request.code = code;
  request.granularity = SummarizationGranularity::LineByLine;
  request.mode = ExecutionMode::MultiStep;
  CodesResult result = run_summarization(request, *mock.gateway);
  CHECK(result.task == Task::Summarize);
  CHECK(!result.plan.steps.empty());
  // execution prompt embeds the code and the steps
  const std::string& exec_prompt = result.prompt_log.back().text;
  CHECK(exec_prompt.find("shift_register") != std::string::npos);
  CHECK(exec_prompt.find("Provide the final summary.") != std::string::npos);

  request.granularity = SummarizationGranularity::AstGuided;
  CodesResult ast_result = run_summarization(request, *mock.gateway);
  CHECK(!ast_result.plan.steps.empty());

  request.code = "this is not vhdl at all;";
  CHECK_THROWS_AS(run_summarization(request, *mock.gateway), vhdl::ParseError);
}
