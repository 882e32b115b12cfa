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

#include "vcodes/harness/eval_runner.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>

#include "vcodes/util/strutil.hpp"
#include "vcodes/vhdl/parser.hpp"

namespace vcodes::harness {

namespace fs = std::filesystem;

const char* prompt_mode_name(PromptMode mode) {
  switch (mode) {
    case PromptMode::ZeroShot: return "zero_shot";
    case PromptMode::Single: return "single";
    case PromptMode::Multi: return "multi";
  }
  return "?";
}

namespace {

std::string sanitize_id(const std::string& id) {
  std::string out;
  for (char c : id) {
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  }
  return out;
}

std::optional<nlohmann::json> load_record(const RunConfig& config,
                                          const std::string& kind,
                                          const std::string& item_id) {
  if (config.out_dir.empty()) return std::nullopt;
  fs::path path = fs::path(config.out_dir) / "items" /
                  (kind + "__" + sanitize_id(item_id) + ".json");
  if (!fs::exists(path)) return std::nullopt;
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

void store_record(const RunConfig& config, const std::string& kind,
                  const std::string& item_id, const nlohmann::json& record) {
  if (config.out_dir.empty()) return;
  fs::path dir = fs::path(config.out_dir) / "items";
  fs::create_directories(dir);
  fs::path path = dir / (kind + "__" + sanitize_id(item_id) + ".json");
  std::ofstream out(path);
  out << record.dump() << "\n";
}

const std::string& task_description(const EvalTask& task, DescLength length) {
  return length == DescLength::Short ? task.short_description
                                     : task.long_description;
}

struct SampleOutcome {
  std::string response;
  std::optional<std::string> extracted_code;
  std::vector<std::string> prompts;
};

SampleOutcome produce_generation_sample(const EvalTask& task,
                                        const RunConfig& config,
                                        llm::Gateway& gateway) {
  SampleOutcome outcome;
  switch (config.mode) {
    case PromptMode::ZeroShot: {
      outcome.prompts.push_back(task.prompt);
      outcome.response = gateway.complete(task.prompt, config.sampling).text;
      outcome.extracted_code = codes::extract_code(outcome.response);
      break;
    }
    case PromptMode::Single: {
      codes::CodesResult result = codes::execute_single_step(
          task_description(task, config.desc_length), codes::Task::Generate,
          gateway, config.sampling);
      outcome.response = result.final_response;
      outcome.extracted_code = result.extracted_code;
      for (const auto& bundle : result.prompt_log)
        outcome.prompts.push_back(bundle.text);
      break;
    }
    case PromptMode::Multi: {
      codes::GenerationRequest request;
      request.problem_statement = task_description(task, config.desc_length);
      request.original_input = task.prompt;
      request.mode = codes::ExecutionMode::MultiStep;
      request.use_plan_profile = config.use_plan_profile;
      request.sampling = config.sampling;
      codes::CodesResult result = codes::run_generation(request, gateway);
      outcome.response = result.final_response;
      outcome.extracted_code = result.extracted_code;
      for (const auto& bundle : result.prompt_log)
        outcome.prompts.push_back(bundle.text);
      break;
    }
  }
  return outcome;
}

std::string summarize_one(const std::string& code, const RunConfig& config,
                          llm::Gateway& gateway) {
  switch (config.mode) {
    case PromptMode::ZeroShot:
      return gateway
          .complete(codes::zero_shot_summarization_prompt(code), config.sampling)
          .text;
    case PromptMode::Single: {
      codes::SummarizationRequest request;
      request.code = code;
      request.granularity = config.granularity;
      request.mode = codes::ExecutionMode::SingleStep;
      request.sampling = config.sampling;
      return codes::run_summarization(request, gateway).final_response;
    }
    case PromptMode::Multi: {
      codes::SummarizationRequest request;
      request.code = code;
      request.granularity = config.granularity;
      request.mode = codes::ExecutionMode::MultiStep;
      request.sampling = config.sampling;
      return codes::run_summarization(request, gateway).final_response;
    }
  }
  return "";
}

metrics::CodesMode to_codes_mode(PromptMode mode) {
  switch (mode) {
    case PromptMode::ZeroShot: return metrics::CodesMode::ZeroShot;
    case PromptMode::Single: return metrics::CodesMode::Single;
    case PromptMode::Multi: return metrics::CodesMode::Multi;
  }
  return metrics::CodesMode::ZeroShot;
}

}  // namespace

std::optional<double> aggregate_mean(const std::vector<nlohmann::json>& records,
                                     const std::string& field) {
  double sum = 0;
  int count = 0;
  for (const auto& record : records) {
    if (!record.contains(field) || record[field].is_null()) continue;
    sum += record[field].get<double>();
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

GenerationEvalResult run_generation_eval(const std::vector<EvalTask>& tasks,
                                         const RunConfig& config,
                                         llm::Gateway& gateway) {
  GenerationEvalResult result;
  for (const auto& task : tasks) {
    std::optional<nlohmann::json> cached =
        load_record(config, "gen", task.task_id);
    nlohmann::json record;
    if (cached) {
      record = *cached;
    } else {
      record["task_id"] = task.task_id;
      record["mode"] = prompt_mode_name(config.mode);
      record["desc_length"] =
          config.desc_length == DescLength::Short ? "short" : "long";
      record["n"] = config.n_samples;
      nlohmann::json samples = nlohmann::json::array();
      int c_eq = 0;
      int c_tb = 0;
      bool has_tb = config.tb_adapter.has_value();
      std::string item_error;
      for (int s = 0; s < config.n_samples; ++s) {
        nlohmann::json sample;
        try {
          SampleOutcome outcome =
              produce_generation_sample(task, config, gateway);
          sample["response"] = outcome.response;
          sample["prompts"] = outcome.prompts;
          if (outcome.extracted_code) {
            sample["extracted_code"] = *outcome.extracted_code;
            equiv::EquivalenceVerdict verdict = equiv::check_source_equivalence(
                task.canonical_solution, *outcome.extracted_code,
                config.budget);
            sample["eq"] = equiv::verdict_kind_name(verdict.kind);
            sample["eq_bounded"] = verdict.bounded;
            if (!verdict.detail.empty()) sample["eq_detail"] = verdict.detail;
            if (verdict.counterexample)
              sample["counterexample"] =
                  equiv::format_trace(*verdict.counterexample);
            if (verdict.equivalent()) ++c_eq;
          } else {
            sample["extracted_code"] = nullptr;
            sample["eq"] = "no_code";
          }
          if (has_tb) {
            std::string code = outcome.extracted_code.value_or("");
            if (code.empty()) {
              sample["tb_pass"] = false;
              sample["tb_reason"] = "no code extracted";
            } else {
              std::string workroot =
                  config.out_dir.empty() ? "" : config.out_dir + "/tb";
              TestbenchResult tb = run_testbench(code, task.testbench,
                                                 *config.tb_adapter, workroot);
              sample["tb_pass"] = tb.pass;
              if (!tb.pass) sample["tb_reason"] = tb.fail_reason;
              if (tb.pass) ++c_tb;
            }
          }
        } catch (const llm::ProviderError& error) {
          sample["error"] = error.what();
          item_error = error.what();
        }
        samples.push_back(std::move(sample));
      }
      record["samples"] = std::move(samples);
      record["c_eq"] = c_eq;
      record["pass1_eq"] = metrics::pass_at_k({config.n_samples, c_eq, 1});
      if (has_tb) {
        record["c_tb"] = c_tb;
        record["pass1_tb"] = metrics::pass_at_k({config.n_samples, c_tb, 1});
      }
      if (!item_error.empty()) record["error"] = item_error;
      store_record(config, "gen", task.task_id, record);
    }
    if (record.contains("error")) ++result.item_failures;
    ++result.items;
    result.records.push_back(std::move(record));
  }
  result.pass1_eq = aggregate_mean(result.records, "pass1_eq");
  result.pass1_tb = aggregate_mean(result.records, "pass1_tb");
  return result;
}

namespace {

struct JudgeCall {
  std::string verdict;  // preferred | not_preferred | invalid
  std::string raw;
  int retries = 0;
};

// Unparseable judge output is retried up to 3 times before being recorded
// invalid.
JudgeCall call_judge(llm::Gateway& gateway, const std::string& prompt,
                     const std::vector<std::string>& tokens,
                     bool preferred_is_first) {
  JudgeCall call;
  llm::JudgeOutcome outcome;
  for (int attempt = 0; attempt < 3; ++attempt) {
    call.retries = attempt;
    outcome = gateway.judge(prompt, tokens);
    if (outcome.verdict != llm::JudgeOutcome::Verdict::Invalid) break;
  }
  call.raw = outcome.raw;
  if (outcome.verdict == llm::JudgeOutcome::Verdict::Invalid) {
    call.verdict = "invalid";
  } else {
    bool first = outcome.verdict == llm::JudgeOutcome::Verdict::A;
    call.verdict = (first == preferred_is_first) ? "preferred" : "not_preferred";
  }
  return call;
}

}  // namespace

SummarizationEvalResult run_summarization_eval_tasks(
    const std::vector<EvalTask>& tasks, const RunConfig& config,
    llm::Gateway& gateway) {
  SummarizationEvalResult result;
  for (const auto& task : tasks) {
    std::optional<nlohmann::json> cached =
        load_record(config, "sum_eval", task.task_id);
    nlohmann::json record;
    if (cached) {
      record = *cached;
    } else {
      record["task_id"] = task.task_id;
      record["mode"] = prompt_mode_name(config.mode);
      try {
        std::string summary =
            summarize_one(task.canonical_solution, config, gateway);
        record["summary"] = summary;
        const std::string& reference =
            task_description(task, config.desc_length);
        record["reference"] = reference;
        if (trim(summary).empty()) {
          record["verdict"] = "invalid";
          record["flag"] = "empty_summary";
        } else {
          uint64_t item_seed = fnv1a64(task.task_id) ^ config.seed;
          metrics::JudgePrompt prompt = metrics::build_judge_prompt_eval(
              task.problem_statement, reference, summary, item_seed);
          record["judge_prompt"] = prompt.text;
          record["generated_slot"] = prompt.reference_is_a ? "B" : "A";
          JudgeCall call = call_judge(gateway, prompt.text, {"A", "B"},
                                      /*preferred_is_first=*/!prompt.reference_is_a);
          record["judge_raw"] = call.raw;
          record["verdict"] = call.verdict;
          record["retries"] = call.retries;
        }
      } catch (const llm::ProviderError& error) {
        record["error"] = error.what();
        record["verdict"] = "invalid";
      } catch (const vhdl::ParseError& error) {
        record["error"] = error.what();
        record["verdict"] = "invalid";
      }
      store_record(config, "sum_eval", task.task_id, record);
    }
    if (record.contains("error")) ++result.item_failures;
    ++result.items;
    result.records.push_back(std::move(record));
  }
  int preferred = 0;
  for (const auto& record : result.records) {
    if (record.value("verdict", "") == "preferred") ++preferred;
  }
  if (!result.records.empty())
    result.pr_eval_percent =
        100.0 * preferred / static_cast<double>(result.records.size());
  return result;
}

SummarizationEvalResult run_summarization_eval_pairs(
    const std::vector<clone::PairRecord>& pairs, const RunConfig& config,
    llm::Gateway& gateway) {
  SummarizationEvalResult result;
  for (const auto& pair : pairs) {
    std::optional<nlohmann::json> cached =
        load_record(config, "sum_xform", pair.pair.pair_id);
    nlohmann::json record;
    if (cached) {
      record = *cached;
    } else {
      record["pair_id"] = pair.pair.pair_id;
      record["mode"] = prompt_mode_name(config.mode);
      try {
        std::string original_summary =
            summarize_one(pair.pair.original_code, config, gateway);
        std::string transformed_summary =
            summarize_one(pair.pair.transformed_code, config, gateway);
        record["original_summary"] = original_summary;
        record["transformed_summary"] = transformed_summary;
        if (trim(original_summary).empty() ||
            trim(transformed_summary).empty()) {
          record["verdict"] = "invalid";
          record["flag"] = "empty_summary";
          record["rouge_f"] = nullptr;
        } else {
          metrics::RougeScore rouge =
              metrics::rouge_l(transformed_summary, original_summary);
          record["rouge_f"] = rouge.f;
          record["rouge_lcs"] = rouge.lcs_length;
          std::string prompt = metrics::build_judge_prompt_xform(
              pair.pair.original_code, original_summary, transformed_summary);
          record["judge_prompt"] = prompt;
          JudgeCall call = call_judge(gateway, prompt, {"yes", "no"},
                                      /*preferred_is_first=*/true);
          record["judge_raw"] = call.raw;
          record["verdict"] = call.verdict;
          record["retries"] = call.retries;
        }
      } catch (const llm::ProviderError& error) {
        record["error"] = error.what();
        record["verdict"] = "invalid";
        record["rouge_f"] = nullptr;
      }
      store_record(config, "sum_xform", pair.pair.pair_id, record);
    }
    if (record.contains("error")) ++result.item_failures;
    ++result.items;
    result.records.push_back(std::move(record));
  }
  result.rouge_l_xform = aggregate_mean(result.records, "rouge_f");
  int preferred = 0;
  for (const auto& record : result.records) {
    if (record.value("verdict", "") == "preferred") ++preferred;
  }
  if (!result.records.empty())
    result.pr_xform_percent =
        100.0 * preferred / static_cast<double>(result.records.size());
  return result;
}

SelfConsistencyEvalResult run_self_consistency_eval(
    const std::vector<EvalTask>& tasks, const RunConfig& config,
    llm::Gateway& gateway) {
  SelfConsistencyEvalResult result;
  for (const auto& task : tasks) {
    std::optional<nlohmann::json> cached =
        load_record(config, "sc", task.task_id);
    nlohmann::json record;
    if (cached) {
      record = *cached;
    } else {
      metrics::SelfConsistencyResult one = metrics::self_consistency(
          {{task.task_id, task.canonical_solution}}, gateway,
          to_codes_mode(config.mode), config.budget, config.sampling);
      const metrics::SelfConsistencyRecord& sc_record = one.records.front();
      record["task_id"] = sc_record.task_id;
      record["nl0"] = sc_record.nl0;
      record["pl1"] = sc_record.pl1;
      record["sc"] = sc_record.sc;
      record["verdict"] = equiv::verdict_kind_name(sc_record.verdict_detail.kind);
      record["bounded"] = sc_record.verdict_detail.bounded;
      if (!sc_record.failure_reason.empty())
        record["reason"] = sc_record.failure_reason;
      if (config.sc_backend == ScBackend::Testbench && config.tb_adapter) {
        // Alternate backend: score the regenerated code with the task's
        // testbench instead of the equivalence checker.
        if (sc_record.pl1.empty()) {
          record["sc"] = 0;
        } else {
          std::string workroot =
              config.out_dir.empty() ? "" : config.out_dir + "/tb";
          TestbenchResult tb = run_testbench(sc_record.pl1, task.testbench,
                                             *config.tb_adapter, workroot);
          record["sc"] = tb.pass ? 1 : 0;
          record["verdict"] = tb.pass ? "tb_pass" : "tb_fail";
        }
      }
      store_record(config, "sc", task.task_id, record);
    }
    if (record.contains("reason") && record.value("sc", 0) == 0)
      ++result.item_failures;
    ++result.items;
    result.records.push_back(std::move(record));
  }
  if (!result.records.empty()) {
    double sum = 0;
    for (const auto& record : result.records)
      sum += record.value("sc", 0);
    result.sc1 = sum / static_cast<double>(result.records.size());
  }
  return result;
}

std::optional<AblationAxis> ablation_axis_from_name(const std::string& name) {
  std::string folded = to_lower(name);
  if (folded == "desc_length" || folded == "desc") return AblationAxis::DescLength;
  if (folded == "granularity") return AblationAxis::Granularity;
  if (folded == "exec_mode" || folded == "exec") return AblationAxis::ExecMode;
  return std::nullopt;
}

std::string AblationReport::to_markdown() const {
  std::string out = "| Metric | " + arms[0].setting + " | " + arms[1].setting +
                    " |\n| --- | --- | --- |\n";
  std::set<std::string> metric_names;
  for (const auto& arm : arms)
    for (const auto& [name, value] : arm.metrics) {
      (void)value;
      metric_names.insert(name);
    }
  char buffer[64];
  for (const auto& name : metric_names) {
    out += "| " + name + " |";
    for (const auto& arm : arms) {
      auto it = arm.metrics.find(name);
      if (it == arm.metrics.end()) {
        out += " - |";
      } else {
        std::snprintf(buffer, sizeof(buffer), " %.4f |", it->second);
        out += buffer;
      }
    }
    out += "\n";
  }
  return out;
}

std::string AblationReport::to_json() const {
  nlohmann::json doc;
  switch (axis) {
    case AblationAxis::DescLength: doc["axis"] = "desc_length"; break;
    case AblationAxis::Granularity: doc["axis"] = "granularity"; break;
    case AblationAxis::ExecMode: doc["axis"] = "exec_mode"; break;
  }
  nlohmann::json arm_docs = nlohmann::json::array();
  for (const auto& arm : arms) {
    nlohmann::json arm_doc;
    arm_doc["setting"] = arm.setting;
    arm_doc["metrics"] = arm.metrics;
    arm_docs.push_back(arm_doc);
  }
  doc["arms"] = arm_docs;
  return doc.dump(2) + "\n";
}

AblationReport run_ablation(AblationAxis axis,
                            const std::vector<EvalTask>& tasks,
                            const RunConfig& config, llm::Gateway& gateway) {
  AblationReport report;
  report.axis = axis;

  auto arm_config = [&](const std::string& setting) {
    RunConfig arm = config;
    if (!config.out_dir.empty())
      arm.out_dir = config.out_dir + "/ablate_" + setting;
    return arm;
  };

  switch (axis) {
    case AblationAxis::DescLength: {
      const char* names[2] = {"short", "long"};
      DescLength settings[2] = {DescLength::Short, DescLength::Long};
      for (int i = 0; i < 2; ++i) {
        RunConfig arm = arm_config(names[i]);
        arm.desc_length = settings[i];
        if (arm.mode == PromptMode::ZeroShot) arm.mode = PromptMode::Multi;
        GenerationEvalResult r = run_generation_eval(tasks, arm, gateway);
        report.arms[i].setting = names[i];
        if (r.pass1_eq) report.arms[i].metrics["pass1_eq"] = *r.pass1_eq;
        if (r.pass1_tb) report.arms[i].metrics["pass1_tb"] = *r.pass1_tb;
      }
      break;
    }
    case AblationAxis::Granularity: {
      // Unparseable items are skipped symmetrically in both arms.
      std::vector<EvalTask> parseable;
      for (const auto& task : tasks) {
        try {
          vhdl::parse(task.canonical_solution);
          parseable.push_back(task);
        } catch (const std::exception&) {
        }
      }
      const char* names[2] = {"lines", "ast"};
      codes::SummarizationGranularity settings[2] = {
          codes::SummarizationGranularity::LineByLine,
          codes::SummarizationGranularity::AstGuided};
      for (int i = 0; i < 2; ++i) {
        RunConfig arm = arm_config(names[i]);
        arm.granularity = settings[i];
        if (arm.mode == PromptMode::ZeroShot) arm.mode = PromptMode::Multi;
        SummarizationEvalResult r =
            run_summarization_eval_tasks(parseable, arm, gateway);
        report.arms[i].setting = names[i];
        if (r.pr_eval_percent)
          report.arms[i].metrics["pr_eval_percent"] = *r.pr_eval_percent;
      }
      break;
    }
    case AblationAxis::ExecMode: {
      const char* names[2] = {"single", "multi"};
      PromptMode settings[2] = {PromptMode::Single, PromptMode::Multi};
      for (int i = 0; i < 2; ++i) {
        RunConfig arm = arm_config(names[i]);
        arm.mode = settings[i];
        GenerationEvalResult r = run_generation_eval(tasks, arm, gateway);
        report.arms[i].setting = names[i];
        if (r.pass1_eq) report.arms[i].metrics["pass1_eq"] = *r.pass1_eq;
        if (r.pass1_tb) report.arms[i].metrics["pass1_tb"] = *r.pass1_tb;
      }
      break;
    }
  }
  return report;
}

}  // namespace vcodes::harness
