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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcodes/clone/dataset.hpp"
#include "vcodes/codes/engine.hpp"
#include "vcodes/harness/eval_runner.hpp"
#include "vcodes/harness/report.hpp"
#include "vcodes/llm/mock.hpp"
#include "vcodes/util/strutil.hpp"
#include "vcodes/vhdl/parser.hpp"
#include "vcodes/vhdl/printer.hpp"

namespace {

namespace fs = std::filesystem;
using namespace vcodes;

constexpr int kExitOk = 0;
constexpr int kExitItemFailures = 1;
constexpr int kExitConfigError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct ToolConfig {
  std::vector<llm::ProviderConfig> providers;
  std::optional<harness::SimulatorAdapter> simulator;
  equiv::EquivBudget budget;
};

ToolConfig load_tool_config(const std::string& path) {
  ToolConfig config;
  if (path.empty()) return config;
  nlohmann::json doc = nlohmann::json::parse(read_file(path));
  for (const auto& p : doc.value("providers", nlohmann::json::array())) {
    llm::ProviderConfig provider;
    provider.name = p.value("name", "default");
    provider.endpoint_url = p.value("endpoint_url", "");
    provider.model_id = p.value("model_id", "");
    provider.auth_env_var = p.value("auth_env_var", "");
    provider.request_timeout_s = p.value("request_timeout_s", 120.0);
    provider.max_in_flight = p.value("max_in_flight", 4);
    provider.requests_per_minute = p.value("requests_per_minute", 60);
    provider.api_style = p.value("api_style", "openai_chat") == "tgi"
                             ? llm::ApiStyle::Tgi
                             : llm::ApiStyle::OpenAiChat;
    config.providers.push_back(std::move(provider));
  }
  if (doc.contains("simulator")) {
    const auto& s = doc["simulator"];
    harness::SimulatorAdapter adapter;
    adapter.compile_cmd_template = s.value("compile_cmd", "");
    adapter.run_cmd_template = s.value("run_cmd", "");
    adapter.timeout_s = s.value("timeout_s", 60);
    adapter.pass_pattern = s.value("pass_pattern", "");
    config.simulator = adapter;
  }
  if (doc.contains("budget")) {
    const auto& b = doc["budget"];
    config.budget.max_input_bits = b.value("max_input_bits", 16);
    config.budget.max_depth = b.value("max_depth", 8);
    config.budget.max_step_evaluations =
        b.value("max_step_evaluations", int64_t{1} << 24);
  }
  return config;
}

struct GlobalFlags {
  std::string config_path;
  std::string provider = "mock";
  uint64_t seed = 0;
  std::string mock_script;
  std::string out_dir;
};

std::shared_ptr<llm::Gateway> make_gateway(const GlobalFlags& flags,
                                           const ToolConfig& config,
                                           std::string* model_id) {
  if (flags.provider == "mock") {
    llm::MockScript script;
    if (!flags.mock_script.empty())
      script = llm::MockScript::load_file(flags.mock_script);
    llm::MockGateway mock = llm::make_mock_gateway(std::move(script));
    if (model_id != nullptr) *model_id = "mock-model";
    return mock.gateway;
  }
  for (const auto& provider : config.providers) {
    if (provider.name == flags.provider) {
      if (model_id != nullptr) *model_id = provider.model_id;
      return std::make_shared<llm::Gateway>(provider,
                                            llm::make_http_transport(provider));
    }
  }
  throw std::runtime_error("unknown provider \"" + flags.provider +
                           "\" (not in --config)");
}

harness::RunConfig make_run_config(const GlobalFlags& flags,
                                   const ToolConfig& config,
                                   const std::string& mode,
                                   const std::string& desc,
                                   const std::string& granularity,
                                   int n_samples, bool with_tb) {
  harness::RunConfig run;
  run.provider_id = flags.provider;
  run.seed = flags.seed;
  run.out_dir = flags.out_dir;
  run.budget = config.budget;
  run.n_samples = n_samples;
  if (mode == "single") {
    run.mode = harness::PromptMode::Single;
  } else if (mode == "multi") {
    run.mode = harness::PromptMode::Multi;
  } else {
    run.mode = harness::PromptMode::ZeroShot;
  }
  run.desc_length = desc == "short" ? harness::DescLength::Short
                                    : harness::DescLength::Long;
  run.granularity = granularity == "ast"
                        ? codes::SummarizationGranularity::AstGuided
                        : codes::SummarizationGranularity::LineByLine;
  if (with_tb && config.simulator) run.tb_adapter = config.simulator;
  return run;
}

// Merges one model row into <out>/report.json so successive eval commands
// build up the full table.
void merge_report_row(const std::string& out_dir,
                      const metrics::MetricReportRow& fragment, uint64_t seed,
                      const std::string& provider,
                      const std::map<std::string, std::string>& fingerprints) {
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  fs::path path = fs::path(out_dir) / "report.json";
  harness::ReportDoc doc;
  if (fs::exists(path)) doc = harness::parse_machine(read_file(path.string()));
  doc.seed = seed;
  doc.provider = provider;
  for (const auto& [name, value] : fingerprints)
    doc.dataset_fingerprints[name] = value;
  metrics::MetricReportRow* row = nullptr;
  for (auto& existing : doc.rows) {
    if (existing.model_id == fragment.model_id) row = &existing;
  }
  if (row == nullptr) {
    doc.rows.push_back(metrics::MetricReportRow{});
    row = &doc.rows.back();
    row->model_id = fragment.model_id;
  }
  if (fragment.pass1_tb) row->pass1_tb = fragment.pass1_tb;
  if (fragment.pass1_eq) row->pass1_eq = fragment.pass1_eq;
  if (fragment.sc1_percent) row->sc1_percent = fragment.sc1_percent;
  if (fragment.pr_eval_percent) row->pr_eval_percent = fragment.pr_eval_percent;
  if (fragment.rouge_l_xform) row->rouge_l_xform = fragment.rouge_l_xform;
  if (fragment.pr_xform_percent)
    row->pr_xform_percent = fragment.pr_xform_percent;
  std::ofstream out(path);
  out << harness::render_machine(doc);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"VHDL code-clone generation, prompt-pipeline and evaluation toolkit"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file");
  app.add_option("--provider", flags.provider, "provider name (default mock)");
  app.add_option("--seed", flags.seed, "run seed");
  app.add_option("--mock", flags.mock_script, "mock script file");
  app.add_option("--out", flags.out_dir, "output directory");

  // dataset ------------------------------------------------------------
  auto* dataset = app.add_subcommand("dataset", "dataset operations");
  auto* ds_validate = dataset->add_subcommand("validate", "validate a dataset");
  std::string ds_in;
  ds_validate->add_option("--in", ds_in, "dataset file")->required();

  auto* ds_stats = dataset->add_subcommand("stats", "pairs-file statistics");
  std::string stats_in;
  ds_stats->add_option("--in", stats_in, "pairs file")->required();

  auto* ds_build = dataset->add_subcommand("build", "build a clone-pair dataset");
  std::string build_corpus, build_mix = "30.2,39.4,30.4", build_allow = "MIT,Apache-2.0,BSD-3-Clause";
  int build_n = 100;
  ds_build->add_option("--corpus", build_corpus, "corpus directory")->required();
  ds_build->add_option("--n", build_n, "number of pairs");
  ds_build->add_option("--mix", build_mix, "type2,type3,type4 percentages");
  ds_build->add_option("--allowlist", build_allow, "license identifiers");

  // transform ------------------------------------------------------------
  auto* transform = app.add_subcommand("transform", "transform one design");
  int transform_type = 2;
  std::string transform_in, transform_out;
  transform->add_option("--type", transform_type, "clone type (2|3|4)")
      ->required();
  transform->add_option("--in", transform_in, "input VHDL file")->required();
  transform->add_option("--out-file", transform_out, "output file (default stdout)");

  // codes ------------------------------------------------------------
  auto* codes_cmd = app.add_subcommand("codes", "prompt pipeline");
  auto* codes_generate = codes_cmd->add_subcommand("generate", "generate code");
  std::string gen_task_file, gen_mode = "multi", gen_desc = "long";
  codes_generate->add_option("--task-file", gen_task_file,
                             "file with the problem statement")->required();
  codes_generate->add_option("--mode", gen_mode, "single|multi");
  codes_generate->add_option("--desc", gen_desc, "short|long (dataset runs)");

  auto* codes_summarize = codes_cmd->add_subcommand("summarize", "summarize code");
  std::string sum_in, sum_granularity = "lines", sum_mode = "multi";
  codes_summarize->add_option("--in", sum_in, "VHDL file")->required();
  codes_summarize->add_option("--granularity", sum_granularity, "lines|ast");
  codes_summarize->add_option("--mode", sum_mode, "single|multi");

  // eval ------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "run evaluations");
  auto* eval_generate = eval->add_subcommand("generate", "generation eval");
  std::string eg_tasks, eg_mode = "zero_shot", eg_desc = "long";
  int eg_n = 1;
  bool eg_tb = false;
  eval_generate->add_option("--tasks", eg_tasks, "eval dataset")->required();
  eval_generate->add_option("--mode", eg_mode, "zero_shot|single|multi");
  eval_generate->add_option("--desc", eg_desc, "short|long");
  eval_generate->add_option("--n", eg_n, "samples per task");
  eval_generate->add_flag("--tb", eg_tb, "run the testbench adapter");

  auto* eval_summarize = eval->add_subcommand("summarize", "summarization eval");
  std::string es_tasks, es_pairs, es_mode = "zero_shot", es_granularity = "lines",
              es_desc = "long";
  eval_summarize->add_option("--tasks", es_tasks, "eval dataset");
  eval_summarize->add_option("--pairs", es_pairs, "clone pairs file");
  eval_summarize->add_option("--mode", es_mode, "zero_shot|single|multi");
  eval_summarize->add_option("--granularity", es_granularity, "lines|ast");
  eval_summarize->add_option("--desc", es_desc, "short|long reference");

  auto* eval_sc = eval->add_subcommand("selfconsistency", "self-consistency eval");
  std::string sc_tasks, sc_mode = "zero_shot";
  eval_sc->add_option("--tasks", sc_tasks, "eval dataset")->required();
  eval_sc->add_option("--mode", sc_mode, "zero_shot|single|multi");

  // ablate ------------------------------------------------------------
  auto* ablate = app.add_subcommand("ablate", "paired ablation runs");
  std::string ablate_axis, ablate_tasks, ablate_mode = "multi";
  ablate->add_option("--axis", ablate_axis, "desc_length|granularity|exec_mode")
      ->required();
  ablate->add_option("--tasks", ablate_tasks, "eval dataset")->required();
  ablate->add_option("--mode", ablate_mode, "base mode for non-axis settings");

  // report ------------------------------------------------------------
  auto* report = app.add_subcommand("report", "report rendering");
  auto* report_render = report->add_subcommand("render", "render a report");
  std::string report_in, report_format = "markdown";
  report_render->add_option("--in", report_in, "machine report (report.json)")
      ->required();
  report_render->add_option("--format", report_format, "markdown|machine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  ToolConfig config = load_tool_config(flags.config_path);

  if (ds_validate->parsed()) {
    std::vector<harness::EvalTask> tasks = harness::load_eval_dataset(ds_in);
    std::cout << "valid: " << tasks.size() << " tasks\n";
    return kExitOk;
  }
  if (ds_stats->parsed()) {
    std::vector<clone::PairRecord> pairs = clone::load_pairs_file(stats_in);
    clone::CorpusStats stats;
    stats.total_pairs = static_cast<int>(pairs.size());
    for (const auto& record : pairs)
      stats.per_type_counts[record.pair.clone_type] += 1;
    for (const auto& [type, count] : stats.per_type_counts)
      stats.per_type_percent[type] =
          stats.total_pairs ? 100.0 * count / stats.total_pairs : 0.0;
    std::cout << clone::stats_to_json(stats);
    return kExitOk;
  }
  if (ds_build->parsed()) {
    std::vector<std::string> allowlist = split(build_allow, ',');
    std::vector<std::string> exclusions;
    std::vector<clone::CorpusFile> corpus =
        clone::ingest_corpus(build_corpus, allowlist, &exclusions);
    for (const auto& line : exclusions)
      std::cerr << "excluded: " << line << "\n";
    std::vector<std::string> mix_parts = split(build_mix, ',');
    if (mix_parts.size() != 3)
      throw std::invalid_argument("--mix needs three percentages");
    clone::MixSpec mix;
    mix.type2_percent = std::stod(mix_parts[0]);
    mix.type3_percent = std::stod(mix_parts[1]);
    mix.type4_percent = std::stod(mix_parts[2]);
    clone::TransformConfig transform_config;
    transform_config.seed = flags.seed;
    clone::DictionarySuggester suggester;
    clone::DatasetResult result = clone::build_dataset(
        corpus, mix, build_n, transform_config, suggester, config.budget);
    std::string out_dir = flags.out_dir.empty() ? "." : flags.out_dir;
    fs::create_directories(out_dir);
    clone::write_pairs_file(out_dir + "/pairs.jsonl", result.pairs);
    clone::write_stats_file(out_dir + "/stats.json", result.stats);
    std::cout << clone::stats_to_json(result.stats);
    for (const auto& line : result.skip_log)
      std::cerr << "skipped: " << line << "\n";
    return kExitOk;
  }

  if (transform->parsed()) {
    vhdl::DesignFile design = vhdl::parse(read_file(transform_in));
    clone::TransformConfig transform_config;
    transform_config.seed = flags.seed;
    clone::DictionarySuggester suggester;
    clone::TransformOutcome outcome;
    switch (transform_type) {
      case 2:
        outcome = clone::transform_type2(design, transform_config, suggester);
        break;
      case 3:
        outcome = clone::transform_type3(design, transform_config, flags.seed);
        break;
      case 4:
        outcome = clone::transform_type4(design, transform_config, suggester);
        break;
      default:
        throw std::invalid_argument("--type must be 2, 3 or 4");
    }
    std::string text = vhdl::pretty_print(outcome.design);
    if (transform_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(transform_out);
      out << text;
    }
    for (const auto& entry : outcome.log) std::cerr << entry << "\n";
    return kExitOk;
  }

  std::string model_id;
  if (codes_generate->parsed()) {
    auto gateway = make_gateway(flags, config, &model_id);
    codes::GenerationRequest request;
    request.problem_statement = trim(read_file(gen_task_file));
    request.original_input = request.problem_statement;
    request.mode = gen_mode == "single" ? codes::ExecutionMode::SingleStep
                                        : codes::ExecutionMode::MultiStep;
    codes::CodesResult result = codes::run_generation(request, *gateway);
    nlohmann::json doc;
    doc["mode"] = codes::execution_mode_name(result.mode);
    doc["final_response"] = result.final_response;
    if (result.extracted_code) doc["extracted_code"] = *result.extracted_code;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : result.plan.steps) steps.push_back(step.text);
    doc["plan_steps"] = steps;
    nlohmann::json prompts = nlohmann::json::array();
    for (const auto& bundle : result.prompt_log) prompts.push_back(bundle.text);
    doc["prompts"] = prompts;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  if (codes_summarize->parsed()) {
    auto gateway = make_gateway(flags, config, &model_id);
    codes::SummarizationRequest request;
    request.code = read_file(sum_in);
    request.granularity = sum_granularity == "ast"
                              ? codes::SummarizationGranularity::AstGuided
                              : codes::SummarizationGranularity::LineByLine;
    request.mode = sum_mode == "single" ? codes::ExecutionMode::SingleStep
                                        : codes::ExecutionMode::MultiStep;
    codes::CodesResult result = codes::run_summarization(request, *gateway);
    nlohmann::json doc;
    doc["summary"] = result.final_response;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : result.plan.steps) steps.push_back(step.text);
    doc["plan_steps"] = steps;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  if (eval_generate->parsed()) {
    if (eg_tb && !config.simulator)
      throw std::invalid_argument(
          "--tb requires a simulator adapter in --config");
    auto gateway = make_gateway(flags, config, &model_id);
    std::vector<harness::EvalTask> tasks = harness::load_eval_dataset(eg_tasks);
    harness::RunConfig run = make_run_config(flags, config, eg_mode, eg_desc,
                                             "lines", eg_n, eg_tb);
    run.model_id = model_id;
    harness::GenerationEvalResult result =
        harness::run_generation_eval(tasks, run, *gateway);
    metrics::MetricReportRow fragment;
    fragment.model_id = model_id;
    fragment.pass1_tb = result.pass1_tb;
    fragment.pass1_eq = result.pass1_eq;
    merge_report_row(flags.out_dir, fragment, flags.seed, flags.provider,
                     {{"eval", harness::dataset_fingerprint(read_file(eg_tasks))}});
    std::cout << "items=" << result.items
              << " failures=" << result.item_failures << " pass1_eq="
              << (result.pass1_eq ? std::to_string(*result.pass1_eq) : "-")
              << "\n";
    return result.item_failures > 0 ? kExitItemFailures : kExitOk;
  }

  if (eval_summarize->parsed()) {
    auto gateway = make_gateway(flags, config, &model_id);
    harness::RunConfig run = make_run_config(flags, config, es_mode, es_desc,
                                             es_granularity, 1, false);
    run.model_id = model_id;
    int failures = 0;
    metrics::MetricReportRow fragment;
    fragment.model_id = model_id;
    std::map<std::string, std::string> fingerprints;
    if (!es_tasks.empty()) {
      std::vector<harness::EvalTask> tasks = harness::load_eval_dataset(es_tasks);
      harness::SummarizationEvalResult result =
          harness::run_summarization_eval_tasks(tasks, run, *gateway);
      fragment.pr_eval_percent = result.pr_eval_percent;
      failures += result.item_failures;
      fingerprints["eval"] = harness::dataset_fingerprint(read_file(es_tasks));
    }
    if (!es_pairs.empty()) {
      std::vector<clone::PairRecord> pairs = clone::load_pairs_file(es_pairs);
      harness::SummarizationEvalResult result =
          harness::run_summarization_eval_pairs(pairs, run, *gateway);
      fragment.rouge_l_xform = result.rouge_l_xform;
      fragment.pr_xform_percent = result.pr_xform_percent;
      failures += result.item_failures;
      fingerprints["xform"] = harness::dataset_fingerprint(read_file(es_pairs));
    }
    if (es_tasks.empty() && es_pairs.empty())
      throw std::invalid_argument("eval summarize needs --tasks and/or --pairs");
    merge_report_row(flags.out_dir, fragment, flags.seed, flags.provider,
                     fingerprints);
    std::cout << "failures=" << failures << "\n";
    return failures > 0 ? kExitItemFailures : kExitOk;
  }

  if (eval_sc->parsed()) {
    auto gateway = make_gateway(flags, config, &model_id);
    std::vector<harness::EvalTask> tasks = harness::load_eval_dataset(sc_tasks);
    harness::RunConfig run =
        make_run_config(flags, config, sc_mode, "long", "lines", 1, false);
    run.model_id = model_id;
    harness::SelfConsistencyEvalResult result =
        harness::run_self_consistency_eval(tasks, run, *gateway);
    metrics::MetricReportRow fragment;
    fragment.model_id = model_id;
    fragment.sc1_percent = result.sc1 * 100.0;
    merge_report_row(flags.out_dir, fragment, flags.seed, flags.provider,
                     {{"eval", harness::dataset_fingerprint(read_file(sc_tasks))}});
    std::cout << "sc1=" << result.sc1 << "\n";
    return result.item_failures > 0 ? kExitItemFailures : kExitOk;
  }

  if (ablate->parsed()) {
    auto gateway = make_gateway(flags, config, &model_id);
    std::optional<harness::AblationAxis> axis =
        harness::ablation_axis_from_name(ablate_axis);
    if (!axis) throw std::invalid_argument("unknown axis " + ablate_axis);
    std::vector<harness::EvalTask> tasks =
        harness::load_eval_dataset(ablate_tasks);
    harness::RunConfig run = make_run_config(flags, config, ablate_mode, "long",
                                             "lines", 1, false);
    run.model_id = model_id;
    harness::AblationReport result =
        harness::run_ablation(*axis, tasks, run, *gateway);
    std::cout << result.to_markdown();
    if (!flags.out_dir.empty()) {
      fs::create_directories(flags.out_dir);
      std::ofstream out(fs::path(flags.out_dir) / "ablation.json");
      out << result.to_json();
    }
    return kExitOk;
  }

  if (report_render->parsed()) {
    harness::ReportDoc doc = harness::parse_machine(read_file(report_in));
    if (report_format == "machine") {
      std::cout << harness::render_machine(doc);
    } else {
      std::cout << harness::render_markdown(doc);
    }
    return kExitOk;
  }

  std::cerr << "no subcommand executed\n";
  return kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
