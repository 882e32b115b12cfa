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

#include "vcodes/harness/testbench.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>

#include "vcodes/util/strutil.hpp"
#include "vcodes/util/subprocess.hpp"

namespace vcodes::harness {

namespace fs = std::filesystem;

void validate_adapter(const SimulatorAdapter& adapter) {
  auto require = [](const std::string& tmpl, const char* placeholder) {
    if (tmpl.find(placeholder) == std::string::npos)
      throw std::invalid_argument(std::string("command template lacks ") +
                                  placeholder);
  };
  require(adapter.compile_cmd_template, "{design}");
  if (adapter.run_cmd_template.empty())
    throw std::invalid_argument("run command template is empty");
}

bool probe_adapter(const SimulatorAdapter& adapter) {
  return command_available(adapter.compile_cmd_template) &&
         command_available(adapter.run_cmd_template);
}

TestbenchResult run_testbench(const std::string& code,
                              const std::string& testbench,
                              const SimulatorAdapter& adapter,
                              const std::string& workroot) {
  validate_adapter(adapter);
  if (!probe_adapter(adapter))
    throw ToolMissing("compile or run command not found on PATH");

  static std::atomic<uint64_t> counter{0};
  fs::path root = workroot.empty() ? fs::temp_directory_path()
                                   : fs::path(workroot);
  fs::create_directories(root);
  fs::path workdir =
      root / ("tb-" + std::to_string(::getpid()) + "-" +
              std::to_string(counter.fetch_add(1)));
  fs::create_directories(workdir);

  TestbenchResult result;
  result.workdir = workdir.string();
  fs::path design_path = workdir / "design.vhd";
  fs::path tb_path = workdir / "testbench.vhd";
  {
    std::ofstream design(design_path);
    design << code;
    std::ofstream tb(tb_path);
    tb << testbench;
  }

  auto substitute = [&](const std::string& tmpl) {
    std::string cmd = replace_all(tmpl, "{design}", design_path.string());
    cmd = replace_all(cmd, "{testbench}", tb_path.string());
    cmd = replace_all(cmd, "{workdir}", workdir.string());
    return cmd;
  };

  CommandResult compile = run_command(substitute(adapter.compile_cmd_template),
                                      adapter.timeout_s, workdir.string());
  result.log += compile.output;
  if (compile.timed_out) {
    result.fail_reason =
        "compile timeout after " + std::to_string(adapter.timeout_s) + " s";
    return result;
  }
  if (compile.exit_code != 0) {
    result.fail_reason =
        "compile exited with " + std::to_string(compile.exit_code);
    return result;
  }

  CommandResult run = run_command(substitute(adapter.run_cmd_template),
                                  adapter.timeout_s, workdir.string());
  result.log += run.output;
  if (run.timed_out) {
    result.fail_reason =
        "run timeout after " + std::to_string(adapter.timeout_s) + " s";
    return result;
  }
  if (run.exit_code != 0) {
    result.fail_reason = "run exited with " + std::to_string(run.exit_code);
    return result;
  }
  if (!adapter.pass_pattern.empty() &&
      run.output.find(adapter.pass_pattern) == std::string::npos) {
    result.fail_reason = "pass pattern not found in simulator output";
    return result;
  }
  result.pass = true;
  std::error_code ec;
  fs::remove_all(workdir, ec);  // retained only on failure
  result.workdir.clear();
  return result;
}

}  // namespace vcodes::harness
