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

#ifndef VCODES_HARNESS_TESTBENCH_HPP
#define VCODES_HARNESS_TESTBENCH_HPP

#include <stdexcept>
#include <string>

namespace vcodes::harness {

// External-simulator adapter. The concrete tools are configuration:
// command templates with {design}, {testbench} and {workdir} placeholders.
struct SimulatorAdapter {
  std::string compile_cmd_template;
  std::string run_cmd_template;
  int timeout_s = 60;
  std::string pass_pattern;  // substring marking success in the run output
};

struct ToolMissing : std::runtime_error {
  explicit ToolMissing(const std::string& detail)
      : std::runtime_error("simulator tool missing: " + detail) {}
};

struct TestbenchResult {
  bool pass = false;
  std::string log;
  std::string fail_reason;  // empty on pass
  std::string workdir;      // retained on failure, removed on success
};

/// Throws std::invalid_argument when a template lacks its placeholders.
void validate_adapter(const SimulatorAdapter& adapter);

/// True when the first word of both command templates resolves on PATH.
bool probe_adapter(const SimulatorAdapter& adapter);

/// Writes code and testbench into a fresh workdir, runs compile then run.
/// Pass requires exit code 0 from both commands and the pass pattern in the
/// run output. Timeouts fail with a reason.
TestbenchResult run_testbench(const std::string& code,
                              const std::string& testbench,
                              const SimulatorAdapter& adapter,
                              const std::string& workroot = "");

}  // namespace vcodes::harness

#endif  // VCODES_HARNESS_TESTBENCH_HPP
