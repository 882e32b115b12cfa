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

#ifndef VCODES_UTIL_SUBPROCESS_HPP
#define VCODES_UTIL_SUBPROCESS_HPP

#include <string>

namespace vcodes {

struct CommandResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;  // stdout and stderr interleaved
};

// Runs `command` through /bin/sh -c in `workdir` (empty = inherit cwd).
// On timeout the whole process group is killed.
CommandResult run_command(const std::string& command, double timeout_s,
                          const std::string& workdir = "");

// True if the first word of a shell command resolves on PATH (or is an
// existing absolute/relative path).
bool command_available(const std::string& command);

}  // namespace vcodes

#endif  // VCODES_UTIL_SUBPROCESS_HPP
