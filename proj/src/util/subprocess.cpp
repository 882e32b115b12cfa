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

#include "vcodes/util/subprocess.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <thread>

#include "vcodes/util/strutil.hpp"

namespace vcodes {

CommandResult run_command(const std::string& command, double timeout_s,
                          const std::string& workdir) {
  CommandResult result;
  int pipefd[2];
  if (pipe(pipefd) != 0) {
    result.output = "pipe() failed";
    return result;
  }

  pid_t pid = fork();
  if (pid < 0) {
    close(pipefd[0]);
    close(pipefd[1]);
    result.output = "fork() failed";
    return result;
  }
  if (pid == 0) {
    setpgid(0, 0);  // own process group so a timeout can kill the whole tree
    if (!workdir.empty()) {
      if (chdir(workdir.c_str()) != 0) _exit(127);
    }
    dup2(pipefd[1], STDOUT_FILENO);
    dup2(pipefd[1], STDERR_FILENO);
    close(pipefd[0]);
    close(pipefd[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  close(pipefd[1]);
  fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(timeout_s);
  bool running = true;
  int status = 0;
  char buf[4096];
  while (running) {
    for (;;) {
      ssize_t n = read(pipefd[0], buf, sizeof(buf));
      if (n > 0) {
        result.output.append(buf, static_cast<size_t>(n));
      } else {
        break;
      }
    }
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) {
      running = false;
    } else if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      result.timed_out = true;
      running = false;
    } else {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  // Drain anything left after exit.
  for (;;) {
    ssize_t n = read(pipefd[0], buf, sizeof(buf));
    if (n <= 0) break;
    result.output.append(buf, static_cast<size_t>(n));
  }
  close(pipefd[0]);

  if (result.timed_out) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = -1;
  }
  return result;
}

bool command_available(const std::string& command) {
  std::string word = trim(command);
  size_t sp = word.find_first_of(" \t");
  if (sp != std::string::npos) word = word.substr(0, sp);
  if (word.empty()) return false;
  if (word.find('/') != std::string::npos)
    return std::filesystem::exists(word);
  const char* path = std::getenv("PATH");
  if (path == nullptr) return false;
  for (const auto& dir : split(path, ':')) {
    if (dir.empty()) continue;
    std::error_code ec;
    if (std::filesystem::exists(dir + "/" + word, ec)) return true;
  }
  return false;
}

}  // namespace vcodes
