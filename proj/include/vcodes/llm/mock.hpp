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

#ifndef VCODES_LLM_MOCK_HPP
#define VCODES_LLM_MOCK_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "vcodes/llm/gateway.hpp"

namespace vcodes::llm {

// Deterministic scripted responder: first matching rule wins; identical
// prompts yield identical responses (per-prompt call counts only index into
// a rule's response list when one is given).
struct MockRule {
  enum class Match { Exact, Substring, Pattern };
  Match match = Match::Substring;
  std::string needle;
  std::vector<std::string> responses;  // i-th call picks min(i, last)
};

struct MockScript {
  std::vector<MockRule> rules;
  std::string default_response;

  static MockScript from_json_text(const std::string& text);
  static MockScript load_file(const std::string& path);
};

class MockTransport : public Transport {
 public:
  explicit MockTransport(MockScript script) : script_(std::move(script)) {}

  std::string send(const std::string& prompt,
                   const SamplingParams& sampling) override;

  int call_count() const;
  std::vector<std::string> prompts() const;

 private:
  MockScript script_;
  mutable std::mutex mutex_;
  std::map<std::string, int> per_prompt_calls_;
  std::vector<std::string> prompts_;
};

// Gateway wired to a mock transport with relaxed limits; the transport
// pointer stays observable for tests.
struct MockGateway {
  std::shared_ptr<Gateway> gateway;
  MockTransport* transport;
};
MockGateway make_mock_gateway(MockScript script,
                              ProviderConfig config = ProviderConfig{});

}  // namespace vcodes::llm

#endif  // VCODES_LLM_MOCK_HPP
