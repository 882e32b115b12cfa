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

#include "vcodes/llm/mock.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace vcodes::llm {

MockScript MockScript::from_json_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  MockScript script;
  script.default_response = doc.value("default_response", "");
  for (const auto& rule_doc : doc.value("rules", nlohmann::json::array())) {
    MockRule rule;
    std::string match = rule_doc.value("match", "substring");
    if (match == "exact") {
      rule.match = MockRule::Match::Exact;
    } else if (match == "pattern") {
      rule.match = MockRule::Match::Pattern;
    } else {
      rule.match = MockRule::Match::Substring;
    }
    rule.needle = rule_doc.value("needle", "");
    if (rule_doc.contains("responses")) {
      for (const auto& r : rule_doc["responses"])
        rule.responses.push_back(r.get<std::string>());
    } else {
      rule.responses.push_back(rule_doc.value("response", ""));
    }
    script.rules.push_back(std::move(rule));
  }
  return script;
}

MockScript MockScript::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mock script: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string MockTransport::send(const std::string& prompt,
                                const SamplingParams& sampling) {
  (void)sampling;
  int call_index;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    call_index = per_prompt_calls_[prompt]++;
    prompts_.push_back(prompt);
  }
  for (const auto& rule : script_.rules) {
    bool hit = false;
    switch (rule.match) {
      case MockRule::Match::Exact:
        hit = prompt == rule.needle;
        break;
      case MockRule::Match::Substring:
        hit = prompt.find(rule.needle) != std::string::npos;
        break;
      case MockRule::Match::Pattern:
        hit = std::regex_search(prompt, std::regex(rule.needle));
        break;
    }
    if (!hit) continue;
    if (rule.responses.empty()) return "";
    size_t index = std::min(static_cast<size_t>(call_index),
                            rule.responses.size() - 1);
    return rule.responses[index];
  }
  return script_.default_response;
}

int MockTransport::call_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return static_cast<int>(prompts_.size());
}

std::vector<std::string> MockTransport::prompts() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return prompts_;
}

MockGateway make_mock_gateway(MockScript script, ProviderConfig config) {
  auto transport = std::make_unique<MockTransport>(std::move(script));
  MockTransport* raw = transport.get();
  if (config.requests_per_minute < 100000) config.requests_per_minute = 100000;
  if (config.max_in_flight < 64) config.max_in_flight = 64;
  auto gateway =
      std::make_shared<Gateway>(std::move(config), std::move(transport));
  return MockGateway{gateway, raw};
}

}  // namespace vcodes::llm
