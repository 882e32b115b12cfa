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

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "test_support.hpp"
#include "vcodes/llm/mock.hpp"

using namespace vcodes;
using namespace vcodes::llm;

namespace {

// Transport scripted to fail N times before succeeding.
class FlakyTransport : public Transport {
 public:
  explicit FlakyTransport(int failures) : failures_(failures) {}
  std::string send(const std::string& prompt, const SamplingParams&) override {
    (void)prompt;
    if (failures_-- > 0) throw TransportFailure(true, false, "HTTP 500");
    return "ok";
  }

 private:
  int failures_;
};

class SlowCountingTransport : public Transport {
 public:
  std::string send(const std::string&, const SamplingParams&) override {
    int now = ++in_flight_;
    int seen = high_water_.load();
    while (now > seen && !high_water_.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
    --in_flight_;
    return "ok";
  }
  int high_water() const { return high_water_.load(); }

 private:
  std::atomic<int> in_flight_{0};
  std::atomic<int> high_water_{0};
};

}  // namespace

TEST_CASE("mock rules: exact match wins and repeats deterministically") {
  MockScript script;
  MockRule exact;
  exact.match = MockRule::Match::Exact;
  exact.needle = "ping";
  exact.responses = {"pong"};
  script.rules.push_back(exact);
  script.default_response = "default";
  MockGateway mock = make_mock_gateway(std::move(script));
  Completion first = mock.gateway->complete("ping", SamplingParams{});
  CHECK(first.text == "pong");
  CHECK(first.attempt == 1);
  CHECK(mock.gateway->complete("ping", SamplingParams{}).text == "pong");
  CHECK(mock.gateway->complete("other", SamplingParams{}).text == "default");
}

TEST_CASE("mock indexed responses vary by call count per prompt") {
  MockScript script;
  MockRule rule;
  rule.match = MockRule::Match::Substring;
  rule.needle = "sample";
  rule.responses = {"first", "second", "third"};
  script.rules.push_back(rule);
  MockGateway mock = make_mock_gateway(std::move(script));
  std::vector<SampleSlot> slots =
      mock.gateway->sample_n("sample me", SamplingParams{}, 5);
  REQUIRE(slots.size() == 5);
  CHECK(slots[0].completion->text == "first");
  CHECK(slots[1].completion->text == "second");
  CHECK(slots[2].completion->text == "third");
  CHECK(slots[3].completion->text == "third");  // sticks at the last entry
  CHECK(slots[4].completion->text == "third");
}

TEST_CASE("retry policy: two failures then success reports attempt 3") {
  ProviderConfig config;
  config.requests_per_minute = 100000;
  auto clock = std::make_shared<FakeClock>();
  Gateway gateway(config, std::make_unique<FlakyTransport>(2), clock);
  Completion completion = gateway.complete("x", SamplingParams{});
  CHECK(completion.attempt == 3);
  CHECK(completion.text == "ok");

  Gateway exhausted(config, std::make_unique<FlakyTransport>(99), clock);
  try {
    exhausted.complete("x", SamplingParams{});
    FAIL("expected ProviderError");
  } catch (const ProviderError& error) {
    CHECK(error.kind == ProviderError::Kind::ExhaustedRetries);
  }
}

TEST_CASE("http transport retries 5xx and parses the chat response") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/v1/chat/completions",
              [&](const httplib::Request&, httplib::Response& res) {
                if (++hits < 3) {
                  res.status = 500;
                  return;
                }
                res.set_content(
                    R"({"choices":[{"message":{"content":"hello from server"}}]})",
                    "application/json");
              });
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ProviderConfig config;
  config.name = "local";
  config.endpoint_url = "http://127.0.0.1:" + std::to_string(port);
  config.requests_per_minute = 100000;
  Gateway gateway(config, make_http_transport(config));
  Completion completion = gateway.complete("ping", SamplingParams{});
  CHECK(completion.text == "hello from server");
  CHECK(completion.attempt == 3);  // 500, 500, then 200

  server.stop();
  listener.join();
}

TEST_CASE("sample_n records per-slot failures") {
  ProviderConfig config;
  config.requests_per_minute = 100000;
  auto clock = std::make_shared<FakeClock>();
  // first three sends fail: slot 0 exhausts its retries, the rest succeed
  Gateway gateway(config, std::make_unique<FlakyTransport>(3), clock);
  std::vector<SampleSlot> slots = gateway.sample_n("p", SamplingParams{}, 5);
  REQUIRE(slots.size() == 5);
  CHECK(!slots[0].completion.has_value());
  CHECK(slots[0].error.find("exhausted") != std::string::npos);
  int completions = 0;
  for (const auto& slot : slots)
    if (slot.completion) ++completions;
  CHECK(completions == 4);
}

TEST_CASE("missing auth env var fails before any request") {
  ProviderConfig config;
  config.name = "real";
  config.endpoint_url = "http://127.0.0.1:1";  // would refuse connections
  config.auth_env_var = "VCODES_TEST_NO_SUCH_TOKEN";
  ::unsetenv("VCODES_TEST_NO_SUCH_TOKEN");
  Gateway gateway(config, make_http_transport(config));
  try {
    gateway.complete("x", SamplingParams{});
    FAIL("expected ProviderError");
  } catch (const ProviderError& error) {
    CHECK(error.kind == ProviderError::Kind::Auth);
  }
}

TEST_CASE("judge parses the first standalone answer token") {
  MockScript script;
  script.default_response = "The better summary is: A";
  MockGateway mock = make_mock_gateway(std::move(script));
  JudgeOutcome outcome = mock.gateway->judge("which?");
  CHECK(outcome.verdict == JudgeOutcome::Verdict::A);

  CHECK(parse_answer_token("clearly b wins", {"A", "B"}) ==
        JudgeOutcome::Verdict::B);
  CHECK(parse_answer_token("ABBA abba", {"A", "B"}) ==
        JudgeOutcome::Verdict::Invalid);
  CHECK(parse_answer_token("no token here", {"A", "B"}) ==
        JudgeOutcome::Verdict::Invalid);
  CHECK(parse_answer_token("yes, it matches", {"yes", "no"}) ==
        JudgeOutcome::Verdict::A);
}

TEST_CASE("sampling defaults match the documented settings") {
  SamplingParams defaults;
  CHECK(defaults.temperature == doctest::Approx(0.7));
  CHECK(defaults.top_k == 40);
  CHECK(defaults.repetition_penalty == doctest::Approx(1.2));
  SamplingParams plan = plan_formulation_profile();
  CHECK(plan.temperature == doctest::Approx(0.89));
  CHECK(plan.top_k == 50);
  SamplingParams judge = judge_profile();
  CHECK(judge.temperature == doctest::Approx(0.5));
  CHECK(judge.top_k == 40);
}

TEST_CASE("rate limiter: sliding window under a fake clock") {
  ProviderConfig config;
  config.requests_per_minute = 10;
  config.max_in_flight = 4;
  auto clock = std::make_shared<FakeClock>();
  auto transport = std::make_unique<SlowCountingTransport>();
  SlowCountingTransport* counter = transport.get();
  Gateway gateway(config, std::move(transport), clock);

  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 5; ++i) gateway.complete("p", SamplingParams{});
    });
  }
  for (auto& thread : threads) thread.join();

  std::vector<int64_t> stamps = gateway.sent_timestamps();
  REQUIRE(stamps.size() == 40);
  for (size_t i = 0; i < stamps.size(); ++i) {
    int in_window = 0;
    for (size_t j = 0; j < stamps.size(); ++j) {
      if (stamps[j] > stamps[i] - 60000 && stamps[j] <= stamps[i]) ++in_window;
    }
    CHECK(in_window <= config.requests_per_minute);
  }
  CHECK(counter->high_water() <= config.max_in_flight);
}

TEST_CASE("no secret leakage in completions or diagnostics") {
  const char* sentinel = "sentinel-token-3f9a17";
  ::setenv("VCODES_TEST_TOKEN", sentinel, 1);

  // Mock path: completions never embed the token.
  MockScript script;
  script.default_response = "plain response";
  MockGateway mock = make_mock_gateway(std::move(script));
  Completion completion = mock.gateway->complete("hello", SamplingParams{});
  CHECK(completion.text.find(sentinel) == std::string::npos);
  CHECK(completion.provider.find(sentinel) == std::string::npos);
  CHECK(completion.model_id.find(sentinel) == std::string::npos);

  // HTTP path: a connection error's diagnostics must not carry the token.
  ProviderConfig config;
  config.name = "real";
  config.endpoint_url = "http://127.0.0.1:1";
  config.auth_env_var = "VCODES_TEST_TOKEN";
  Gateway gateway(config, make_http_transport(config));
  try {
    gateway.complete("hello", SamplingParams{});
  } catch (const ProviderError& error) {
    CHECK(std::string(error.what()).find(sentinel) == std::string::npos);
  }
  ::unsetenv("VCODES_TEST_TOKEN");
}

TEST_CASE("mock script file round trip") {
  std::string scratch = testsupport::fresh_scratch_dir("mock");
  std::string path = scratch + "/script.json";
  {
    std::ofstream out(path);
    out << R"({"rules":[{"match":"substring","needle":"abc","response":"hit"}],)"
        << R"("default_response":"miss"})";
  }
  MockScript script = MockScript::load_file(path);
  MockGateway mock = make_mock_gateway(std::move(script));
  CHECK(mock.gateway->complete("xxabcxx", SamplingParams{}).text == "hit");
  CHECK(mock.gateway->complete("zzz", SamplingParams{}).text == "miss");
}
