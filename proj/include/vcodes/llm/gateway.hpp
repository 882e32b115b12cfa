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

#ifndef VCODES_LLM_GATEWAY_HPP
#define VCODES_LLM_GATEWAY_HPP

#include <atomic>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace vcodes::llm {

struct SamplingParams {
  double temperature = 0.7;
  int top_k = 40;
  double repetition_penalty = 1.2;
  int max_new_tokens = 1024;
  std::optional<uint64_t> seed;
};

// Alternate profile used for plan formulation when enabled.
inline SamplingParams plan_formulation_profile() {
  SamplingParams params;
  params.temperature = 0.89;
  params.top_k = 50;
  return params;
}

inline SamplingParams judge_profile() {
  SamplingParams params;
  params.temperature = 0.5;
  params.top_k = 40;
  return params;
}

enum class ApiStyle { OpenAiChat, Tgi };

struct ProviderConfig {
  std::string name = "mock";
  std::string endpoint_url;
  std::string model_id = "mock-model";
  std::string auth_env_var;  // token is read lazily and never stored
  double request_timeout_s = 120;
  int max_in_flight = 4;
  int requests_per_minute = 60;
  ApiStyle api_style = ApiStyle::OpenAiChat;
};

struct Completion {
  std::string text;
  std::string provider;
  std::string model_id;
  SamplingParams sampling;
  int64_t latency_ms = 0;
  int attempt = 1;
};

struct ProviderError : std::runtime_error {
  enum class Kind { Timeout, Http, Auth, ExhaustedRetries };
  ProviderError(Kind kind_, const std::string& detail_)
      : std::runtime_error("provider error (" + kind_name(kind_) + "): " +
                           detail_),
        kind(kind_),
        detail(detail_) {}
  static std::string kind_name(Kind kind) {
    switch (kind) {
      case Kind::Timeout: return "timeout";
      case Kind::Http: return "http";
      case Kind::Auth: return "auth";
      case Kind::ExhaustedRetries: return "exhausted_retries";
    }
    return "?";
  }
  Kind kind;
  std::string detail;
};

// Injectable clock so rate-limit policy is testable without waiting.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual int64_t now_ms() = 0;
  virtual void sleep_ms(int64_t ms) = 0;
};

std::shared_ptr<Clock> real_clock();

class FakeClock : public Clock {
 public:
  int64_t now_ms() override { return now_.load(); }
  void sleep_ms(int64_t ms) override {
    int64_t target = now_.load() + ms;
    int64_t current = now_.load();
    while (current < target && !now_.compare_exchange_weak(current, target)) {
    }
  }

 private:
  std::atomic<int64_t> now_{0};
};

// One attempt against a model endpoint (or its mock). Retry, rate limiting
// and concurrency policy live in the Gateway.
class Transport {
 public:
  virtual ~Transport() = default;
  struct Error {
    bool retryable;
    bool auth;
    std::string detail;
  };
  // Throws TransportFailure on errors.
  virtual std::string send(const std::string& prompt,
                           const SamplingParams& sampling) = 0;
};

struct TransportFailure : std::runtime_error {
  TransportFailure(bool retryable_, bool auth_, const std::string& detail_)
      : std::runtime_error(detail_), retryable(retryable_), auth(auth_) {}
  bool retryable;
  bool auth;
};

std::unique_ptr<Transport> make_http_transport(const ProviderConfig& config);

struct SampleSlot {
  std::optional<Completion> completion;
  std::string error;  // non-empty when the slot failed
};

struct JudgeOutcome {
  enum class Verdict { A, B, Invalid };
  Verdict verdict = Verdict::Invalid;
  std::string raw;
};

/// Uniform access to one provider: sliding-window rate limiting, an
/// in-flight cap, and up to 3 attempts with exponential backoff on
/// retryable failures. Safe for concurrent callers.
class Gateway {
 public:
  Gateway(ProviderConfig config, std::unique_ptr<Transport> transport,
          std::shared_ptr<Clock> clock = real_clock());

  Completion complete(const std::string& prompt, const SamplingParams& sampling);

  std::vector<SampleSlot> sample_n(const std::string& prompt,
                                   const SamplingParams& sampling, int n);

  // Parses the first standalone occurrence of either answer token
  // (case-insensitive); default tokens are "A"/"B".
  JudgeOutcome judge(const std::string& judge_prompt,
                     const std::vector<std::string>& answer_tokens = {"A", "B"});

  const ProviderConfig& config() const { return config_; }

  // Timestamps (clock ms) of sent requests, for rate-limit verification.
  std::vector<int64_t> sent_timestamps() const;

 private:
  void acquire_slot();
  void release_slot();
  void rate_limit_wait();

  ProviderConfig config_;
  std::unique_ptr<Transport> transport_;
  std::shared_ptr<Clock> clock_;

  mutable std::mutex mutex_;
  std::condition_variable slot_available_;
  int in_flight_ = 0;
  std::deque<int64_t> window_;
  std::vector<int64_t> sent_log_;
};

JudgeOutcome::Verdict parse_answer_token(
    const std::string& raw, const std::vector<std::string>& answer_tokens);

}  // namespace vcodes::llm

#endif  // VCODES_LLM_GATEWAY_HPP
