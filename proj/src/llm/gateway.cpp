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

#include "vcodes/llm/gateway.hpp"

#include <cctype>
#include <chrono>
#include <thread>

#include "vcodes/util/strutil.hpp"

namespace vcodes::llm {

namespace {

class RealClock : public Clock {
 public:
  int64_t now_ms() override {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  }
  void sleep_ms(int64_t ms) override {
    std::this_thread::sleep_for(std::chrono::milliseconds(ms));
  }
};

constexpr int kMaxAttempts = 3;
constexpr int64_t kBackoffBaseMs = 200;
constexpr int64_t kWindowMs = 60000;

}  // namespace

std::shared_ptr<Clock> real_clock() {
  static std::shared_ptr<Clock> instance = std::make_shared<RealClock>();
  return instance;
}

Gateway::Gateway(ProviderConfig config, std::unique_ptr<Transport> transport,
                 std::shared_ptr<Clock> clock)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      clock_(std::move(clock)) {}

void Gateway::acquire_slot() {
  std::unique_lock<std::mutex> lock(mutex_);
  slot_available_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
  ++in_flight_;
}

void Gateway::release_slot() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    --in_flight_;
  }
  slot_available_.notify_one();
}

void Gateway::rate_limit_wait() {
  for (;;) {
    int64_t wait_ms = 0;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      int64_t now = clock_->now_ms();
      while (!window_.empty() && window_.front() <= now - kWindowMs)
        window_.pop_front();
      if (static_cast<int>(window_.size()) < config_.requests_per_minute) {
        window_.push_back(now);
        sent_log_.push_back(now);
        return;
      }
      wait_ms = window_.front() + kWindowMs - now;
      if (wait_ms < 1) wait_ms = 1;
    }
    clock_->sleep_ms(wait_ms);
  }
}

Completion Gateway::complete(const std::string& prompt,
                             const SamplingParams& sampling) {
  acquire_slot();
  struct SlotGuard {
    Gateway* self;
    ~SlotGuard() { self->release_slot(); }
  } guard{this};

  int64_t start = clock_->now_ms();
  std::string last_error;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    rate_limit_wait();
    try {
      std::string text = transport_->send(prompt, sampling);
      Completion completion;
      completion.text = std::move(text);
      completion.provider = config_.name;
      completion.model_id = config_.model_id;
      completion.sampling = sampling;
      completion.latency_ms = clock_->now_ms() - start;
      completion.attempt = attempt;
      return completion;
    } catch (const TransportFailure& failure) {
      if (failure.auth)
        throw ProviderError(ProviderError::Kind::Auth, failure.what());
      if (!failure.retryable)
        throw ProviderError(ProviderError::Kind::Http, failure.what());
      last_error = failure.what();
      if (attempt < kMaxAttempts)
        clock_->sleep_ms(kBackoffBaseMs << (attempt - 1));
    }
  }
  throw ProviderError(ProviderError::Kind::ExhaustedRetries, last_error);
}

std::vector<SampleSlot> Gateway::sample_n(const std::string& prompt,
                                          const SamplingParams& sampling,
                                          int n) {
  if (n < 1) throw std::invalid_argument("sample_n requires n >= 1");
  std::vector<SampleSlot> slots(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    try {
      slots[static_cast<size_t>(i)].completion = complete(prompt, sampling);
    } catch (const ProviderError& error) {
      slots[static_cast<size_t>(i)].error = error.what();
    }
  }
  return slots;
}

JudgeOutcome::Verdict parse_answer_token(
    const std::string& raw, const std::vector<std::string>& answer_tokens) {
  std::string token;
  auto flush = [&](const std::string& word) -> std::optional<JudgeOutcome::Verdict> {
    if (word.empty()) return std::nullopt;
    for (size_t t = 0; t < answer_tokens.size() && t < 2; ++t) {
      if (word == to_lower(answer_tokens[t]))
        return t == 0 ? JudgeOutcome::Verdict::A : JudgeOutcome::Verdict::B;
    }
    return std::nullopt;
  };
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      if (auto verdict = flush(token)) return *verdict;
      token.clear();
    }
  }
  if (auto verdict = flush(token)) return *verdict;
  return JudgeOutcome::Verdict::Invalid;
}

JudgeOutcome Gateway::judge(const std::string& judge_prompt,
                            const std::vector<std::string>& answer_tokens) {
  Completion completion = complete(judge_prompt, judge_profile());
  JudgeOutcome outcome;
  outcome.raw = completion.text;
  outcome.verdict = parse_answer_token(completion.text, answer_tokens);
  return outcome;
}

std::vector<int64_t> Gateway::sent_timestamps() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return sent_log_;
}

}  // namespace vcodes::llm
