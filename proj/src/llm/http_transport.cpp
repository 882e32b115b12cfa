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

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "vcodes/llm/gateway.hpp"

namespace vcodes::llm {

namespace {

class HttpTransport : public Transport {
 public:
  explicit HttpTransport(ProviderConfig config) : config_(std::move(config)) {}

  std::string send(const std::string& prompt,
                   const SamplingParams& sampling) override {
    // The token is read per request from the environment and only placed in
    // the request header; it is never stored or logged.
    std::string token;
    if (!config_.auth_env_var.empty()) {
      const char* value = std::getenv(config_.auth_env_var.c_str());
      if (value == nullptr || *value == '\0')
        throw TransportFailure(false, true,
                               "auth env var " + config_.auth_env_var +
                                   " is not set");
      token = value;
    }

    httplib::Client client(config_.endpoint_url);
    client.set_connection_timeout(static_cast<time_t>(config_.request_timeout_s),
                                  0);
    client.set_read_timeout(static_cast<time_t>(config_.request_timeout_s), 0);
    httplib::Headers headers;
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

    nlohmann::json body;
    std::string path;
    if (config_.api_style == ApiStyle::OpenAiChat) {
      path = "/v1/chat/completions";
      body["model"] = config_.model_id;
      body["messages"] = nlohmann::json::array(
          {{{"role", "user"}, {"content", prompt}}});
      body["temperature"] = sampling.temperature;
      body["top_k"] = sampling.top_k;
      body["repetition_penalty"] = sampling.repetition_penalty;
      body["max_tokens"] = sampling.max_new_tokens;
      if (sampling.seed) body["seed"] = *sampling.seed;
    } else {
      path = "/generate";
      body["inputs"] = prompt;
      nlohmann::json params;
      params["temperature"] = sampling.temperature;
      params["top_k"] = sampling.top_k;
      params["repetition_penalty"] = sampling.repetition_penalty;
      params["max_new_tokens"] = sampling.max_new_tokens;
      if (sampling.seed) params["seed"] = *sampling.seed;
      body["parameters"] = params;
    }

    auto result = client.Post(path, headers, body.dump(), "application/json");
    if (!result) {
      auto err = result.error();
      bool timeout = err == httplib::Error::ConnectionTimeout ||
                     err == httplib::Error::Read || err == httplib::Error::Write;
      throw TransportFailure(true, false,
                             std::string("transport failure: ") +
                                 httplib::to_string(err) +
                                 (timeout ? " (timeout)" : ""));
    }
    if (result->status == 401 || result->status == 403)
      throw TransportFailure(false, true,
                             "authentication rejected (HTTP " +
                                 std::to_string(result->status) + ")");
    if (result->status == 429 || result->status >= 500)
      throw TransportFailure(true, false,
                             "HTTP " + std::to_string(result->status));
    if (result->status != 200)
      throw TransportFailure(false, false,
                             "HTTP " + std::to_string(result->status));

    try {
      nlohmann::json doc = nlohmann::json::parse(result->body);
      if (config_.api_style == ApiStyle::OpenAiChat)
        return doc.at("choices").at(0).at("message").at("content")
            .get<std::string>();
      return doc.at("generated_text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw TransportFailure(false, false,
                             std::string("malformed response: ") + e.what());
    }
  }

 private:
  ProviderConfig config_;
};

}  // namespace

std::unique_ptr<Transport> make_http_transport(const ProviderConfig& config) {
  return std::make_unique<HttpTransport>(config);
}

}  // namespace vcodes::llm
