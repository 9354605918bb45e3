// Copyright 2026 The reviewkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "reviewkit/error.hpp"
#include "reviewkit/http.hpp"
#include "reviewkit/retrieval.hpp"

namespace reviewkit {

inline constexpr double kReviewerTemperature = 0.7;
inline constexpr double kJudgeTemperature = 0.3;

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;
  double temperature = kReviewerTemperature;
  int max_output_tokens = 2048;
  std::string model_name;
  std::optional<std::uint64_t> seed;
};

// Throws Error(kArgument) unless user_prompt is non-empty, temperature lies
// in [0, 2] and max_output_tokens is positive.
void validate_request(const ChatRequest& request);

struct TokenUsage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
};

struct ChatResponse {
  std::string text;
  TokenUsage usage;
  std::chrono::milliseconds latency{0};
  int attempts = 1;
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual std::string name() const = 0;
  // One attempt. Failures throw TransportError.
  virtual ChatResponse call(const ChatRequest& request) = 0;
};

struct OpenAiChatOptions {
  std::string endpoint;  // base URL; requests go to {endpoint}/chat/completions
  std::string api_key;
  std::string model;
  std::chrono::milliseconds timeout{120000};
};

// OpenAI-compatible chat-completions client.
class OpenAiChatProvider final : public ChatProvider {
 public:
  OpenAiChatProvider(OpenAiChatOptions options, std::shared_ptr<HttpTransport> transport);
  std::string name() const override { return "openai:" + options_.model; }
  ChatResponse call(const ChatRequest& request) override;

  nlohmann::json request_body(const ChatRequest& request) const;

 private:
  OpenAiChatOptions options_;
  std::shared_ptr<HttpTransport> transport_;
};

// Extracts choices[0].message.content and usage; throws Error(kDecode).
ChatResponse decode_chat_response(std::string_view body);

struct ScriptStep {
  std::optional<TransportClass> failure;  // set: this step fails
  std::string text;
};

// Steps are consumed per distinct request (system, user, seed): the n-th
// identical request gets step n, and the last step repeats.
struct ScriptRule {
  std::string contains;  // substring of system_prompt + "\n" + user_prompt
  std::optional<std::uint64_t> seed;
  std::vector<ScriptStep> steps;
};

using ReplyGenerator = std::function<std::string(const ChatRequest&)>;

// Deterministic test double. The reply depends only on request content and
// how often that exact content was seen before, never on arrival order.
class ScriptedProvider final : public ChatProvider {
 public:
  explicit ScriptedProvider(std::vector<ScriptRule> rules, ReplyGenerator fallback = {},
                            std::string name = "mock");

  // Every request answered with `text`.
  static std::shared_ptr<ScriptedProvider> constant(std::string text);

  std::string name() const override { return name_; }
  ChatResponse call(const ChatRequest& request) override;

  int call_count() const;
  std::vector<ChatRequest> history() const;

 private:
  std::vector<ScriptRule> rules_;
  ReplyGenerator fallback_;
  std::string name_;
  mutable std::mutex mu_;
  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> seen_;
  std::vector<ChatRequest> history_;
};

// {"rules": [{"contains": "...", "seed": 1, "responses": ["text", {"fail": "throttle"}]}],
//  "fallback": "synthetic" | "none"}
std::shared_ptr<ScriptedProvider> scripted_provider_from_json(const nlohmann::json& script,
                                                              std::string name = "mock");

// Offline reply generator for the default prompt templates: produces a
// well-formed reviewer review, area-chair meta-review, transcription or
// judge answer derived from the prompt content alone.
std::string synthetic_reply(const ChatRequest& request);

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{500};
  std::chrono::milliseconds backoff_cap{8000};
  std::set<TransportClass> retryable{TransportClass::kTimeout, TransportClass::kThrottle,
                                     TransportClass::kNetwork};
};

// Appends one JSON object per provider call. Thread-safe.
class AuditLog {
 public:
  explicit AuditLog(const std::filesystem::path& path);
  void append(const nlohmann::json& entry);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

struct GatewayOptions {
  RetryPolicy retry;
  int max_in_flight = 4;
  std::shared_ptr<AuditLog> audit;
  Sleeper sleeper = real_sleeper();
};

// Record of one provider attempt, kept for pipeline transcripts.
struct CallRecord {
  int attempt = 0;
  std::uint64_t prompt_hash = 0;
  std::size_t prompt_chars = 0;
  std::size_t response_chars = 0;
  std::string error;  // empty on success
};

nlohmann::json to_json(const CallRecord& record);

// Retrying, concurrency-capped front end for one provider.
class LlmGateway {
 public:
  explicit LlmGateway(std::shared_ptr<ChatProvider> provider, GatewayOptions options = {});

  // Returns the provider text verbatim. Retries retryable transport errors
  // up to retry.max_attempts; throws the last TransportError otherwise.
  ChatResponse complete(const ChatRequest& request, std::vector<CallRecord>* calls = nullptr);

  const ChatProvider& provider() const noexcept { return *provider_; }
  const RetryPolicy& retry_policy() const noexcept { return options_.retry; }

 private:
  std::shared_ptr<ChatProvider> provider_;
  GatewayOptions options_;
  std::counting_semaphore<> slots_;
};

// Instruction appended to the user prompt after an unparseable reply.
std::string corrective_instruction(std::string_view parse_error);

template <class T>
struct Parsed {
  T value;
  int calls = 0;
  std::string raw_text;
};

// Errors the parser may throw to request a corrective retry.
bool is_parse_failure(const Error& e) noexcept;

// Calls the provider, parses the reply and, on a parse failure, re-asks with
// a corrective instruction up to max_parse_retries times. Throws
// ParseExhaustedError when no reply parses.
template <class T, class Parser>
Parsed<T> complete_parsed(LlmGateway& gateway, const ChatRequest& request, Parser&& parser,
                          int max_parse_retries, std::vector<CallRecord>* calls = nullptr) {
  if (max_parse_retries < 0) throw Error(ErrorKind::kArgument, "max_parse_retries must be >= 0");
  ChatRequest current = request;
  std::string last_text;
  std::string last_error;
  for (int round = 0; round <= max_parse_retries; ++round) {
    auto response = gateway.complete(current, calls);
    last_text = response.text;
    try {
      return Parsed<T>{parser(response.text), round + 1, std::move(response.text)};
    } catch (const Error& e) {
      if (!is_parse_failure(e)) throw;
      last_error = e.what();
      if (calls && !calls->empty()) calls->back().error = "unparseable: " + last_error;
    }
    current = request;
    current.user_prompt += corrective_instruction(last_error);
  }
  throw ParseExhaustedError(max_parse_retries + 1, last_text, last_error);
}

}  // namespace reviewkit
