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

#include "reviewkit/llm_gateway.hpp"

#include <algorithm>

#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;

void validate_request(const ChatRequest& r) {
  if (trim(r.user_prompt).empty()) throw Error(ErrorKind::kArgument, "user prompt is empty");
  if (!(r.temperature >= 0.0 && r.temperature <= 2.0)) {
    throw Error(ErrorKind::kArgument, "temperature must lie in [0, 2]");
  }
  if (r.max_output_tokens <= 0) throw Error(ErrorKind::kArgument, "max_output_tokens must be positive");
}

OpenAiChatProvider::OpenAiChatProvider(OpenAiChatOptions options,
                                       std::shared_ptr<HttpTransport> transport)
    : options_(std::move(options)), transport_(std::move(transport)) {}

json OpenAiChatProvider::request_body(const ChatRequest& r) const {
  json messages = json::array();
  if (!r.system_prompt.empty()) messages.push_back({{"role", "system"}, {"content", r.system_prompt}});
  messages.push_back({{"role", "user"}, {"content", r.user_prompt}});
  json body = {{"model", r.model_name.empty() ? options_.model : r.model_name},
               {"messages", std::move(messages)},
               {"temperature", r.temperature},
               {"max_tokens", r.max_output_tokens}};
  if (r.seed) body["seed"] = *r.seed;
  return body;
}

ChatResponse decode_chat_response(std::string_view body) {
  ChatResponse out;
  try {
    const auto j = json::parse(body);
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw Error(ErrorKind::kDecode, "chat response content is not text");
    out.text = content.get<std::string>();
    if (auto u = j.find("usage"); u != j.end() && u->is_object()) {
      out.usage.prompt_tokens = u->value("prompt_tokens", 0);
      out.usage.completion_tokens = u->value("completion_tokens", 0);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kDecode, std::string("malformed chat response: ") + e.what());
  }
  return out;
}

ChatResponse OpenAiChatProvider::call(const ChatRequest& request) {
  std::string base = options_.endpoint;
  while (!base.empty() && base.back() == '/') base.pop_back();
  HttpRequest req;
  req.method = "POST";
  req.url = base + "/chat/completions";
  req.timeout = options_.timeout;
  if (!options_.api_key.empty()) req.headers["Authorization"] = "Bearer " + options_.api_key;
  req.body = request_body(request).dump();
  const auto start = std::chrono::steady_clock::now();
  const auto resp = transport_->send(req);
  throw_for_status(resp, "chat completion");
  auto out = decode_chat_response(resp.body);
  out.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return out;
}

ScriptedProvider::ScriptedProvider(std::vector<ScriptRule> rules, ReplyGenerator fallback,
                                   std::string name)
    : rules_(std::move(rules)), fallback_(std::move(fallback)), name_(std::move(name)) {}

std::shared_ptr<ScriptedProvider> ScriptedProvider::constant(std::string text) {
  return std::make_shared<ScriptedProvider>(
      std::vector<ScriptRule>{{"", std::nullopt, {{std::nullopt, std::move(text)}}}});
}

ChatResponse ScriptedProvider::call(const ChatRequest& request) {
  const std::string content = request.system_prompt + "\n" + request.user_prompt;
  std::uint64_t key = fnv1a64(content);
  if (request.seed) key ^= fnv1a64(std::to_string(*request.seed)) * 31;

  const ScriptStep* step = nullptr;
  {
    std::lock_guard lock(mu_);
    history_.push_back(request);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const auto& rule = rules_[i];
      if (rule.seed && rule.seed != request.seed) continue;
      if (content.find(rule.contains) == std::string::npos) continue;
      if (rule.steps.empty()) continue;
      const std::size_t n = seen_[{i, key}]++;
      step = &rule.steps[std::min(n, rule.steps.size() - 1)];
      break;
    }
  }
  ChatResponse out;
  if (step) {
    if (step->failure) throw TransportError(*step->failure, "scripted failure");
    out.text = step->text;
  } else if (fallback_) {
    out.text = fallback_(request);
  } else {
    throw TransportError(TransportClass::kRejected, "no script rule matches the request");
  }
  out.usage.prompt_tokens = static_cast<int>(tokenize(content).size());
  out.usage.completion_tokens = static_cast<int>(tokenize(out.text).size());
  return out;
}

int ScriptedProvider::call_count() const {
  std::lock_guard lock(mu_);
  return static_cast<int>(history_.size());
}

std::vector<ChatRequest> ScriptedProvider::history() const {
  std::lock_guard lock(mu_);
  return history_;
}

namespace {

TransportClass parse_transport_class(const std::string& name) {
  for (auto cls : {TransportClass::kTimeout, TransportClass::kThrottle, TransportClass::kNetwork,
                   TransportClass::kRejected}) {
    if (name == to_string(cls)) return cls;
  }
  throw ParseError(0, "unknown failure class '" + name + "' in mock script");
}

}  // namespace

std::shared_ptr<ScriptedProvider> scripted_provider_from_json(const json& script, std::string name) {
  std::vector<ScriptRule> rules;
  try {
    for (const auto& r : script.value("rules", json::array())) {
      ScriptRule rule;
      rule.contains = r.value("contains", "");
      if (r.contains("seed") && !r["seed"].is_null()) rule.seed = r["seed"].get<std::uint64_t>();
      for (const auto& s : r.at("responses")) {
        if (s.is_string()) {
          rule.steps.push_back({std::nullopt, s.get<std::string>()});
        } else {
          rule.steps.push_back({parse_transport_class(s.at("fail").get<std::string>()), ""});
        }
      }
      rules.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed mock script: ") + e.what());
  }
  ReplyGenerator fallback;
  const auto mode = script.value("fallback", std::string("synthetic"));
  if (mode == "synthetic") fallback = synthetic_reply;
  else if (mode != "none") throw ParseError(0, "mock script fallback must be synthetic or none");
  return std::make_shared<ScriptedProvider>(std::move(rules), std::move(fallback), std::move(name));
}

AuditLog::AuditLog(const std::filesystem::path& path) : out_(path, std::ios::app) {
  if (!out_) throw Error(ErrorKind::kIo, "cannot open audit log " + path.string());
}

void AuditLog::append(const json& entry) {
  std::lock_guard lock(mu_);
  out_ << entry.dump() << '\n';
  out_.flush();
}

json to_json(const CallRecord& r) {
  json j = {{"attempt", r.attempt},
            {"prompt_hash", r.prompt_hash},
            {"prompt_chars", r.prompt_chars},
            {"response_chars", r.response_chars}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

LlmGateway::LlmGateway(std::shared_ptr<ChatProvider> provider, GatewayOptions options)
    : provider_(std::move(provider)),
      options_(std::move(options)),
      slots_(std::max(1, options_.max_in_flight)) {
  if (options_.retry.max_attempts < 1) {
    throw Error(ErrorKind::kArgument, "retry policy needs max_attempts >= 1");
  }
}

ChatResponse LlmGateway::complete(const ChatRequest& request, std::vector<CallRecord>* calls) {
  validate_request(request);
  const std::uint64_t hash = fnv1a64(request.system_prompt + "\n" + request.user_prompt);
  const std::size_t chars = request.system_prompt.size() + request.user_prompt.size();
  const auto& policy = options_.retry;

  for (int attempt = 1;; ++attempt) {
    CallRecord record{attempt, hash, chars, 0, {}};
    try {
      ChatResponse response;
      {
        slots_.acquire();
        struct Release {
          std::counting_semaphore<>& s;
          ~Release() { s.release(); }
        } release{slots_};
        response = provider_->call(request);
      }
      response.attempts = attempt;
      record.response_chars = response.text.size();
      if (calls) calls->push_back(record);
      if (options_.audit) {
        options_.audit->append({{"provider", provider_->name()},
                                {"model", request.model_name},
                                {"attempt", attempt},
                                {"system_prompt", request.system_prompt},
                                {"user_prompt", request.user_prompt},
                                {"output", response.text},
                                {"prompt_tokens", response.usage.prompt_tokens},
                                {"completion_tokens", response.usage.completion_tokens},
                                {"latency_ms", response.latency.count()}});
      }
      return response;
    } catch (const TransportError& e) {
      record.error = std::string(to_string(e.transport_class())) + ": " + e.what();
      if (calls) calls->push_back(record);
      if (options_.audit) {
        options_.audit->append({{"provider", provider_->name()},
                                {"model", request.model_name},
                                {"attempt", attempt},
                                {"user_prompt", request.user_prompt},
                                {"error", record.error}});
      }
      const bool retryable = policy.retryable.count(e.transport_class()) != 0;
      if (!retryable || attempt >= policy.max_attempts) {
        throw TransportError(e.transport_class(),
                             provider_->name() + " failed after " + std::to_string(attempt) +
                                 " attempt(s): " + e.what(),
                             attempt);
      }
      auto delay = policy.backoff_base;
      for (int i = 1; i < attempt && delay < policy.backoff_cap; ++i) delay *= 2;
      options_.sleeper(std::min(delay, policy.backoff_cap));
    }
  }
}

std::string corrective_instruction(std::string_view parse_error) {
  return "\n\nYour previous reply could not be used (" + std::string(parse_error) +
         "). Reply again and follow the required output format exactly.";
}

bool is_parse_failure(const Error& e) noexcept {
  switch (e.kind()) {
    case ErrorKind::kParse:
    case ErrorKind::kStructure:
    case ErrorKind::kContent:
    case ErrorKind::kJudge:
      return true;
    default:
      return false;
  }
}

}  // namespace reviewkit
