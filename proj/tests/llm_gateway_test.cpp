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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>

#include "http_fixture.hpp"
#include "reviewkit/llm_gateway.hpp"
#include "reviewkit/structured_review.hpp"

namespace reviewkit {
namespace {

ChatRequest request(std::string user, std::optional<std::uint64_t> seed = std::nullopt) {
  ChatRequest r;
  r.system_prompt = "system";
  r.user_prompt = std::move(user);
  r.seed = seed;
  return r;
}

GatewayOptions quiet(std::vector<long>* sleeps = nullptr) {
  GatewayOptions o;
  o.sleeper = [sleeps](std::chrono::milliseconds d) {
    if (sleeps) sleeps->push_back(d.count());
  };
  return o;
}

TEST(ScriptedProvider, StepsArePerContentNotPerArrival) {
  ScriptRule rule{"hello", std::nullopt, {{std::nullopt, "first"}, {std::nullopt, "second"}}};
  auto p = std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{rule});
  EXPECT_EQ(p->call(request("hello a")).text, "first");
  EXPECT_EQ(p->call(request("hello b")).text, "first");  // different content, own counter
  EXPECT_EQ(p->call(request("hello a")).text, "second");
  EXPECT_EQ(p->call(request("hello a")).text, "second");  // last step repeats
  EXPECT_EQ(p->call_count(), 4);
  EXPECT_THROW(p->call(request("unmatched")), TransportError);
}

TEST(ScriptedProvider, SeedScopedRules) {
  std::vector<ScriptRule> rules = {{"", 1, {{std::nullopt, "one"}}}, {"", std::nullopt, {{std::nullopt, "any"}}}};
  ScriptedProvider p(rules);
  EXPECT_EQ(p.call(request("x", 1)).text, "one");
  EXPECT_EQ(p.call(request("x", 2)).text, "any");
}

TEST(ScriptedProvider, FromJson) {
  auto p = scripted_provider_from_json(nlohmann::json::parse(R"({
    "rules": [{"contains": "judge", "responses": [{"fail": "throttle"}, "Answer: Review 2"]}],
    "fallback": "none"})"));
  EXPECT_THROW(p->call(request("judge me")), TransportError);
  EXPECT_EQ(p->call(request("judge me")).text, "Answer: Review 2");
  EXPECT_THROW(scripted_provider_from_json(nlohmann::json::parse(
                   R"({"rules": [{"responses": [{"fail": "bogus"}]}]})")),
               ParseError);
}

TEST(Gateway, RetriesRetryableFailuresWithBackoff) {
  ScriptRule rule{"", std::nullopt,
                  {{TransportClass::kTimeout, ""}, {TransportClass::kThrottle, ""}, {std::nullopt, "ok"}}};
  auto p = std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{rule});
  std::vector<long> sleeps;
  LlmGateway gw(p, quiet(&sleeps));
  std::vector<CallRecord> calls;
  auto r = gw.complete(request("q"), &calls);
  EXPECT_EQ(r.text, "ok");
  EXPECT_EQ(r.attempts, 3);
  EXPECT_EQ(sleeps, (std::vector<long>{500, 1000}));
  ASSERT_EQ(calls.size(), 3u);
  EXPECT_FALSE(calls[0].error.empty());
  EXPECT_TRUE(calls[2].error.empty());
}

TEST(Gateway, GivesUpAfterMaxAttempts) {
  ScriptRule rule{"", std::nullopt, {{TransportClass::kNetwork, ""}}};
  LlmGateway gw(std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{rule}), quiet());
  try {
    gw.complete(request("q"));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_EQ(e.transport_class(), TransportClass::kNetwork);
  }
}

TEST(Gateway, RejectedIsNotRetried) {
  ScriptRule rule{"", std::nullopt, {{TransportClass::kRejected, ""}, {std::nullopt, "never"}}};
  auto p = std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{rule});
  LlmGateway gw(p, quiet());
  EXPECT_THROW(gw.complete(request("q")), TransportError);
  EXPECT_EQ(p->call_count(), 1);
}

TEST(Gateway, RejectsInvalidRequests) {
  LlmGateway gw(ScriptedProvider::constant("x"), quiet());
  EXPECT_THROW(gw.complete(request("  ")), Error);
  auto r = request("q");
  r.temperature = 3.0;
  EXPECT_THROW(gw.complete(r), Error);
}

// Provider that records the peak number of concurrent calls.
class SlowProvider final : public ChatProvider {
 public:
  std::atomic<int> active{0}, peak{0};
  std::string name() const override { return "slow"; }
  ChatResponse call(const ChatRequest&) override {
    int now = ++active;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --active;
    return {"done", {}, {}, 1};
  }
};

TEST(Gateway, CapsConcurrentCalls) {
  auto p = std::make_shared<SlowProvider>();
  auto o = quiet();
  o.max_in_flight = 2;
  LlmGateway gw(p, o);
  std::vector<std::future<void>> fs;
  for (int i = 0; i < 8; ++i) {
    fs.push_back(std::async(std::launch::async, [&] { gw.complete(request("q")); }));
  }
  for (auto& f : fs) f.get();
  EXPECT_LE(p->peak.load(), 2);
  EXPECT_GE(p->peak.load(), 1);
}

TEST(Gateway, AuditLogRecordsEveryAttempt) {
  const auto path = std::filesystem::temp_directory_path() / "reviewkit_audit_test.jsonl";
  std::filesystem::remove(path);
  ScriptRule rule{"", std::nullopt, {{TransportClass::kTimeout, ""}, {std::nullopt, "ok"}}};
  auto o = quiet();
  o.audit = std::make_shared<AuditLog>(path);
  LlmGateway gw(std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{rule}), o);
  gw.complete(request("q"));
  std::ifstream in(path);
  std::string line;
  std::vector<nlohmann::json> entries;
  while (std::getline(in, line)) entries.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_TRUE(entries[0].contains("error"));
  EXPECT_EQ(entries[1]["output"], "ok");
  std::filesystem::remove(path);
}

TEST(CompleteParsed, CorrectiveRetryThenSuccess) {
  ScriptRule rule{"", std::nullopt, {{std::nullopt, "no tags here"}}};
  ScriptRule fixed{"could not be used", std::nullopt,
                   {{std::nullopt,
                     "<SUMMARY>\ns\n</SUMMARY>\n<ANALYZE>\nStrengths:\n- a\nWeaknesses:\n</ANALYZE>\n"
                     "<CONCLUDE>\nI recommend acceptance.\n</CONCLUDE>"}}};
  auto p = std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{fixed, rule});
  LlmGateway gw(p, quiet());
  auto parsed = complete_parsed<StructuredReview>(
      gw, request("review"), [](const std::string& t) { return parse_structured(t); }, 2);
  EXPECT_EQ(parsed.calls, 2);
  EXPECT_EQ(parsed.value.verdict, Verdict::kAccept);
  const auto h = p->history();
  ASSERT_EQ(h.size(), 2u);
  EXPECT_NE(h[1].user_prompt.find("could not be used"), std::string::npos);
  EXPECT_EQ(h[1].user_prompt.rfind("review", 0), 0u);
}

TEST(CompleteParsed, ExhaustionCarriesLastText) {
  LlmGateway gw(ScriptedProvider::constant("garbage"), quiet());
  try {
    complete_parsed<StructuredReview>(
        gw, request("review"), [](const std::string& t) { return parse_structured(t); }, 1);
    FAIL();
  } catch (const ParseExhaustedError& e) {
    EXPECT_EQ(e.calls(), 2);
    EXPECT_EQ(e.last_text(), "garbage");
  }
}

TEST(CompleteParsed, NonParseErrorsPropagate) {
  LlmGateway gw(ScriptedProvider::constant("x"), quiet());
  EXPECT_THROW(complete_parsed<int>(
                   gw, request("q"),
                   [](const std::string&) -> int { throw Error(ErrorKind::kIo, "disk"); }, 3),
               Error);
}

TEST(OpenAiProvider, TalksToCompatibleServer) {
  fixtures::LocalServer srv;
  nlohmann::json seen;
  std::string auth;
  srv.server().Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices": [{"message": {"role": "assistant", "content": "hi there"}}],
                        "usage": {"prompt_tokens": 7, "completion_tokens": 2}})",
                    "application/json");
  });
  OpenAiChatOptions o;
  o.endpoint = srv.base_url() + "/v1/";
  o.api_key = "sk-test";
  o.model = "test-model";
  auto provider = std::make_shared<OpenAiChatProvider>(o, make_http_transport());
  LlmGateway gw(provider, quiet());
  auto r = request("hello", 5);
  r.temperature = 0.3;
  auto resp = gw.complete(r);
  EXPECT_EQ(resp.text, "hi there");
  EXPECT_EQ(resp.usage.prompt_tokens, 7);
  EXPECT_EQ(auth, "Bearer sk-test");
  EXPECT_EQ(seen["model"], "test-model");
  EXPECT_EQ(seen["messages"][0]["role"], "system");
  EXPECT_EQ(seen["messages"][1]["content"], "hello");
  EXPECT_DOUBLE_EQ(seen["temperature"].get<double>(), 0.3);
  EXPECT_EQ(seen["seed"], 5);
}

TEST(OpenAiProvider, StatusCodesMapToTransportClasses) {
  int status = 429;
  auto transport = std::make_shared<fixtures::FakeTransport>(
      [&](const HttpRequest&, int) { return HttpResponse{status, "{}", {}}; });
  OpenAiChatProvider p({"http://x", "", "m", std::chrono::milliseconds(10)}, transport);
  auto cls = [&](int s) {
    status = s;
    try {
      p.call(request("q"));
    } catch (const TransportError& e) {
      return e.transport_class();
    }
    ADD_FAILURE() << "no error for " << s;
    return TransportClass::kNetwork;
  };
  EXPECT_EQ(cls(429), TransportClass::kThrottle);
  EXPECT_EQ(cls(503), TransportClass::kThrottle);
  EXPECT_EQ(cls(504), TransportClass::kTimeout);
  EXPECT_EQ(cls(500), TransportClass::kNetwork);
  EXPECT_EQ(cls(401), TransportClass::kRejected);
}

TEST(OpenAiProvider, MalformedResponseIsDecodeError) {
  EXPECT_THROW(decode_chat_response(R"({"choices": []})"), Error);
  EXPECT_THROW(decode_chat_response("nope"), Error);
}

TEST(SyntheticReply, ProducesParseableOutputs) {
  ChatRequest r;
  r.user_prompt = "Title: Graph nets\n\nAbstract: We study graphs.\n";
  r.seed = 3;
  auto review = parse_structured(synthetic_reply(r));
  EXPECT_NE(review.verdict, Verdict::kUndetermined);
  EXPECT_EQ(synthetic_reply(r), synthetic_reply(r));

  ChatRequest j;
  j.user_prompt = "Reference review written by a human reviewer:\nthe graph method\n\nReview 1:\n"
                  "graph method good\n\nReview 2:\nunrelated text\n\nWhich review is closer? "
                  "Reply \"Answer: Review 1\" or \"Answer: Review 2\".";
  EXPECT_NE(synthetic_reply(j).find("Answer: Review 1"), std::string::npos);
}

}  // namespace
}  // namespace reviewkit
