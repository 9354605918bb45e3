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

#include <functional>
#include <mutex>

#include "reviewkit/arena.hpp"
#include "reviewkit/error.hpp"

namespace reviewkit {
namespace {

std::string slice(const std::string& s, const std::string& from, const std::string& to) {
  const auto b = s.find(from);
  if (b == std::string::npos) return {};
  const auto start = b + from.size();
  return s.substr(start, s.find(to, start) - start);
}

// Judge double deciding from the two candidate texts as presented.
class FnJudge final : public ChatProvider {
 public:
  using Decide = std::function<std::string(const std::string& first, const std::string& second)>;
  explicit FnJudge(Decide d) : decide_(std::move(d)) {}
  std::string name() const override { return "fn-judge"; }
  ChatResponse call(const ChatRequest& r) override {
    {
      std::lock_guard lock(mu_);
      ++calls;
    }
    const auto first = slice(r.user_prompt, "\n\nReview 1:\n", "\n\nReview 2:\n");
    const auto second = slice(r.user_prompt, "\n\nReview 2:\n", "\n\nWhich review");
    ChatResponse out;
    out.text = decide_(first, second);
    return out;
  }
  int calls = 0;

 private:
  Decide decide_;
  std::mutex mu_;
};

GatewayOptions quick() {
  GatewayOptions o;
  o.sleeper = [](std::chrono::milliseconds) {};
  return o;
}

int quality(const std::string& text) { return std::stoi(slice(text, "quality ", ".")); }

std::string by_quality(const std::string& a, const std::string& b) {
  return quality(a) >= quality(b) ? "Better.\nAnswer: Review 1" : "Better.\nAnswer: Review 2";
}

ArenaPair make_pair(std::string a, std::string b) {
  return {"p", "The reference review.", {"model-a", std::move(a)}, {"model-b", std::move(b)}};
}

TEST(ArenaCombine, TruthTable) {
  EXPECT_EQ(combine_verdicts(Slot::kA, Slot::kA), ArenaResult::kAWins);
  EXPECT_EQ(combine_verdicts(Slot::kB, Slot::kB), ArenaResult::kBWins);
  EXPECT_EQ(combine_verdicts(Slot::kA, Slot::kB), ArenaResult::kSplit);
  EXPECT_EQ(combine_verdicts(Slot::kB, Slot::kA), ArenaResult::kSplit);
}

TEST(ArenaParse, AnswerLines) {
  EXPECT_EQ(parse_judge_answer("Answer: Review 2"), 2);
  EXPECT_EQ(parse_judge_answer("reasoning...\nanswer: **Review 1**"), 1);
  EXPECT_EQ(parse_judge_answer("Answer: Review 1\nOn reflection.\nAnswer: Review 2"), 2);
  try {
    parse_judge_answer("Both are fine.");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kJudge);
  }
}

TEST(ArenaJudge, RequestPlacesReferenceAndOrdering) {
  const auto pair = make_pair("text A", "text B");
  const auto fwd = build_judge_request(pair, Ordering::kForward, {});
  const auto rev = build_judge_request(pair, Ordering::kReversed, {});
  EXPECT_EQ(slice(fwd.user_prompt, "\n\nReview 1:\n", "\n\nReview 2:\n"), "text A");
  EXPECT_EQ(slice(rev.user_prompt, "\n\nReview 1:\n", "\n\nReview 2:\n"), "text B");
  EXPECT_LT(fwd.user_prompt.find("The reference review."), fwd.user_prompt.find("Review 1:"));
  EXPECT_DOUBLE_EQ(fwd.temperature, kJudgeTemperature);
}

TEST(ArenaJudge, MapsSlotsBackToEntries) {
  auto provider = std::make_shared<FnJudge>(by_quality);
  LlmGateway gw(provider, quick());
  const auto pair = make_pair("quality 1.", "quality 5.");
  EXPECT_EQ(judge_pair(gw, pair, Ordering::kForward).preferred, Slot::kB);
  EXPECT_EQ(judge_pair(gw, pair, Ordering::kReversed).preferred, Slot::kB);
}

TEST(ArenaJudge, RejectsInvalidPairs) {
  auto provider = std::make_shared<FnJudge>(by_quality);
  LlmGateway gw(provider, quick());
  EXPECT_THROW(judge_pair(gw, make_pair("", "x"), Ordering::kForward), Error);
  auto same = make_pair("x", "y");
  same.entry_b.label = same.entry_a.label;
  EXPECT_THROW(judge_pair(gw, same, Ordering::kForward), Error);
  EXPECT_EQ(provider->calls, 0);
}

TEST(ArenaJudge, UnparseableAfterRetriesIsJudgeError) {
  auto provider = std::make_shared<FnJudge>([](const std::string&, const std::string&) {
    return std::string("I cannot decide.");
  });
  LlmGateway gw(provider, quick());
  try {
    judge_pair(gw, make_pair("a", "b"), Ordering::kForward);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kJudge);
  }
  EXPECT_EQ(provider->calls, 2);  // one corrective retry
}

TEST(ArenaPair, PositionalJudgeAlwaysSplits) {
  auto provider = std::make_shared<FnJudge>([](const std::string&, const std::string&) {
    return std::string("Answer: Review 1");
  });
  LlmGateway gw(provider, quick());
  const auto out = evaluate_pair(gw, make_pair("x", "y"));
  EXPECT_EQ(out.result, ArenaResult::kSplit);
  EXPECT_EQ(provider->calls, 2);

  const ModelReviews entries = {{"m1", {{"p1", "x"}, {"p2", "y"}}}, {"m2", {{"p1", "z"}, {"p2", "w"}}}};
  const auto t = tournament(gw, entries, {{"p1", "r"}, {"p2", "r"}}, {"p1", "p2"});
  ASSERT_EQ(t.table.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(t.table.find("m1")->win_rate, 50.0);
  EXPECT_DOUBLE_EQ(t.table.find("m2")->win_rate, 50.0);
}

TEST(ArenaPair, ConsistentPreferenceWins) {
  auto provider = std::make_shared<FnJudge>(by_quality);
  LlmGateway gw(provider, quick());
  EXPECT_EQ(evaluate_pair(gw, make_pair("quality 9.", "quality 1.")).result, ArenaResult::kAWins);
  EXPECT_EQ(evaluate_pair(gw, make_pair("quality 1.", "quality 9.")).result, ArenaResult::kBWins);
}

// x, y, z on two papers with a judge that always picks the higher quality.
// p1: x > y > z; p2: y > z > x. Hand tally: x 2 of 4, y 3 of 4, z 1 of 4.
TEST(ArenaTournament, HandTalliedRoundRobin) {
  const ModelReviews entries = {{"x", {{"p1", "quality 3."}, {"p2", "quality 1."}}},
                                {"y", {{"p1", "quality 2."}, {"p2", "quality 3."}}},
                                {"z", {{"p1", "quality 1."}, {"p2", "quality 2."}}}};
  const std::map<std::string, std::string> refs = {{"p1", "ref one"}, {"p2", "ref two"}};
  for (std::size_t jobs : {1u, 4u}) {
    auto provider = std::make_shared<FnJudge>(by_quality);
    LlmGateway gw(provider, quick());
    TournamentOptions opts;
    opts.jobs = jobs;
    const auto t = tournament(gw, entries, refs, {"p1", "p2"}, opts);
    EXPECT_EQ(provider->calls, 12);  // 3 pairs x 2 papers x 2 orderings
    ASSERT_EQ(t.outcomes.size(), 6u);
    ASSERT_EQ(t.table.rows.size(), 3u);
    EXPECT_EQ(t.table.rows[0].model, "y");
    EXPECT_DOUBLE_EQ(t.table.rows[0].win_rate, 75.0);
    EXPECT_EQ(t.table.rows[1].model, "x");
    EXPECT_DOUBLE_EQ(t.table.rows[1].win_rate, 50.0);
    EXPECT_EQ(t.table.rows[2].model, "z");
    EXPECT_DOUBLE_EQ(t.table.rows[2].win_rate, 25.0);
    double wins = 0;
    for (const auto& r : t.table.rows) {
      EXPECT_EQ(r.comparisons, 4);
      wins += r.wins;
    }
    EXPECT_DOUBLE_EQ(wins, 6.0);  // one unit of credit per comparison
  }
}

TEST(ArenaTournament, SwappingSidesLeavesTableUnchanged) {
  const ModelReviews entries = {{"x", {{"p1", "quality 3."}, {"p2", "quality 1."}}},
                                {"y", {{"p1", "quality 2."}, {"p2", "quality 3."}}},
                                {"z", {{"p1", "quality 1."}, {"p2", "quality 1."}}}};
  const std::map<std::string, std::string> refs = {{"p1", "r"}, {"p2", "r"}};
  auto provider = std::make_shared<FnJudge>(by_quality);
  LlmGateway gw(provider, quick());
  TournamentOptions swapped;
  swapped.swap_sides = true;
  const auto a = tournament(gw, entries, refs, {"p1", "p2"});
  const auto b = tournament(gw, entries, refs, {"p1", "p2"}, swapped);
  EXPECT_EQ(to_json(a.table), to_json(b.table));
}

TEST(ArenaTournament, MixedResultsConserveCredit) {
  // Ties in quality make the judge positional, which yields splits.
  const ModelReviews entries = {{"a", {{"p1", "quality 2."}}},
                                {"b", {{"p1", "quality 2."}}},
                                {"c", {{"p1", "quality 1."}}}};
  auto provider = std::make_shared<FnJudge>(by_quality);
  LlmGateway gw(provider, quick());
  const auto t = tournament(gw, entries, {{"p1", "r"}}, {"p1"});
  EXPECT_DOUBLE_EQ(t.table.find("a")->wins, 1.5);
  EXPECT_DOUBLE_EQ(t.table.find("b")->wins, 1.5);
  EXPECT_DOUBLE_EQ(t.table.find("c")->wins, 0.0);
  EXPECT_EQ(to_json(tally(t.outcomes)), to_json(t.table));
}

TEST(ArenaTournament, CoverageAndArgumentErrors) {
  auto provider = std::make_shared<FnJudge>(by_quality);
  LlmGateway gw(provider, quick());
  const ModelReviews one = {{"x", {{"p1", "quality 1."}}}};
  EXPECT_THROW(tournament(gw, one, {{"p1", "r"}}, {"p1"}), Error);

  const ModelReviews gap = {{"x", {{"p1", "quality 1."}}}, {"y", {}}};
  try {
    tournament(gw, gap, {{"p1", "r"}}, {"p1"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCoverage);
    EXPECT_NE(std::string(e.what()).find("y"), std::string::npos);
  }
  const ModelReviews full = {{"x", {{"p1", "quality 1."}}}, {"y", {{"p1", "quality 2."}}}};
  try {
    tournament(gw, full, {}, {"p1"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCoverage);
  }
}

TEST(ArenaJson, OutcomeFields) {
  auto provider = std::make_shared<FnJudge>(by_quality);
  LlmGateway gw(provider, quick());
  const auto j = to_json(evaluate_pair(gw, make_pair("quality 4.", "quality 2.")));
  EXPECT_EQ(j.at("paper_id"), "p");
  EXPECT_EQ(j.at("result"), to_string(ArenaResult::kAWins));
}

}  // namespace
}  // namespace reviewkit
