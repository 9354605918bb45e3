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

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "reviewkit/llm_gateway.hpp"
#include "reviewkit/templates.hpp"

namespace reviewkit {

struct ArenaEntry {
  std::string label;  // model name
  std::string text;
};

struct ArenaPair {
  std::string paper_id;
  std::string human_reference;
  ArenaEntry entry_a;
  ArenaEntry entry_b;
};

enum class Slot { kA, kB };
enum class Ordering { kForward, kReversed };
enum class ArenaResult { kAWins, kBWins, kSplit };

const char* to_string(Slot s) noexcept;
const char* to_string(Ordering o) noexcept;
const char* to_string(ArenaResult r) noexcept;

struct JudgeVerdict {
  Slot preferred = Slot::kA;
  std::string rationale;
  Ordering ordering = Ordering::kForward;
};

struct ArenaOutcome {
  ArenaPair pair;
  JudgeVerdict forward;
  JudgeVerdict reversed;
  ArenaResult result = ArenaResult::kSplit;
};

// a_wins iff both orderings prefer A, b_wins iff both prefer B.
ArenaResult combine_verdicts(Slot forward, Slot reversed) noexcept;

struct JudgeOptions {
  PromptTemplates templates = default_templates();
  double temperature = kJudgeTemperature;
  std::string model;
  int max_parse_retries = 1;
};

// Slot number (1 or 2) from the last "Answer: Review N" line; throws
// Error(kJudge) when the reply has none.
int parse_judge_answer(std::string_view reply);

ChatRequest build_judge_request(const ArenaPair& pair, Ordering ordering,
                                const JudgeOptions& options);

// Reference first, then the candidates as "Review 1"/"Review 2" in the given
// ordering; the answer is mapped back to A/B.
JudgeVerdict judge_pair(LlmGateway& judge, const ArenaPair& pair, Ordering ordering,
                        const JudgeOptions& options = {});

// Exactly two judge calls, forward then reversed.
ArenaOutcome evaluate_pair(LlmGateway& judge, const ArenaPair& pair,
                           const JudgeOptions& options = {});

struct WinRateRow {
  std::string model;
  double wins = 0.0;
  int comparisons = 0;
  double win_rate = 0.0;  // 100 * wins / comparisons
};

// Rows sorted by win_rate descending, then model name.
struct WinRateTable {
  std::vector<WinRateRow> rows;
  const WinRateRow* find(std::string_view model) const;
};

nlohmann::json to_json(const WinRateTable& table);
nlohmann::json to_json(const ArenaOutcome& outcome);

// model label -> paper id -> review text
using ModelReviews = std::map<std::string, std::map<std::string, std::string>>;

struct TournamentOptions {
  JudgeOptions judge;
  std::size_t jobs = 1;
  bool swap_sides = false;  // present every pair with entries exchanged
};

struct TournamentResult {
  WinRateTable table;
  std::vector<ArenaOutcome> outcomes;  // in paper order, then model-pair order
};

// Round robin: every unordered model pair on every paper, double-judged.
// Splits credit half a win to each side. Throws Error(kCoverage) naming the
// model and paper when a review or reference is missing.
TournamentResult tournament(LlmGateway& judge, const ModelReviews& entries,
                            const std::map<std::string, std::string>& references,
                            const std::vector<std::string>& papers,
                            const TournamentOptions& options = {});

// Win-rate table from finished outcomes.
WinRateTable tally(const std::vector<ArenaOutcome>& outcomes);

}  // namespace reviewkit
