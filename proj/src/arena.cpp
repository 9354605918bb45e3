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

#include "reviewkit/arena.hpp"

#include <algorithm>
#include <future>
#include <regex>

#include "reviewkit/error.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;

const char* to_string(Slot s) noexcept { return s == Slot::kA ? "A" : "B"; }
const char* to_string(Ordering o) noexcept {
  return o == Ordering::kForward ? "forward" : "reversed";
}
const char* to_string(ArenaResult r) noexcept {
  switch (r) {
    case ArenaResult::kAWins: return "a_wins";
    case ArenaResult::kBWins: return "b_wins";
    case ArenaResult::kSplit: return "split";
  }
  return "split";
}

ArenaResult combine_verdicts(Slot forward, Slot reversed) noexcept {
  if (forward == Slot::kA && reversed == Slot::kA) return ArenaResult::kAWins;
  if (forward == Slot::kB && reversed == Slot::kB) return ArenaResult::kBWins;
  return ArenaResult::kSplit;
}

int parse_judge_answer(std::string_view reply) {
  static const std::regex answer(R"(answer\s*:\s*\**\s*review\s*([12]))", std::regex::icase);
  int slot = 0;
  const std::string text(reply);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), answer);
       it != std::sregex_iterator(); ++it) {
    slot = (*it)[1].str() == "1" ? 1 : 2;
  }
  if (slot == 0) throw Error(ErrorKind::kJudge, "judge reply has no 'Answer: Review 1|2' line");
  return slot;
}

ChatRequest build_judge_request(const ArenaPair& pair, Ordering ordering,
                                const JudgeOptions& options) {
  const auto& first = ordering == Ordering::kForward ? pair.entry_a : pair.entry_b;
  const auto& second = ordering == Ordering::kForward ? pair.entry_b : pair.entry_a;
  ChatRequest req;
  req.system_prompt = options.templates.judge_system;
  req.user_prompt = substitute(options.templates.judge_user, {{"reference", pair.human_reference},
                                                              {"review_1", first.text},
                                                              {"review_2", second.text}});
  req.temperature = options.temperature;
  req.model_name = options.model;
  return req;
}

JudgeVerdict judge_pair(LlmGateway& judge, const ArenaPair& pair, Ordering ordering,
                        const JudgeOptions& options) {
  if (trim(pair.entry_a.text).empty() || trim(pair.entry_b.text).empty()) {
    throw Error(ErrorKind::kArgument, "arena entries must be non-empty for paper " + pair.paper_id);
  }
  if (pair.entry_a.label == pair.entry_b.label) {
    throw Error(ErrorKind::kArgument, "arena pair compares model '" + pair.entry_a.label +
                                          "' with itself");
  }
  const auto req = build_judge_request(pair, ordering, options);
  try {
    auto parsed = complete_parsed<int>(
        judge, req, [](const std::string& text) { return parse_judge_answer(text); },
        options.max_parse_retries);
    JudgeVerdict v;
    v.ordering = ordering;
    const bool first_slot = parsed.value == 1;
    const bool forward = ordering == Ordering::kForward;
    v.preferred = (first_slot == forward) ? Slot::kA : Slot::kB;
    v.rationale = std::string(trim(parsed.raw_text));
    return v;
  } catch (const ParseExhaustedError& e) {
    throw Error(ErrorKind::kJudge, "judge gave no usable verdict for paper " + pair.paper_id +
                                       ": " + e.what());
  }
}

ArenaOutcome evaluate_pair(LlmGateway& judge, const ArenaPair& pair, const JudgeOptions& options) {
  ArenaOutcome out;
  out.pair = pair;
  out.forward = judge_pair(judge, pair, Ordering::kForward, options);
  out.reversed = judge_pair(judge, pair, Ordering::kReversed, options);
  out.result = combine_verdicts(out.forward.preferred, out.reversed.preferred);
  return out;
}

const WinRateRow* WinRateTable::find(std::string_view model) const {
  for (const auto& r : rows) {
    if (r.model == model) return &r;
  }
  return nullptr;
}

json to_json(const WinRateTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"model", r.model},
                    {"wins", r.wins},
                    {"comparisons", r.comparisons},
                    {"win_rate", r.win_rate}});
  }
  return {{"rows", std::move(rows)}};
}

json to_json(const ArenaOutcome& o) {
  auto verdict = [](const JudgeVerdict& v) {
    return json{{"ordering", to_string(v.ordering)},
                {"preferred", to_string(v.preferred)},
                {"rationale", v.rationale}};
  };
  return {{"paper_id", o.pair.paper_id},
          {"model_a", o.pair.entry_a.label},
          {"model_b", o.pair.entry_b.label},
          {"forward", verdict(o.forward)},
          {"reversed", verdict(o.reversed)},
          {"result", to_string(o.result)}};
}

WinRateTable tally(const std::vector<ArenaOutcome>& outcomes) {
  std::map<std::string, WinRateRow> rows;
  for (const auto& o : outcomes) {
    auto& a = rows[o.pair.entry_a.label];
    auto& b = rows[o.pair.entry_b.label];
    a.model = o.pair.entry_a.label;
    b.model = o.pair.entry_b.label;
    ++a.comparisons;
    ++b.comparisons;
    switch (o.result) {
      case ArenaResult::kAWins: a.wins += 1.0; break;
      case ArenaResult::kBWins: b.wins += 1.0; break;
      case ArenaResult::kSplit:
        a.wins += 0.5;
        b.wins += 0.5;
        break;
    }
  }
  WinRateTable table;
  for (auto& [name, row] : rows) {
    row.win_rate = row.comparisons ? 100.0 * row.wins / row.comparisons : 0.0;
    table.rows.push_back(row);
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const WinRateRow& x, const WinRateRow& y) { return x.win_rate > y.win_rate; });
  return table;
}

TournamentResult tournament(LlmGateway& judge, const ModelReviews& entries,
                            const std::map<std::string, std::string>& references,
                            const std::vector<std::string>& papers,
                            const TournamentOptions& options) {
  if (entries.size() < 2) throw Error(ErrorKind::kArgument, "a tournament needs at least two models");
  std::vector<ArenaPair> pairs;
  for (const auto& paper : papers) {
    auto ref = references.find(paper);
    if (ref == references.end()) {
      throw Error(ErrorKind::kCoverage, "no human reference for paper '" + paper + "'");
    }
    for (const auto& [model, reviews] : entries) {
      if (!reviews.count(paper)) {
        throw Error(ErrorKind::kCoverage, "model '" + model + "' has no review for paper '" + paper + "'");
      }
    }
    for (auto i = entries.begin(); i != entries.end(); ++i) {
      for (auto j = std::next(i); j != entries.end(); ++j) {
        ArenaPair p{paper, ref->second, {i->first, i->second.at(paper)},
                    {j->first, j->second.at(paper)}};
        if (options.swap_sides) std::swap(p.entry_a, p.entry_b);
        pairs.push_back(std::move(p));
      }
    }
  }

  std::vector<ArenaOutcome> outcomes(pairs.size());
  std::vector<std::exception_ptr> failures(pairs.size());
  auto run = [&](std::size_t i) {
    try {
      outcomes[i] = evaluate_pair(judge, pairs[i], options.judge);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, pairs.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) run(i);
  } else {
    std::vector<std::future<void>> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < pairs.size(); i += jobs) run(i);
      }));
    }
    for (auto& f : workers) f.get();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  TournamentResult result;
  result.table = tally(outcomes);
  result.outcomes = std::move(outcomes);
  return result;
}

}  // namespace reviewkit
