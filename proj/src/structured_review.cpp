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

#include "reviewkit/structured_review.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "reviewkit/error.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kAccept: return "accept";
    case Verdict::kReject: return "reject";
    case Verdict::kUndetermined: return "undetermined";
  }
  return "undetermined";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "accept") return Verdict::kAccept;
  if (text == "reject") return Verdict::kReject;
  if (text == "undetermined") return Verdict::kUndetermined;
  throw ParseError(0, "unknown verdict '" + std::string(text) + "'");
}

const char* stage_name(Stage s) noexcept {
  switch (s) {
    case Stage::kSummary: return "SUMMARY";
    case Stage::kAnalyze: return "ANALYZE";
    case Stage::kConclude: return "CONCLUDE";
  }
  return "?";
}

std::vector<std::string> validate_grammar(const TagGrammar& g) {
  std::vector<std::string> problems;
  std::vector<std::string> markers;
  for (Stage s : kStages) {
    markers.push_back(g.tags(s).open);
    markers.push_back(g.tags(s).close);
  }
  markers.push_back(g.strengths_header);
  markers.push_back(g.weaknesses_header);
  std::set<std::string> seen;
  for (const auto& m : markers) {
    if (m.empty()) problems.push_back("markers must be non-empty");
    else if (!seen.insert(m).second) problems.push_back("marker '" + m + "' is used twice");
  }
  if (trim(g.list_item_marker).empty()) problems.push_back("list item marker must be visible");
  return problems;
}

namespace {

struct Span {
  Stage stage;
  std::size_t open;         // position of the open marker
  std::size_t content;      // first content byte
  std::size_t close;        // position of the close marker
  std::size_t end;          // one past the close marker
};

std::optional<std::size_t> find_unique(std::string_view text, std::string_view marker,
                                       Stage stage, const char* what) {
  const auto first = text.find(marker);
  if (first == std::string_view::npos) return std::nullopt;
  if (text.find(marker, first + 1) != std::string_view::npos) {
    throw Error(ErrorKind::kStructure, std::string("duplicate ") + what + " marker for stage " +
                                           stage_name(stage));
  }
  return first;
}

// True when pos starts a line of text (ignoring leading blanks).
bool at_line_start(std::string_view text, std::size_t pos) {
  while (pos > 0) {
    const char c = text[pos - 1];
    if (c == '\n') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
    --pos;
  }
  return true;
}

std::size_t find_header(std::string_view text, std::string_view header) {
  std::size_t from = 0;
  while (true) {
    const auto pos = find_ci(text, header, from);
    if (pos == std::string_view::npos || at_line_start(text, pos)) return pos;
    from = pos + 1;
  }
}

std::vector<std::string> split_items(std::string_view block, std::string_view marker) {
  std::vector<std::string> items;
  const auto bare = trim(marker);
  std::string current;
  bool have_current = false;
  auto flush = [&] {
    auto t = trim(current);
    if (have_current && !t.empty()) items.emplace_back(t);
    current.clear();
    have_current = false;
  };
  std::size_t pos = 0;
  bool first_line = true;
  while (pos <= block.size()) {
    auto eol = block.find('\n', pos);
    if (eol == std::string_view::npos) eol = block.size();
    auto line = block.substr(pos, eol - pos);
    const auto stripped = trim(line);
    const bool is_item = stripped.substr(0, marker.size()) == marker ||
                         stripped == bare;
    if (is_item) {
      flush();
      current = std::string(stripped.substr(std::min(marker.size(), stripped.size())));
      have_current = true;
    } else if (!stripped.empty()) {
      if (!have_current) {
        have_current = true;
      } else if (!first_line) {
        current.push_back('\n');
      }
      current.append(stripped);
    }
    first_line = false;
    pos = eol + 1;
  }
  flush();
  return items;
}

void parse_analysis(std::string_view content, const TagGrammar& g, StructuredReview& out) {
  const auto s = find_header(content, g.strengths_header);
  const auto w = find_header(content, g.weaknesses_header);
  auto block = [&](std::size_t at, std::size_t header_len, std::size_t other) {
    if (at == std::string_view::npos) return std::string_view{};
    const auto begin = at + header_len;
    const auto end = (other != std::string_view::npos && other > at) ? other : content.size();
    return content.substr(begin, end - begin);
  };
  out.strengths = split_items(block(s, g.strengths_header.size(), w), g.list_item_marker);
  out.weaknesses = split_items(block(w, g.weaknesses_header.size(), s), g.list_item_marker);
}

}  // namespace

StructuredReview parse_structured(std::string_view text, const TagGrammar& g) {
  std::vector<Span> spans;
  for (Stage stage : kStages) {
    const auto& tags = g.tags(stage);
    const auto open = find_unique(text, tags.open, stage, "open");
    const auto close = find_unique(text, tags.close, stage, "close");
    if (!open || !close) {
      throw Error(ErrorKind::kStructure,
                  std::string("missing ") + (!open ? "open" : "close") + " marker for stage " +
                      stage_name(stage));
    }
    if (*close < *open + tags.open.size()) {
      throw Error(ErrorKind::kStructure,
                  std::string("close marker precedes open marker for stage ") + stage_name(stage));
    }
    spans.push_back({stage, *open, *open + tags.open.size(), *close, *close + tags.close.size()});
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.open < b.open; });
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].open < spans[i - 1].end) {
      throw Error(ErrorKind::kStructure, std::string("stage ") + stage_name(spans[i].stage) +
                                             " is nested in or interleaved with stage " +
                                             stage_name(spans[i - 1].stage));
    }
  }

  StructuredReview out;
  for (const auto& sp : spans) {
    const auto content = text.substr(sp.content, sp.close - sp.content);
    switch (sp.stage) {
      case Stage::kSummary: out.summary = std::string(trim(content)); break;
      case Stage::kAnalyze: parse_analysis(content, g, out); break;
      case Stage::kConclude: out.conclusion = std::string(trim(content)); break;
    }
  }
  if (out.summary.empty()) throw Error(ErrorKind::kContent, "stage SUMMARY is empty");
  if (out.conclusion.empty()) throw Error(ErrorKind::kContent, "stage CONCLUDE is empty");
  if (out.strengths.empty() && out.weaknesses.empty()) {
    throw Error(ErrorKind::kContent, "stage ANALYZE lists no strengths or weaknesses");
  }
  out.verdict = extract_verdict(out.conclusion);
  return out;
}

std::vector<std::string> validate_review(const StructuredReview& r, const TagGrammar& g) {
  std::vector<std::string> problems;
  std::vector<std::string_view> markers;
  for (Stage s : kStages) {
    markers.push_back(g.tags(s).open);
    markers.push_back(g.tags(s).close);
  }
  auto check_text = [&](std::string_view field, std::string_view value) {
    if (value.empty()) problems.push_back(std::string(field) + " must be non-empty");
    if (trim(value).size() != value.size()) {
      problems.push_back(std::string(field) + " has leading or trailing whitespace");
    }
    for (auto m : markers) {
      if (value.find(m) != std::string_view::npos) {
        problems.push_back(std::string(field) + " contains stage marker " + std::string(m));
      }
    }
  };
  check_text("summary", r.summary);
  check_text("conclusion", r.conclusion);
  if (r.strengths.empty() && r.weaknesses.empty()) {
    problems.push_back("strengths and weaknesses are both empty");
  }
  auto check_items = [&](const char* name, const std::vector<std::string>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string field = std::string(name) + "[" + std::to_string(i) + "]";
      check_text(field, items[i]);
      if (items[i].find_first_of("\r\n") != std::string::npos) {
        problems.push_back(field + " spans multiple lines");
      }
    }
  };
  check_items("strengths", r.strengths);
  check_items("weaknesses", r.weaknesses);
  if (!r.conclusion.empty() && r.verdict != extract_verdict(r.conclusion)) {
    problems.push_back(std::string("verdict ") + to_string(r.verdict) +
                       " disagrees with the conclusion (" +
                       to_string(extract_verdict(r.conclusion)) + ")");
  }
  return problems;
}

std::string render_structured(const StructuredReview& r, const TagGrammar& g) {
  if (auto problems = validate_review(r, g); !problems.empty()) {
    std::string msg = "cannot render invalid review:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw Error(ErrorKind::kValidation, msg);
  }
  std::string out;
  auto stage = [&](Stage s, const std::string& body) {
    out += g.tags(s).open;
    out += '\n';
    out += body;
    out += '\n';
    out += g.tags(s).close;
    out += '\n';
  };
  std::string analysis = g.strengths_header + "\n";
  for (const auto& item : r.strengths) analysis += g.list_item_marker + item + "\n";
  analysis += g.weaknesses_header;
  for (const auto& item : r.weaknesses) analysis += "\n" + g.list_item_marker + item;
  stage(Stage::kSummary, r.summary);
  stage(Stage::kAnalyze, analysis);
  stage(Stage::kConclude, r.conclusion);
  return out;
}

namespace {

enum class Family { kNone, kAccept, kReject };

Family family_of(std::string_view token) {
  static const std::set<std::string_view> accept = {"accept", "accepts", "accepted",
                                                    "accepting", "acceptance", "acceptable"};
  static const std::set<std::string_view> reject = {"reject", "rejects", "rejected",
                                                    "rejecting", "rejection"};
  if (accept.count(token)) return Family::kAccept;
  if (reject.count(token)) return Family::kReject;
  return Family::kNone;
}

bool is_negator(std::string_view token) {
  // "t" is what tokenize leaves of the "n't" in can't / won't / shouldn't.
  static const std::set<std::string_view> negators = {
      "not", "cannot", "no", "never", "t", "nor", "neither", "hardly", "unable"};
  return negators.count(token) != 0;
}

}  // namespace

Verdict extract_verdict(std::string_view conclusion) {
  const auto tokens = tokenize(conclusion).tokens;
  bool accept = false;
  bool reject = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Family f = family_of(tokens[i]);
    if (f == Family::kNone) continue;
    bool negated = false;
    for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
      if (is_negator(tokens[i - back])) negated = true;
    }
    if (negated) f = (f == Family::kAccept) ? Family::kReject : Family::kAccept;
    (f == Family::kAccept ? accept : reject) = true;
  }
  if (accept == reject) return Verdict::kUndetermined;
  return accept ? Verdict::kAccept : Verdict::kReject;
}

}  // namespace reviewkit
