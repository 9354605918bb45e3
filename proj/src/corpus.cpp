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

#include "reviewkit/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

#include "reviewkit/error.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;

const char* to_string(Decision d) noexcept {
  switch (d) {
    case Decision::kAccept: return "accept";
    case Decision::kReject: return "reject";
    case Decision::kUnknown: return "unknown";
  }
  return "unknown";
}

Decision parse_decision(std::string_view text) {
  if (text == "accept") return Decision::kAccept;
  if (text == "reject") return Decision::kReject;
  if (text == "unknown") return Decision::kUnknown;
  throw ParseError(0, "decision must be accept, reject or unknown, got '" +
                          std::string(text) + "'");
}

std::vector<Violation> validate_record(const PaperRecord& r) {
  std::vector<Violation> out;
  if (trim(r.id).empty()) out.push_back({"id", "must be non-empty"});
  if (trim(r.title).empty()) out.push_back({"title", "must be non-empty"});
  if (trim(r.abstract).empty()) out.push_back({"abstract", "must be non-empty"});
  if (!r.submission_date.ok()) out.push_back({"submission_date", "must be a valid date"});
  for (std::size_t i = 0; i < r.reviews.size(); ++i) {
    if (trim(r.reviews[i].text).empty()) {
      out.push_back({"reviews[" + std::to_string(i) + "].text", "must be non-empty"});
    }
  }
  if (r.relevant_papers.size() > kMaxRelevantPapers) {
    out.push_back({"relevant_papers", "length must be at most 2, got " +
                                          std::to_string(r.relevant_papers.size())});
  }
  for (std::size_t i = 0; i < r.relevant_papers.size(); ++i) {
    const auto& ref = r.relevant_papers[i];
    const std::string field = "relevant_papers[" + std::to_string(i) + "]";
    if (ref.published_date > r.submission_date) {
      out.push_back({field + ".published_date",
                     "must not be after submission_date (" + format_date(ref.published_date) +
                         " > " + format_date(r.submission_date) + ")"});
    }
    if (!(ref.similarity >= 0.0 && ref.similarity <= 1.0)) {
      out.push_back({field + ".similarity", "must lie in [0, 1]"});
    }
  }
  return out;
}

namespace {

template <class T>
T required(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(0, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(0, std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T optional_field(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(0, std::string("field '") + key + "' has the wrong type");
  }
}

const json& required_array(const json& j, const char* key, const json& empty) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return empty;
  if (!it->is_array()) throw ParseError(0, std::string("field '") + key + "' must be an array");
  return *it;
}

}  // namespace

json to_json(const PaperRecord& r) {
  json sections = json::array();
  for (const auto& s : r.sections) sections.push_back({{"heading", s.heading}, {"body", s.body}});
  json reviews = json::array();
  for (const auto& rv : r.reviews) {
    reviews.push_back(
        {{"reviewer_id", rv.reviewer_id}, {"text", rv.text}, {"is_structured", rv.is_structured}});
  }
  json refs = json::array();
  for (const auto& ref : r.relevant_papers) {
    refs.push_back({{"title", ref.title},
                    {"abstract", ref.abstract},
                    {"published_date", format_date(ref.published_date)},
                    {"similarity", ref.similarity}});
  }
  json j = {{"id", r.id},
            {"title", r.title},
            {"abstract", r.abstract},
            {"sections", std::move(sections)},
            {"venue", r.venue},
            {"submission_date", format_date(r.submission_date)},
            {"decision", to_string(r.decision)},
            {"research_domain", nullptr},
            {"reviews", std::move(reviews)},
            {"meta_review", nullptr},
            {"relevant_papers", std::move(refs)}};
  if (r.research_domain) j["research_domain"] = *r.research_domain;
  if (r.meta_review) j["meta_review"] = *r.meta_review;
  return j;
}

PaperRecord paper_from_json(const json& j) {
  if (!j.is_object()) throw ParseError(0, "record must be a JSON object");
  static const json empty = json::array();
  PaperRecord r;
  r.id = required<std::string>(j, "id");
  r.title = required<std::string>(j, "title");
  r.abstract = required<std::string>(j, "abstract");
  for (const auto& s : required_array(j, "sections", empty)) {
    r.sections.push_back({required<std::string>(s, "heading"), required<std::string>(s, "body")});
  }
  r.venue = optional_field<std::string>(j, "venue", "");
  r.submission_date = parse_date(required<std::string>(j, "submission_date"));
  r.decision = parse_decision(optional_field<std::string>(j, "decision", "unknown"));
  if (auto d = optional_field<std::string>(j, "research_domain", ""); !d.empty()) {
    r.research_domain = std::move(d);
  }
  for (const auto& rv : required_array(j, "reviews", empty)) {
    r.reviews.push_back({optional_field<std::string>(rv, "reviewer_id", ""),
                         required<std::string>(rv, "text"),
                         optional_field<bool>(rv, "is_structured", false)});
  }
  if (auto it = j.find("meta_review"); it != j.end() && !it->is_null()) {
    r.meta_review = required<std::string>(j, "meta_review");
  }
  for (const auto& ref : required_array(j, "relevant_papers", empty)) {
    r.relevant_papers.push_back({required<std::string>(ref, "title"),
                                 optional_field<std::string>(ref, "abstract", ""),
                                 parse_date(required<std::string>(ref, "published_date")),
                                 optional_field<double>(ref, "similarity", 0.0)});
  }
  return r;
}

std::vector<PaperRecord> parse_corpus(std::string_view jsonl) {
  std::vector<PaperRecord> out;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    auto eol = jsonl.find('\n', pos);
    if (eol == std::string_view::npos) eol = jsonl.size();
    const auto line = jsonl.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;

    PaperRecord record;
    try {
      record = paper_from_json(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
    if (auto violations = validate_record(record); !violations.empty()) {
      std::string msg = "line " + std::to_string(line_no) + ": invalid record '" + record.id + "':";
      for (const auto& v : violations) msg += " " + v.describe() + ";";
      throw Error(ErrorKind::kValidation, msg);
    }
    if (!seen.insert(record.id).second) {
      throw Error(ErrorKind::kValidation,
                  "line " + std::to_string(line_no) + ": duplicate id '" + record.id + "'");
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<PaperRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "error reading corpus file " + path.string());
  return parse_corpus(buf.str());
}

std::string serialize_corpus(std::span<const PaperRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw Error(ErrorKind::kArgument, "invalid ratio '" + std::string(text) + "'");
    }
    return v;
  };
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    r = {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const auto whole = text.substr(0, dot);
    r = {(whole.empty() ? 0 : parse_int(whole)) * den + (frac.empty() ? 0 : parse_int(frac)), den};
  } else {
    r = {parse_int(text), 1};
  }
  if (r.den <= 0 || r.num < 0 || r.num > r.den) {
    throw Error(ErrorKind::kArgument, "ratio must lie in [0, 1], got '" + std::string(text) + "'");
  }
  return r;
}

json to_json(const BenchmarkSet& s) {
  return {{"entries", s.entries},
          {"accept_count", s.accept_count},
          {"reject_count", s.reject_count},
          {"seed", s.seed}};
}

BenchmarkSet benchmark_from_json(const json& j) {
  BenchmarkSet s;
  s.entries = required<std::vector<std::string>>(j, "entries");
  s.accept_count = required<std::size_t>(j, "accept_count");
  s.reject_count = required<std::size_t>(j, "reject_count");
  s.seed = optional_field<std::uint64_t>(j, "seed", 0);
  if (s.accept_count + s.reject_count != s.entries.size()) {
    throw Error(ErrorKind::kValidation, "benchmark counts do not add up to the entry count");
  }
  return s;
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    // Unbiased draw in [0, i) by rejection.
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do draw = rng(); while (draw >= limit);
    std::swap(idx[i - 1], idx[draw % bound]);
  }
  return idx;
}

BenchmarkSet split_benchmark(std::span<const PaperRecord> corpus, std::size_t total,
                             Rational ratio, std::uint64_t seed) {
  if (ratio.den <= 0 || ratio.num < 0 || ratio.num > ratio.den) {
    throw Error(ErrorKind::kArgument, "accept ratio must lie in [0, 1]");
  }
  // round-half-up of total * num / den in integer arithmetic
  const auto num = static_cast<std::uint64_t>(ratio.num);
  const auto den = static_cast<std::uint64_t>(ratio.den);
  const std::size_t want_accept = static_cast<std::size_t>((2 * total * num + den) / (2 * den));
  const std::size_t want_reject = total - want_accept;

  std::vector<std::size_t> accepted, rejected;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].decision == Decision::kAccept) accepted.push_back(i);
    if (corpus[i].decision == Decision::kReject) rejected.push_back(i);
  }
  if (accepted.size() < want_accept || rejected.size() < want_reject) {
    throw Error(ErrorKind::kCapacity,
                "benchmark needs " + std::to_string(want_accept) + " accepted and " +
                    std::to_string(want_reject) + " rejected papers; corpus has " +
                    std::to_string(accepted.size()) + " accepted and " +
                    std::to_string(rejected.size()) + " rejected");
  }

  auto pick = [](const std::vector<std::size_t>& pool, std::size_t k, std::uint64_t s) {
    const auto perm = seeded_permutation(pool.size(), s);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < k; ++i) chosen.push_back(pool[perm[i]]);
    return chosen;
  };
  auto chosen = pick(accepted, want_accept, seed);
  auto more = pick(rejected, want_reject, seed ^ 0x9e3779b97f4a7c15ULL);
  chosen.insert(chosen.end(), more.begin(), more.end());
  std::sort(chosen.begin(), chosen.end());

  BenchmarkSet set;
  set.seed = seed;
  set.accept_count = want_accept;
  set.reject_count = want_reject;
  for (auto i : chosen) set.entries.push_back(corpus[i].id);
  return set;
}

}  // namespace reviewkit
