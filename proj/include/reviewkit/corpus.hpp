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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "reviewkit/date.hpp"

namespace reviewkit {

enum class Decision { kAccept, kReject, kUnknown };

const char* to_string(Decision d) noexcept;
Decision parse_decision(std::string_view text);

struct Section {
  std::string heading;
  std::string body;
  friend bool operator==(const Section&, const Section&) = default;
};

struct RawReview {
  std::string reviewer_id;
  std::string text;
  bool is_structured = false;
  friend bool operator==(const RawReview&, const RawReview&) = default;
};

struct RelevantPaperRef {
  std::string title;
  std::string abstract;
  Date published_date{};
  double similarity = 0.0;
  friend bool operator==(const RelevantPaperRef&, const RelevantPaperRef&) = default;
};

inline constexpr std::size_t kMaxRelevantPapers = 2;

struct PaperRecord {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<Section> sections;
  std::string venue;
  Date submission_date{};
  Decision decision = Decision::kUnknown;
  std::optional<std::string> research_domain;
  std::vector<RawReview> reviews;
  std::optional<std::string> meta_review;
  std::vector<RelevantPaperRef> relevant_papers;
  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct Violation {
  std::string field;
  std::string rule;
  std::string describe() const { return field + ": " + rule; }
};

// Checks every PaperRecord invariant; an empty result means the record is
// valid. Uniqueness of ids is a corpus-level property checked by the loader.
std::vector<Violation> validate_record(const PaperRecord& record);

nlohmann::json to_json(const PaperRecord& record);
// Throws ParseError (line 0) on missing or mistyped fields.
PaperRecord paper_from_json(const nlohmann::json& j);

// One JSON object per line; blank lines are skipped. All-or-nothing: the
// first malformed, invalid or duplicate record aborts the load.
std::vector<PaperRecord> load_corpus(const std::filesystem::path& path);
std::vector<PaperRecord> parse_corpus(std::string_view jsonl);

std::string serialize_corpus(std::span<const PaperRecord> records);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// Parses "3/10" or a decimal such as "0.3".
Rational parse_rational(std::string_view text);

struct BenchmarkSet {
  std::vector<std::string> entries;
  std::size_t accept_count = 0;
  std::size_t reject_count = 0;
  std::uint64_t seed = 0;
  friend bool operator==(const BenchmarkSet&, const BenchmarkSet&) = default;
};

nlohmann::json to_json(const BenchmarkSet& set);
BenchmarkSet benchmark_from_json(const nlohmann::json& j);

// Samples round(total * accept_ratio) accepted papers and the remainder
// rejected ones. Entries keep corpus order. Throws Error(kCapacity) when a
// class has too few papers.
BenchmarkSet split_benchmark(std::span<const PaperRecord> corpus, std::size_t total,
                             Rational accept_ratio, std::uint64_t seed);

// Portable Fisher-Yates permutation of [0, n) driven by mt19937_64, so
// seeded results do not depend on the standard library's shuffle.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace reviewkit
