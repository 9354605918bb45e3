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

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace reviewkit {

enum class Verdict { kAccept, kReject, kUndetermined };

const char* to_string(Verdict v) noexcept;
Verdict parse_verdict(std::string_view text);

enum class Stage { kSummary, kAnalyze, kConclude };

inline constexpr std::array<Stage, 3> kStages = {Stage::kSummary, Stage::kAnalyze,
                                                 Stage::kConclude};

const char* stage_name(Stage s) noexcept;

struct StageTags {
  std::string open;
  std::string close;
};

// Marker vocabulary for the three-stage review format. Strengths and
// weaknesses live inside the analysis stage under their headers, one item per
// line introduced by list_item_marker.
struct TagGrammar {
  std::array<StageTags, 3> stage_tags{{{"<SUMMARY>", "</SUMMARY>"},
                                       {"<ANALYZE>", "</ANALYZE>"},
                                       {"<CONCLUDE>", "</CONCLUDE>"}}};
  std::string strengths_header = "Strengths:";
  std::string weaknesses_header = "Weaknesses:";
  std::string list_item_marker = "- ";

  const StageTags& tags(Stage s) const { return stage_tags[static_cast<std::size_t>(s)]; }
};

// Problems with the grammar itself: empty or duplicated markers.
std::vector<std::string> validate_grammar(const TagGrammar& grammar);

struct StructuredReview {
  std::string summary;
  std::vector<std::string> strengths;
  std::vector<std::string> weaknesses;
  std::string conclusion;
  Verdict verdict = Verdict::kUndetermined;
  friend bool operator==(const StructuredReview&, const StructuredReview&) = default;
};

// Invariant violations that would make render/parse lossy, e.g. untrimmed
// fields, multi-line list items, embedded markers or a verdict that
// disagrees with the conclusion.
std::vector<std::string> validate_review(const StructuredReview& review,
                                         const TagGrammar& grammar = {});

// Throws Error(kStructure) for missing, duplicated, nested or interleaved
// stage markers and Error(kContent) for empty stages. Text outside the stage
// markers is ignored.
StructuredReview parse_structured(std::string_view text, const TagGrammar& grammar = {});

// Canonical form: stages in SUMMARY, ANALYZE, CONCLUDE order, one list item
// per line. Throws Error(kValidation) if validate_review reports anything.
std::string render_structured(const StructuredReview& review, const TagGrammar& grammar = {});

// Keyword scan over the conclusion. "accept"-family words vote accept and
// "reject"-family words vote reject; a negator in the three preceding
// tokens flips the vote. Mixed or absent votes give kUndetermined.
Verdict extract_verdict(std::string_view conclusion);

}  // namespace reviewkit
