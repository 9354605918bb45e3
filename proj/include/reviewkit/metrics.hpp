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
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "reviewkit/text.hpp"

namespace reviewkit {

inline constexpr std::size_t kDefaultNgramOrder = 4;
inline constexpr double kDefaultBleuEpsilon = 1e-9;

enum class RougeVariant { kRouge1, kRougeL };

struct MetricConfig {
  std::size_t ngram_order = kDefaultNgramOrder;
  double bleu_smoothing_epsilon = kDefaultBleuEpsilon;
  bool stemming = false;  // crude suffix stripping before ROUGE
};

// A score in [0, 100] plus whether the input was too short to measure.
struct FlaggedScore {
  double value = 0.0;
  bool degenerate = false;
};

// 100 * unique n-grams / total n-grams of one token sequence.
FlaggedScore distinct_n(const TokenSequence& text, std::size_t n);

// Same ratio over a collection; n-grams never span two texts.
FlaggedScore distinct_n(std::span<const TokenSequence> texts, std::size_t n);

// Sentence BLEU with clipped counts against the per-n-gram maximum over the
// references, zero precisions floored at epsilon, and a brevity penalty
// against the reference length closest to the hypothesis (shorter on ties).
double bleu(const TokenSequence& hypothesis, std::span<const TokenSequence> references,
            std::size_t n, double epsilon = kDefaultBleuEpsilon);

// Mean BLEU of each text against all the others. Needs >= 2 texts.
double self_bleu(std::span<const TokenSequence> texts, std::size_t n,
                 double epsilon = kDefaultBleuEpsilon);

// Display score 100 * (1 - self_bleu), clipped to [0, 100].
double inverse_self_bleu_score(double self_bleu_value);
double inverse_self_bleu(std::span<const TokenSequence> texts, std::size_t n,
                         double epsilon = kDefaultBleuEpsilon);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

RougeScore make_rouge_score(double precision, double recall);

RougeScore rouge(const TokenSequence& generated, const TokenSequence& reference,
                 RougeVariant variant);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// Strips common English inflection suffixes; used when stemming is enabled.
TokenSequence stem_tokens(const TokenSequence& tokens);

// (word) or (word, next_word) over content words, lowercased.
using Proposition = std::vector<std::string>;
using PropositionSet = std::set<Proposition>;

// Sentences split on . ! ?; per sentence, one unary tuple per content word
// and one binary tuple per pair of consecutive content words.
PropositionSet extract_propositions(std::string_view text, const StopWords& stop_words);

// 100 * F1 over the two proposition sets; both empty scores 0, flagged.
FlaggedScore spice_like(std::string_view generated, std::string_view reference,
                        const StopWords& stop_words = default_stop_words());

// 100 * (1 - |a - b| / 2) for polarities in [-1, 1].
double sentiment_distance_score(double generated_polarity, double reference_polarity);

inline constexpr std::size_t kComponentCount = 7;

// Column order of the comparison table.
inline constexpr std::array<const char*, kComponentCount> kComponentNames = {
    "distinct4", "inverse_self_bleu4", "rouge1_f1", "rougeL_f1",
    "spice_like", "sentiment_model", "sentiment_lexicon"};

struct MetricReport {
  double distinct4 = 0.0;
  double inverse_self_bleu4 = 0.0;
  double rouge1_f1 = 0.0;
  double rougeL_f1 = 0.0;
  double spice_like = 0.0;
  double sentiment_model = 0.0;
  double sentiment_lexicon = 0.0;
  double overall = 0.0;

  std::array<double, kComponentCount> components() const {
    return {distinct4, inverse_self_bleu4, rouge1_f1, rougeL_f1,
            spice_like, sentiment_model, sentiment_lexicon};
  }
};

nlohmann::json to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& j);

// Per-metric score lists. Diversity lists hold collection-level scores
// (usually one value); the five consistency lists hold per-paper scores and
// must be equally long.
struct ComponentScores {
  std::vector<double> distinct4;
  std::vector<double> inverse_self_bleu4;
  std::vector<double> rouge1_f1;
  std::vector<double> rougeL_f1;
  std::vector<double> spice_like;
  std::vector<double> sentiment_model;
  std::vector<double> sentiment_lexicon;
};

// Each component is the mean of its list; overall is the mean of the seven
// components. Throws Error(kArgument) on empty or misaligned lists.
MetricReport build_report(const ComponentScores& scores);

}  // namespace reviewkit
