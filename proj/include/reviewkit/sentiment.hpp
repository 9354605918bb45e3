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

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

#include "reviewkit/http.hpp"

namespace reviewkit {

struct SentimentPolarity {
  double value = 0.0;  // in [-1, 1]
  std::string provider;
};

class SentimentProvider {
 public:
  virtual ~SentimentProvider() = default;
  virtual std::string name() const = 0;
  virtual SentimentPolarity polarity(std::string_view text) = 0;
};

// token -> valence, roughly in [-4, 4].
struct SentimentLexicon {
  std::unordered_map<std::string, double> valence;
};

// Parses "token<TAB>valence" lines; '#' starts a comment line.
SentimentLexicon parse_lexicon(std::string_view text);
SentimentLexicon load_lexicon(const std::filesystem::path& path);
const SentimentLexicon& default_lexicon();

inline constexpr double kNegationScalar = -0.74;
inline constexpr double kBoosterIncrement = 0.293;
inline constexpr double kNormalizationAlpha = 15.0;

// Rule-based scorer: summed token valences with booster/dampener adjustment
// from the preceding token and negation flip from the three preceding
// tokens, normalized by s / sqrt(s^2 + 15).
class LexiconSentiment final : public SentimentProvider {
 public:
  explicit LexiconSentiment(SentimentLexicon lexicon = default_lexicon())
      : lexicon_(std::move(lexicon)) {}
  std::string name() const override { return "lexicon"; }
  SentimentPolarity polarity(std::string_view text) override;

  double raw_sum(std::string_view text) const;

 private:
  SentimentLexicon lexicon_;
};

double normalize_valence(double sum);

struct ClassifierOptions {
  std::string endpoint;  // POST target
  std::string api_key;
  std::chrono::milliseconds timeout{30000};
};

// Remote sentiment classifier. Sends {"inputs": text}; accepts either
// {"polarity": x} or label/score lists such as
// [[{"label": "POSITIVE", "score": 0.9}, {"label": "NEGATIVE", "score": 0.1}]].
// Polarity = P(positive) - P(negative).
class HttpSentimentClassifier final : public SentimentProvider {
 public:
  HttpSentimentClassifier(ClassifierOptions options, std::shared_ptr<HttpTransport> transport);
  std::string name() const override { return "model"; }
  SentimentPolarity polarity(std::string_view text) override;

 private:
  ClassifierOptions options_;
  std::shared_ptr<HttpTransport> transport_;
};

double decode_classifier_polarity(std::string_view body);

// 100 * (1 - |p_gen - p_ref| / 2).
double sentiment_consistency(std::string_view generated, std::string_view reference,
                             SentimentProvider& provider);

}  // namespace reviewkit
