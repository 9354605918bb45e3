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

#include "reviewkit/metrics.hpp"
#include "reviewkit/sentiment.hpp"

namespace reviewkit {

struct GeneratedReview {
  std::string paper_id;
  std::string text;
};

struct PaperScores {
  std::string paper_id;
  double rouge1_f1 = 0.0;   // all per-paper scores in [0, 100]
  double rougeL_f1 = 0.0;
  double spice_like = 0.0;
  bool spice_degenerate = false;
  double sentiment_model = 0.0;
  double sentiment_lexicon = 0.0;
};

struct EvaluationResult {
  MetricReport report;
  double self_bleu = 0.0;
  bool distinct_degenerate = false;
  std::string sentiment_model_provider;
  std::vector<PaperScores> per_paper;
};

nlohmann::json to_json(const EvaluationResult& result);

// Diversity metrics over the whole generated collection, consistency metrics
// per paper against references[paper_id] and then averaged. Needs at least
// two generated texts; a paper without a reference throws Error(kCoverage).
EvaluationResult evaluate_reviews(const std::vector<GeneratedReview>& generated,
                                  const std::map<std::string, std::string>& references,
                                  const MetricConfig& config, SentimentProvider& model_sentiment,
                                  SentimentProvider& lexicon_sentiment);

}  // namespace reviewkit
