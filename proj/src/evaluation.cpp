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

#include "reviewkit/evaluation.hpp"

#include "reviewkit/error.hpp"

namespace reviewkit {

using nlohmann::json;

json to_json(const EvaluationResult& r) {
  json per_paper = json::array();
  for (const auto& p : r.per_paper) {
    per_paper.push_back({{"paper_id", p.paper_id},
                         {"rouge1_f1", p.rouge1_f1},
                         {"rougeL_f1", p.rougeL_f1},
                         {"spice_like", p.spice_like},
                         {"spice_degenerate", p.spice_degenerate},
                         {"sentiment_model", p.sentiment_model},
                         {"sentiment_lexicon", p.sentiment_lexicon}});
  }
  json j = to_json(r.report);
  j["self_bleu4"] = r.self_bleu;
  j["distinct4_degenerate"] = r.distinct_degenerate;
  j["sentiment_model_provider"] = r.sentiment_model_provider;
  j["per_paper"] = std::move(per_paper);
  return j;
}

EvaluationResult evaluate_reviews(const std::vector<GeneratedReview>& generated,
                                  const std::map<std::string, std::string>& references,
                                  const MetricConfig& config, SentimentProvider& model_sentiment,
                                  SentimentProvider& lexicon_sentiment) {
  if (generated.size() < 2) {
    throw Error(ErrorKind::kArgument, "evaluation needs at least two generated reviews");
  }
  EvaluationResult out;
  out.sentiment_model_provider = model_sentiment.name();

  std::vector<TokenSequence> tokens;
  for (const auto& g : generated) tokens.push_back(tokenize(g.text));

  ComponentScores scores;
  const auto distinct = distinct_n(tokens, config.ngram_order);
  out.distinct_degenerate = distinct.degenerate;
  scores.distinct4.push_back(distinct.value);
  out.self_bleu = self_bleu(tokens, config.ngram_order, config.bleu_smoothing_epsilon);
  scores.inverse_self_bleu4.push_back(inverse_self_bleu_score(out.self_bleu));

  for (std::size_t i = 0; i < generated.size(); ++i) {
    const auto& g = generated[i];
    auto ref_it = references.find(g.paper_id);
    if (ref_it == references.end()) {
      throw Error(ErrorKind::kCoverage, "no reference review for paper '" + g.paper_id + "'");
    }
    auto gen_tokens = tokens[i];
    auto ref_tokens = tokenize(ref_it->second);
    if (config.stemming) {
      gen_tokens = stem_tokens(gen_tokens);
      ref_tokens = stem_tokens(ref_tokens);
    }
    PaperScores p;
    p.paper_id = g.paper_id;
    p.rouge1_f1 = 100.0 * rouge(gen_tokens, ref_tokens, RougeVariant::kRouge1).f1;
    p.rougeL_f1 = 100.0 * rouge(gen_tokens, ref_tokens, RougeVariant::kRougeL).f1;
    const auto spice = spice_like(g.text, ref_it->second);
    p.spice_like = spice.value;
    p.spice_degenerate = spice.degenerate;
    p.sentiment_model = sentiment_consistency(g.text, ref_it->second, model_sentiment);
    p.sentiment_lexicon = sentiment_consistency(g.text, ref_it->second, lexicon_sentiment);

    scores.rouge1_f1.push_back(p.rouge1_f1);
    scores.rougeL_f1.push_back(p.rougeL_f1);
    scores.spice_like.push_back(p.spice_like);
    scores.sentiment_model.push_back(p.sentiment_model);
    scores.sentiment_lexicon.push_back(p.sentiment_lexicon);
    out.per_paper.push_back(std::move(p));
  }
  out.report = build_report(scores);
  return out;
}

}  // namespace reviewkit
