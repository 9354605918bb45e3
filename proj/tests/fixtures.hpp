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

#include <string>
#include <vector>

#include "reviewkit/corpus.hpp"
#include "reviewkit/date.hpp"
#include "reviewkit/structured_review.hpp"

namespace fixtures {

inline const std::vector<std::string>& topics() {
  static const std::vector<std::string> t = {
      "graph neural networks for molecule property prediction",
      "sparse attention for long document summarization",
      "contrastive pretraining of speech encoders",
      "diffusion models for protein structure generation",
      "reinforcement learning for robotic grasping",
      "federated optimization under client drift",
      "retrieval augmented question answering",
      "calibration of large language model confidence",
      "neural architecture search on a budget",
      "causal discovery from observational time series",
  };
  return t;
}

inline reviewkit::StructuredReview structured(bool accept, const std::string& topic) {
  reviewkit::StructuredReview r;
  r.summary = "The paper studies " + topic + " and proposes a new training objective.";
  r.strengths = {"The method is simple and clearly explained.",
                 "Experiments cover several benchmarks."};
  r.weaknesses = {"The ablation study is limited.", "Comparisons to recent baselines are missing."};
  r.conclusion = accept ? "The contribution is solid. I recommend acceptance."
                        : "The evidence is insufficient. I recommend rejection.";
  r.verdict = accept ? reviewkit::Verdict::kAccept : reviewkit::Verdict::kReject;
  return r;
}

// Paper `i` of a synthetic corpus. Reviews are pre-structured so dataset
// emission needs no provider calls.
inline reviewkit::PaperRecord paper(std::size_t i, std::size_t n_reviews = 3,
                                    bool with_meta = true) {
  using namespace reviewkit;
  const auto& t = topics()[i % topics().size()];
  PaperRecord p;
  p.id = "paper-" + std::to_string(i);
  p.title = "Improving " + t + " (" + std::to_string(i) + ")";
  p.abstract = "We study " + t + ". Our approach improves accuracy on standard benchmarks "
               "while reducing compute.";
  p.sections = {{"Introduction", "Prior work on " + t + " has focused on scale."},
                {"Method", "We introduce a regularized objective and a curriculum."},
                {"Experiments", "Results on five datasets show consistent gains."}};
  p.venue = "ICLR";
  p.submission_date = parse_date("2023-0" + std::to_string(1 + i % 9) + "-15");
  p.decision = i % 3 == 0 ? Decision::kAccept : Decision::kReject;
  for (std::size_t r = 0; r < n_reviews; ++r) {
    const bool accept = (i + r) % 2 == 0;
    p.reviews.push_back({"R" + std::to_string(r + 1),
                         render_structured(structured(accept, t)), true});
  }
  if (with_meta) {
    p.meta_review = "The reviewers agree that the work on " + t +
                    " is interesting but the experiments are limited. " +
                    (p.decision == Decision::kAccept ? "I recommend acceptance."
                                                     : "I recommend rejection.");
  }
  return p;
}

inline std::vector<reviewkit::PaperRecord> corpus(std::size_t n) {
  std::vector<reviewkit::PaperRecord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(paper(i));
  return out;
}

// n papers with the requested numbers of accepted and rejected decisions.
inline std::vector<reviewkit::PaperRecord> labelled_corpus(std::size_t accepted,
                                                           std::size_t rejected) {
  std::vector<reviewkit::PaperRecord> out;
  for (std::size_t i = 0; i < accepted + rejected; ++i) {
    auto p = paper(i, 1, false);
    p.decision = i < accepted ? reviewkit::Decision::kAccept : reviewkit::Decision::kReject;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace fixtures
