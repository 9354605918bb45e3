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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "reviewkit/corpus.hpp"
#include "reviewkit/llm_gateway.hpp"
#include "reviewkit/retrieval.hpp"
#include "reviewkit/structured_review.hpp"
#include "reviewkit/templates.hpp"

namespace reviewkit {

inline constexpr std::size_t kDefaultCharBudget = 48000;
inline constexpr int kDefaultReviewers = 3;
inline constexpr int kMaxReviewers = 8;

struct PipelineConfig {
  int n_reviewers = kDefaultReviewers;
  TagGrammar grammar;
  PromptTemplates templates = default_templates();
  std::size_t char_budget = kDefaultCharBudget;
  int max_parse_retries = 2;
  double reviewer_temperature = kReviewerTemperature;
  double chair_temperature = kJudgeTemperature;
  std::string reviewer_model;
  std::string chair_model;
  std::uint64_t seed = 0;            // reviewer i samples with seed + i
  bool per_reviewer_retrieval = false;
  bool chair_sees_abstract = false;
  std::size_t jobs = 1;              // concurrent reviewer generations
};

// Throws Error(kArgument) unless 1 <= n_reviewers <= 8 and the grammar and
// budgets are usable.
void validate_config(const PipelineConfig& config);

struct PromptBundle {
  std::string system_prompt;
  std::string paper_block;
  std::string relevant_block;
  std::string instruction_block;
  std::string user_prompt;  // reviewer_user template with the blocks bound
};

// Title, abstract, then section text cut from the end so the whole block
// fits in char_budget. Title and abstract are never cut.
std::string build_paper_block(const PaperRecord& paper, std::size_t char_budget);

std::string build_relevant_block(std::span<const RelevantPaperRef> relevant);

// Output-format instructions for the grammar (also used for transcription).
std::string build_instruction_block(const PipelineConfig& config);

PromptBundle assemble_reviewer_prompt(const PaperRecord& paper,
                                      std::span<const RelevantPaperRef> relevant,
                                      const PipelineConfig& config);

// "Reviewer i:" followed by the canonical rendering, numbered from 1.
std::string number_reviews(std::span<const StructuredReview> reviews, const TagGrammar& grammar);

struct MetaReview {
  std::string text;
  Verdict verdict = Verdict::kUndetermined;
  friend bool operator==(const MetaReview&, const MetaReview&) = default;
};

// Verdict of a chair reply: taken from its conclusion stage when the reply
// is tagged, otherwise from the whole text.
Verdict meta_review_verdict(std::string_view text, const TagGrammar& grammar);

struct ReviewerResult {
  StructuredReview review;
  std::vector<CallRecord> calls;
};

// Throws Error(kPipeline) naming the reviewer index when no reply parses.
ReviewerResult generate_review(LlmGateway& gateway, const PaperRecord& paper,
                               std::span<const RelevantPaperRef> relevant,
                               const PipelineConfig& config, int reviewer_index = 0);

struct MetaReviewResult {
  MetaReview meta_review;
  std::vector<CallRecord> calls;
  std::string user_prompt;
};

ChatRequest build_chair_request(std::span<const StructuredReview> reviews,
                                const PipelineConfig& config,
                                const PaperRecord* paper = nullptr);

MetaReviewResult generate_meta_review(LlmGateway& gateway,
                                      std::span<const StructuredReview> reviews,
                                      const PipelineConfig& config,
                                      const PaperRecord* paper = nullptr);

struct TranscriptEntry {
  std::string stage;  // "retrieval", "reviewer 1", ..., "chair"
  std::vector<CallRecord> calls;
  std::string warning;
};

struct PipelineOutput {
  std::string paper_id;
  std::vector<RelevantPaperRef> relevant_papers;
  std::vector<StructuredReview> reviews;
  MetaReview meta_review;
  std::vector<TranscriptEntry> transcript;
};

nlohmann::json to_json(const PipelineOutput& output, const TagGrammar& grammar);

// Retrieval runs once and is shared by every reviewer (per reviewer when
// config.per_reviewer_retrieval); without a finder the paper's stored
// relevant_papers are used. Retrieval failures degrade to no related work
// with a transcript warning. Reviewer failures throw Error(kPipeline).
PipelineOutput run_pipeline(const PaperRecord& paper, const PipelineConfig& config,
                            const RelevantPaperFinder* retrieval, LlmGateway& reviewer_gateway,
                            LlmGateway& chair_gateway);

}  // namespace reviewkit
