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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "reviewkit/agents.hpp"
#include "reviewkit/corpus.hpp"
#include "reviewkit/llm_gateway.hpp"
#include "reviewkit/retrieval.hpp"
#include "reviewkit/structured_review.hpp"

namespace reviewkit {

inline constexpr double kDefaultRecallThreshold = 0.85;

// Transcription exhausted its parse retries; keeps the free-form input.
class TranscriptionError : public Error {
 public:
  TranscriptionError(std::string raw_text, const std::string& message)
      : Error(ErrorKind::kTranscription, message), raw_text_(std::move(raw_text)) {}
  const std::string& raw_text() const noexcept { return raw_text_; }

 private:
  std::string raw_text_;
};

struct TranscriptionResult {
  StructuredReview review;
  int calls = 0;  // 0 when the review was already structured
};

ChatRequest build_transcription_request(const RawReview& raw, const PipelineConfig& config);

// Reviews flagged is_structured that parse cleanly skip the provider.
TranscriptionResult transcribe_review(LlmGateway& gateway, const RawReview& raw,
                                      const PipelineConfig& config);

struct TranscriptionCheck {
  double content_recall = 0.0;
  bool passed = false;
  double threshold = kDefaultRecallThreshold;
};

// Fraction of the raw review's content-word types found in the rendered
// structured review. A review with no content words scores 1.
TranscriptionCheck verify_transcription(const RawReview& raw, const StructuredReview& structured,
                                        double threshold = kDefaultRecallThreshold,
                                        const TagGrammar& grammar = {});

// Copy of `paper` with relevant_papers replaced by the finder's selection.
PaperRecord annotate_relevant(const PaperRecord& paper, const RelevantPaperFinder& finder);

struct TranscribedReview {
  std::string reviewer_id;
  std::optional<StructuredReview> review;  // empty when transcription failed
  TranscriptionCheck check;
  int calls = 0;
  std::string failure;
};

struct PreparedPaper {
  PaperRecord paper;
  std::vector<TranscribedReview> reviews;
};

// Transcribes and checks every review. Transcription failures are recorded
// per review; transport errors propagate. Up to `jobs` reviews at a time.
std::vector<PreparedPaper> prepare_corpus(LlmGateway& gateway, std::span<const PaperRecord> corpus,
                                          const PipelineConfig& config,
                                          double threshold = kDefaultRecallThreshold,
                                          std::size_t jobs = 1);

enum class RecordKind { kReviewer, kChair };

const char* to_string(RecordKind kind) noexcept;
RecordKind parse_record_kind(std::string_view text);

struct TrainRecord {
  RecordKind kind = RecordKind::kReviewer;
  std::string source_paper_id;
  std::string input_text;
  std::string target_text;
  friend bool operator==(const TrainRecord&, const TrainRecord&) = default;
};

nlohmann::json to_json(const TrainRecord& record);
std::string serialize_records(std::span<const TrainRecord> records);

struct ExclusionReport {
  RecordKind kind = RecordKind::kReviewer;
  std::size_t considered = 0;  // reviews (reviewer kind) or papers (chair kind)
  std::size_t emitted = 0;
  std::map<std::string, std::size_t> reasons;
  std::size_t excluded() const;
};

nlohmann::json to_json(const ExclusionReport& report);

struct Emission {
  std::vector<TrainRecord> records;
  ExclusionReport report;
};

// Reviewer kind: one record per passing review, input is the assembled
// reviewer prompt. Chair kind: one record per paper with a meta-review,
// input is the numbered passing reviews. Papers in `blocklist` are skipped.
Emission emit_records(std::span<const PreparedPaper> corpus, RecordKind kind,
                      const PipelineConfig& config, const std::set<std::string>& blocklist = {});

}  // namespace reviewkit
