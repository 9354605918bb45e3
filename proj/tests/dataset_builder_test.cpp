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

#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "reviewkit/dataset_builder.hpp"
#include "reviewkit/error.hpp"

namespace reviewkit {
namespace {

GatewayOptions quick() {
  GatewayOptions o;
  o.sleeper = [](std::chrono::milliseconds) {};
  return o;
}

// Any provider call fails; proves the structured bypass is taken.
std::shared_ptr<ScriptedProvider> no_calls() {
  return std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{}, ReplyGenerator{});
}

std::vector<PaperRecord> three_and_four() {
  return {fixtures::paper(0, 3), fixtures::paper(1, 4)};
}

TEST(Transcription, StructuredReviewBypassesProvider) {
  auto provider = no_calls();
  LlmGateway gw(provider, quick());
  const auto p = fixtures::paper(2, 1);
  const auto t = transcribe_review(gw, p.reviews[0], PipelineConfig{});
  EXPECT_EQ(t.calls, 0);
  EXPECT_EQ(provider->call_count(), 0);
  EXPECT_EQ(render_structured(t.review), p.reviews[0].text);
}

TEST(Transcription, FreeFormReviewUsesProvider) {
  auto provider = std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{}, synthetic_reply);
  LlmGateway gw(provider, quick());
  const RawReview raw{"R9",
                      "This paper proposes a graph method. The experiments are thorough. "
                      "However the baselines are weak. I lean towards rejection.",
                      false};
  const auto t = transcribe_review(gw, raw, PipelineConfig{});
  EXPECT_EQ(t.calls, 1);
  EXPECT_FALSE(t.review.summary.empty());
  EXPECT_EQ(t.review.verdict, Verdict::kReject);
  const auto req = provider->history().at(0);
  EXPECT_NE(req.user_prompt.find(raw.text), std::string::npos);
}

TEST(Transcription, MalformedFlaggedReviewFallsBackToProvider) {
  auto provider = std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{}, synthetic_reply);
  LlmGateway gw(provider, quick());
  const RawReview raw{"R1", "Flagged as structured but it is not. The idea is fine.", true};
  EXPECT_EQ(transcribe_review(gw, raw, PipelineConfig{}).calls, 1);
}

TEST(Transcription, ExhaustedRetriesKeepRawText) {
  auto provider = ScriptedProvider::constant("no tags here");
  LlmGateway gw(provider, quick());
  PipelineConfig cfg;
  cfg.max_parse_retries = 2;
  const RawReview raw{"R1", "Some free-form opinion.", false};
  try {
    transcribe_review(gw, raw, cfg);
    FAIL();
  } catch (const TranscriptionError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTranscription);
    EXPECT_EQ(e.raw_text(), raw.text);
  }
  EXPECT_EQ(provider->call_count(), 3);
}

TEST(Transcription, EmptyReviewRejected) {
  auto provider = no_calls();
  LlmGateway gw(provider, quick());
  EXPECT_THROW(transcribe_review(gw, {"R1", "  ", false}, PipelineConfig{}), Error);
}

// Ten content-word types, eight of which survive: recall 0.8.
TEST(ContentCheck, RecallBelowThresholdFails) {
  const RawReview raw{"R1", "alpha bravo charlie delta echo foxtrot golf hotel india juliet", false};
  StructuredReview s;
  s.summary = "alpha bravo charlie delta";
  s.strengths = {"echo foxtrot"};
  s.weaknesses = {"golf hotel"};
  s.conclusion = "Reject.";
  s.verdict = Verdict::kReject;
  const auto strict = verify_transcription(raw, s);
  EXPECT_NEAR(strict.content_recall, 0.8, 1e-12);
  EXPECT_FALSE(strict.passed);
  EXPECT_DOUBLE_EQ(strict.threshold, 0.85);
  EXPECT_TRUE(verify_transcription(raw, s, 0.8).passed);
  EXPECT_THROW(verify_transcription(raw, s, 1.5), Error);
}

TEST(ContentCheck, NoContentWordsPasses) {
  StructuredReview s{"x", {"z"}, {}, "y", Verdict::kUndetermined};
  EXPECT_DOUBLE_EQ(verify_transcription({"R", "the of and", false}, s).content_recall, 1.0);
}

TEST(Emission, ReviewerAndChairCounts) {
  auto provider = no_calls();
  LlmGateway gw(provider, quick());
  const auto corpus = three_and_four();
  const auto prepared = prepare_corpus(gw, corpus, PipelineConfig{});
  EXPECT_EQ(provider->call_count(), 0);

  const auto reviewer = emit_records(prepared, RecordKind::kReviewer, PipelineConfig{});
  EXPECT_EQ(reviewer.records.size(), 7u);
  EXPECT_EQ(reviewer.report.considered, 7u);
  EXPECT_EQ(reviewer.report.excluded(), 0u);
  const auto chair = emit_records(prepared, RecordKind::kChair, PipelineConfig{});
  EXPECT_EQ(chair.records.size(), 2u);

  const auto prompt = assemble_reviewer_prompt(corpus[0], corpus[0].relevant_papers, PipelineConfig{});
  EXPECT_EQ(reviewer.records[0].input_text, prompt.user_prompt);
  EXPECT_EQ(reviewer.records[0].target_text, corpus[0].reviews[0].text);
  EXPECT_NE(chair.records[1].input_text.find("Reviewer 4:"), std::string::npos);
  EXPECT_EQ(chair.records[1].target_text, *corpus[1].meta_review);
}

TEST(Emission, ExclusionsAreCounted) {
  auto corpus = three_and_four();
  corpus.push_back(fixtures::paper(2, 2, false));
  corpus[1].reviews[0] = {"R1", "free-form text the provider cannot fix", false};
  auto provider = ScriptedProvider::constant("still no tags");
  LlmGateway gw(provider, quick());
  PipelineConfig cfg;
  cfg.max_parse_retries = 0;
  const auto prepared = prepare_corpus(gw, corpus, cfg);
  EXPECT_FALSE(prepared[1].reviews[0].failure.empty());

  const auto reviewer = emit_records(prepared, RecordKind::kReviewer, cfg, {"paper-0"});
  EXPECT_EQ(reviewer.report.considered, 9u);
  EXPECT_EQ(reviewer.report.reasons.at("blocklisted"), 3u);
  EXPECT_EQ(reviewer.report.reasons.at("transcription_failed"), 1u);
  EXPECT_EQ(reviewer.records.size(), 5u);
  EXPECT_EQ(reviewer.report.emitted + reviewer.report.excluded(), reviewer.report.considered);

  const auto chair = emit_records(prepared, RecordKind::kChair, cfg);
  EXPECT_EQ(chair.records.size(), 2u);
  EXPECT_EQ(chair.report.reasons.at("missing_meta_review"), 1u);
  const auto j = to_json(chair.report);
  EXPECT_EQ(j.at("excluded"), 1);
}

TEST(Emission, ContentCheckFailureExcludesReview) {
  auto provider = no_calls();
  LlmGateway gw(provider, quick());
  const auto corpus = three_and_four();
  auto prepared = prepare_corpus(gw, corpus, PipelineConfig{});
  prepared[0].reviews[1].check.passed = false;
  for (auto& r : prepared[1].reviews) r.check.passed = false;
  const auto reviewer = emit_records(prepared, RecordKind::kReviewer, PipelineConfig{});
  EXPECT_EQ(reviewer.report.reasons.at("content_check_failed"), 5u);
  const auto chair = emit_records(prepared, RecordKind::kChair, PipelineConfig{});
  EXPECT_EQ(chair.records.size(), 1u);
  EXPECT_EQ(chair.report.reasons.at("no_passing_reviews"), 1u);
}

TEST(Emission, ParallelPreparationMatchesSerial) {
  auto corpus = fixtures::corpus(6);
  corpus[3].reviews[1] = {"R2", "The method is novel. However the evaluation is limited. Reject.", false};
  auto provider = std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{}, synthetic_reply);
  LlmGateway gw(provider, quick());
  const auto a = emit_records(prepare_corpus(gw, corpus, PipelineConfig{}, 0.85, 1),
                              RecordKind::kReviewer, PipelineConfig{});
  const auto b = emit_records(prepare_corpus(gw, corpus, PipelineConfig{}, 0.85, 4),
                              RecordKind::kReviewer, PipelineConfig{});
  EXPECT_EQ(serialize_records(a.records), serialize_records(b.records));
}

TEST(Records, JsonLinesShape) {
  const std::vector<TrainRecord> recs = {{RecordKind::kReviewer, "p1", "in\nput", "target"},
                                         {RecordKind::kChair, "p2", "x", "y"}};
  std::istringstream lines(serialize_records(recs));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("source_paper_id"), recs[n].source_paper_id);
    EXPECT_EQ(j.at("input"), recs[n].input_text);
    ++n;
  }
  EXPECT_EQ(n, 2);
  EXPECT_EQ(parse_record_kind("chair"), RecordKind::kChair);
  EXPECT_THROW(parse_record_kind("both"), Error);
}

TEST(Annotate, IdempotentAndDateBounded) {
  const auto corpus = fixtures::corpus(8);
  RelevantPaperFinder finder(std::make_shared<CorpusSearchService>(corpus),
                             std::make_shared<HashingEmbedder>(), {});
  for (const auto& p : corpus) {
    const auto once = annotate_relevant(p, finder);
    const auto twice = annotate_relevant(once, finder);
    EXPECT_EQ(once, twice);
    EXPECT_LE(once.relevant_papers.size(), 2u);
    for (const auto& r : once.relevant_papers) EXPECT_LE(r.published_date, p.submission_date);
  }
}

}  // namespace
}  // namespace reviewkit
