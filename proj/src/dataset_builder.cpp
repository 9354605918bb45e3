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

#include "reviewkit/dataset_builder.hpp"

#include <algorithm>
#include <future>
#include <unordered_set>

#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;

ChatRequest build_transcription_request(const RawReview& raw, const PipelineConfig& config) {
  ChatRequest req;
  req.system_prompt = config.templates.transcribe_system;
  req.user_prompt = substitute(config.templates.transcribe_user,
                               {{"review", raw.text},
                                {"instruction_block", build_instruction_block(config)}});
  req.temperature = config.chair_temperature;
  req.model_name = config.reviewer_model;
  return req;
}

TranscriptionResult transcribe_review(LlmGateway& gateway, const RawReview& raw,
                                      const PipelineConfig& config) {
  if (trim(raw.text).empty()) throw Error(ErrorKind::kArgument, "review text is empty");
  if (raw.is_structured) {
    try {
      return {parse_structured(raw.text, config.grammar), 0};
    } catch (const Error&) {
      // flagged but malformed: let the model reformat it
    }
  }
  try {
    auto parsed = complete_parsed<StructuredReview>(
        gateway, build_transcription_request(raw, config),
        [&](const std::string& text) { return parse_structured(text, config.grammar); },
        config.max_parse_retries);
    return {std::move(parsed.value), parsed.calls};
  } catch (const ParseExhaustedError& e) {
    throw TranscriptionError(raw.text, "transcription of review '" + raw.reviewer_id +
                                           "' failed: " + e.what());
  }
}

namespace {

std::unordered_set<std::string> content_types(std::string_view text) {
  const auto& stop = default_stop_words();
  std::unordered_set<std::string> out;
  for (auto& t : tokenize(text).tokens) {
    if (!stop.count(t)) out.insert(std::move(t));
  }
  return out;
}

}  // namespace

TranscriptionCheck verify_transcription(const RawReview& raw, const StructuredReview& structured,
                                        double threshold, const TagGrammar& grammar) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::kArgument, "recall threshold must lie in [0, 1]");
  }
  const auto want = content_types(raw.text);
  const auto have = content_types(render_structured(structured, grammar));
  std::size_t kept = 0;
  for (const auto& t : want) kept += have.count(t);
  TranscriptionCheck c;
  c.threshold = threshold;
  c.content_recall = want.empty() ? 1.0 : static_cast<double>(kept) / want.size();
  c.passed = c.content_recall >= threshold;
  return c;
}

PaperRecord annotate_relevant(const PaperRecord& paper, const RelevantPaperFinder& finder) {
  auto found = finder.find(paper);
  if (found.size() > kMaxRelevantPapers) found.resize(kMaxRelevantPapers);
  PaperRecord out = paper;
  out.relevant_papers = std::move(found);
  return out;
}

std::vector<PreparedPaper> prepare_corpus(LlmGateway& gateway, std::span<const PaperRecord> corpus,
                                          const PipelineConfig& config, double threshold,
                                          std::size_t jobs) {
  std::vector<PreparedPaper> out;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (const auto& p : corpus) {
    PreparedPaper pp{p, {}};
    pp.reviews.resize(p.reviews.size());
    for (std::size_t r = 0; r < p.reviews.size(); ++r) {
      pp.reviews[r].reviewer_id = p.reviews[r].reviewer_id;
      work.emplace_back(out.size(), r);
    }
    out.push_back(std::move(pp));
  }

  std::vector<std::exception_ptr> failures(work.size());
  auto run = [&](std::size_t w) {
    const auto [pi, ri] = work[w];
    const auto& raw = out[pi].paper.reviews[ri];
    auto& slot = out[pi].reviews[ri];
    try {
      auto t = transcribe_review(gateway, raw, config);
      slot.check = verify_transcription(raw, t.review, threshold, config.grammar);
      slot.calls = t.calls;
      slot.review = std::move(t.review);
    } catch (const TranscriptionError& e) {
      slot.failure = e.what();
      slot.check.threshold = threshold;
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, work.size()));
  if (jobs == 1) {
    for (std::size_t w = 0; w < work.size(); ++w) run(w);
  } else {
    std::vector<std::future<void>> workers;
    for (std::size_t t = 0; t < jobs; ++t) {
      workers.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t w = t; w < work.size(); w += jobs) run(w);
      }));
    }
    for (auto& f : workers) f.get();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

const char* to_string(RecordKind kind) noexcept {
  return kind == RecordKind::kReviewer ? "reviewer" : "chair";
}

RecordKind parse_record_kind(std::string_view text) {
  if (text == "reviewer") return RecordKind::kReviewer;
  if (text == "chair") return RecordKind::kChair;
  throw Error(ErrorKind::kArgument, "record kind must be 'reviewer' or 'chair', got '" +
                                        std::string(text) + "'");
}

json to_json(const TrainRecord& r) {
  return {{"kind", to_string(r.kind)},
          {"source_paper_id", r.source_paper_id},
          {"input", r.input_text},
          {"target", r.target_text}};
}

std::string serialize_records(std::span<const TrainRecord> records) {
  std::string out;
  for (const auto& r : records) out += to_json(r).dump() + "\n";
  return out;
}

std::size_t ExclusionReport::excluded() const {
  std::size_t n = 0;
  for (const auto& [reason, count] : reasons) n += count;
  return n;
}

json to_json(const ExclusionReport& r) {
  return {{"kind", to_string(r.kind)},
          {"considered", r.considered},
          {"emitted", r.emitted},
          {"excluded", r.excluded()},
          {"reasons", r.reasons}};
}

namespace {

std::vector<StructuredReview> passing_reviews(const PreparedPaper& p) {
  std::vector<StructuredReview> out;
  for (const auto& r : p.reviews) {
    if (r.review && r.check.passed) out.push_back(*r.review);
  }
  return out;
}

}  // namespace

Emission emit_records(std::span<const PreparedPaper> corpus, RecordKind kind,
                      const PipelineConfig& config, const std::set<std::string>& blocklist) {
  Emission e;
  e.report.kind = kind;
  auto exclude = [&](const char* reason, std::size_t n = 1) {
    if (n) e.report.reasons[reason] += n;
  };

  for (const auto& p : corpus) {
    if (kind == RecordKind::kReviewer) {
      e.report.considered += p.reviews.size();
      if (blocklist.count(p.paper.id)) {
        exclude("blocklisted", p.reviews.size());
        continue;
      }
      std::span<const RelevantPaperRef> relevant = p.paper.relevant_papers;
      if (relevant.size() > kMaxRelevantPapers) relevant = relevant.first(kMaxRelevantPapers);
      std::optional<std::string> input;
      for (const auto& r : p.reviews) {
        if (!r.review) {
          exclude("transcription_failed");
          continue;
        }
        if (!r.check.passed) {
          exclude("content_check_failed");
          continue;
        }
        if (!input) input = assemble_reviewer_prompt(p.paper, relevant, config).user_prompt;
        e.records.push_back({RecordKind::kReviewer, p.paper.id, *input,
                             render_structured(*r.review, config.grammar)});
      }
    } else {
      ++e.report.considered;
      if (blocklist.count(p.paper.id)) {
        exclude("blocklisted");
        continue;
      }
      if (!p.paper.meta_review || trim(*p.paper.meta_review).empty()) {
        exclude("missing_meta_review");
        continue;
      }
      const auto reviews = passing_reviews(p);
      if (reviews.empty()) {
        exclude("no_passing_reviews");
        continue;
      }
      e.records.push_back({RecordKind::kChair, p.paper.id, number_reviews(reviews, config.grammar),
                           *p.paper.meta_review});
    }
  }
  e.report.emitted = e.records.size();
  return e;
}

}  // namespace reviewkit
