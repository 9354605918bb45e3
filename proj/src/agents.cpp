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

#include "reviewkit/agents.hpp"

#include <exception>
#include <future>
#include <map>
#include <optional>

#include "reviewkit/error.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;

void validate_config(const PipelineConfig& c) {
  if (c.n_reviewers < 1 || c.n_reviewers > kMaxReviewers) {
    throw Error(ErrorKind::kArgument, "n_reviewers must lie in [1, 8], got " +
                                          std::to_string(c.n_reviewers));
  }
  if (c.char_budget == 0) throw Error(ErrorKind::kArgument, "char_budget must be positive");
  if (c.max_parse_retries < 0) throw Error(ErrorKind::kArgument, "max_parse_retries must be >= 0");
  if (auto problems = validate_grammar(c.grammar); !problems.empty()) {
    throw Error(ErrorKind::kArgument, "invalid tag grammar: " + problems.front());
  }
}

namespace {

std::string paper_header(const PaperRecord& paper) {
  return "Title: " + paper.title + "\n\nAbstract: " + paper.abstract + "\n";
}

std::string sections_text(const PaperRecord& paper) {
  std::string out;
  for (const auto& s : paper.sections) {
    out += "\n## " + s.heading + "\n" + s.body + "\n";
  }
  return out;
}

// Largest prefix length <= n that does not split a UTF-8 sequence.
std::size_t utf8_prefix(std::string_view text, std::size_t n) {
  if (n >= text.size()) return text.size();
  while (n > 0 && (static_cast<unsigned char>(text[n]) & 0xC0) == 0x80) --n;
  return n;
}

constexpr std::string_view kTruncationMarker = "\n[... remaining text truncated]\n";

std::map<std::string, std::string> grammar_vars(const TagGrammar& g) {
  return {{"summary_open", g.tags(Stage::kSummary).open},
          {"summary_close", g.tags(Stage::kSummary).close},
          {"analyze_open", g.tags(Stage::kAnalyze).open},
          {"analyze_close", g.tags(Stage::kAnalyze).close},
          {"conclude_open", g.tags(Stage::kConclude).open},
          {"conclude_close", g.tags(Stage::kConclude).close},
          {"strengths_header", g.strengths_header},
          {"weaknesses_header", g.weaknesses_header},
          {"item_marker", g.list_item_marker}};
}

}  // namespace

std::string build_paper_block(const PaperRecord& paper, std::size_t char_budget) {
  if (trim(paper.title).empty() || trim(paper.abstract).empty()) {
    throw Error(ErrorKind::kArgument, "paper '" + paper.id + "' has no title or abstract");
  }
  std::string block = paper_header(paper);
  if (block.size() > char_budget) {
    throw Error(ErrorKind::kArgument, "char budget " + std::to_string(char_budget) +
                                          " cannot hold the title and abstract of '" +
                                          paper.id + "'");
  }
  const std::string body = sections_text(paper);
  const std::size_t room = char_budget - block.size();
  if (body.size() <= room) return block + body;
  if (room >= kTruncationMarker.size()) {
    block += body.substr(0, utf8_prefix(body, room - kTruncationMarker.size()));
    block += kTruncationMarker;
  } else {
    block += body.substr(0, utf8_prefix(body, room));
  }
  return block;
}

std::string build_relevant_block(std::span<const RelevantPaperRef> relevant) {
  if (relevant.empty()) return "No related papers are available for this submission.";
  std::string out;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    if (i) out += "\n";
    out += "Related Work " + std::to_string(i + 1) + "\nTitle: " + relevant[i].title +
           "\nAbstract: " + relevant[i].abstract + "\n";
  }
  return out;
}

std::string build_instruction_block(const PipelineConfig& config) {
  return substitute(config.templates.reviewer_instruction, grammar_vars(config.grammar));
}

PromptBundle assemble_reviewer_prompt(const PaperRecord& paper,
                                      std::span<const RelevantPaperRef> relevant,
                                      const PipelineConfig& config) {
  if (relevant.size() > kMaxRelevantPapers) {
    throw Error(ErrorKind::kArgument, "at most two relevant papers can be presented");
  }
  PromptBundle b;
  b.system_prompt = config.templates.reviewer_system;
  b.paper_block = build_paper_block(paper, config.char_budget);
  b.relevant_block = build_relevant_block(relevant);
  b.instruction_block = build_instruction_block(config);

  auto vars = grammar_vars(config.grammar);
  vars["paper_block"] = b.paper_block;
  vars["relevant_block"] = b.relevant_block;
  vars["instruction_block"] = b.instruction_block;
  vars["title"] = paper.title;
  vars["abstract"] = paper.abstract;
  vars["sections"] = b.paper_block.substr(paper_header(paper).size());
  vars["venue"] = paper.venue;
  for (std::size_t i = 0; i < kMaxRelevantPapers; ++i) {
    const std::string prefix = "related_" + std::to_string(i + 1) + "_";
    vars[prefix + "title"] = i < relevant.size() ? relevant[i].title : "";
    vars[prefix + "abstract"] = i < relevant.size() ? relevant[i].abstract : "";
  }
  b.user_prompt = substitute(config.templates.reviewer_user, vars);
  return b;
}

std::string number_reviews(std::span<const StructuredReview> reviews, const TagGrammar& grammar) {
  std::string out;
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    if (i) out += "\n";
    out += "Reviewer " + std::to_string(i + 1) + ":\n" + render_structured(reviews[i], grammar);
  }
  return out;
}

Verdict meta_review_verdict(std::string_view text, const TagGrammar& grammar) {
  const auto& tags = grammar.tags(Stage::kConclude);
  const auto open = text.find(tags.open);
  if (open != std::string_view::npos) {
    const auto begin = open + tags.open.size();
    const auto close = text.find(tags.close, begin);
    if (close != std::string_view::npos) {
      return extract_verdict(text.substr(begin, close - begin));
    }
  }
  return extract_verdict(text);
}

ReviewerResult generate_review(LlmGateway& gateway, const PaperRecord& paper,
                               std::span<const RelevantPaperRef> relevant,
                               const PipelineConfig& config, int reviewer_index) {
  const auto bundle = assemble_reviewer_prompt(paper, relevant, config);
  ChatRequest req;
  req.system_prompt = bundle.system_prompt;
  req.user_prompt = bundle.user_prompt;
  req.temperature = config.reviewer_temperature;
  req.model_name = config.reviewer_model;
  req.seed = config.seed + static_cast<std::uint64_t>(reviewer_index);

  ReviewerResult result;
  const std::string who = "reviewer " + std::to_string(reviewer_index + 1);
  try {
    auto parsed = complete_parsed<StructuredReview>(
        gateway, req,
        [&](const std::string& text) { return parse_structured(text, config.grammar); },
        config.max_parse_retries, &result.calls);
    result.review = std::move(parsed.value);
  } catch (const ParseExhaustedError& e) {
    throw Error(ErrorKind::kPipeline, who + ": " + e.what());
  } catch (const TransportError& e) {
    throw Error(ErrorKind::kPipeline, who + ": " + e.what());
  }
  return result;
}

ChatRequest build_chair_request(std::span<const StructuredReview> reviews,
                                const PipelineConfig& config, const PaperRecord* paper) {
  if (reviews.empty()) throw Error(ErrorKind::kArgument, "the area chair needs at least one review");
  std::map<std::string, std::string> vars;
  vars["reviews"] = number_reviews(reviews, config.grammar);
  vars["paper_context"] = (config.chair_sees_abstract && paper)
                              ? "Title: " + paper->title + "\nAbstract: " + paper->abstract + "\n\n"
                              : "";
  ChatRequest req;
  req.system_prompt = config.templates.chair_system;
  req.user_prompt = substitute(config.templates.chair_user, vars);
  req.temperature = config.chair_temperature;
  req.model_name = config.chair_model;
  req.seed = config.seed;
  return req;
}

MetaReviewResult generate_meta_review(LlmGateway& gateway,
                                      std::span<const StructuredReview> reviews,
                                      const PipelineConfig& config, const PaperRecord* paper) {
  MetaReviewResult result;
  const auto req = build_chair_request(reviews, config, paper);
  result.user_prompt = req.user_prompt;
  try {
    auto parsed = complete_parsed<MetaReview>(
        gateway, req,
        [&](const std::string& text) {
          const auto body = trim(text);
          if (body.empty()) throw Error(ErrorKind::kContent, "meta-review is empty");
          return MetaReview{std::string(body), meta_review_verdict(body, config.grammar)};
        },
        config.max_parse_retries, &result.calls);
    result.meta_review = std::move(parsed.value);
  } catch (const ParseExhaustedError& e) {
    throw Error(ErrorKind::kPipeline, std::string("area chair: ") + e.what());
  } catch (const TransportError& e) {
    throw Error(ErrorKind::kPipeline, std::string("area chair: ") + e.what());
  }
  return result;
}

namespace {

struct RetrievalOutcome {
  std::vector<RelevantPaperRef> refs;
  std::string warning;
};

RetrievalOutcome retrieve(const PaperRecord& paper, const RelevantPaperFinder* finder) {
  if (!finder) return {paper.relevant_papers, {}};
  try {
    return {finder->find(paper), {}};
  } catch (const Error& e) {
    return {{}, std::string("retrieval failed, continuing without related work: ") + e.what()};
  }
}

json ref_json(const RelevantPaperRef& r) {
  return {{"title", r.title},
          {"abstract", r.abstract},
          {"published_date", format_date(r.published_date)},
          {"similarity", r.similarity}};
}

}  // namespace

PipelineOutput run_pipeline(const PaperRecord& paper, const PipelineConfig& config,
                            const RelevantPaperFinder* retrieval, LlmGateway& reviewer_gateway,
                            LlmGateway& chair_gateway) {
  validate_config(config);
  PipelineOutput out;
  out.paper_id = paper.id;

  const auto shared = retrieve(paper, config.per_reviewer_retrieval ? nullptr : retrieval);
  if (!config.per_reviewer_retrieval) {
    out.relevant_papers = shared.refs;
    if (retrieval || !shared.warning.empty()) {
      out.transcript.push_back({"retrieval", {}, shared.warning});
    }
  }

  const auto n = static_cast<std::size_t>(config.n_reviewers);
  std::vector<std::optional<ReviewerResult>> results(n);
  std::vector<std::string> warnings(n);
  std::vector<std::exception_ptr> failures(n);
  std::vector<std::vector<RelevantPaperRef>> used(n);

  auto run_one = [&](std::size_t i) {
    try {
      auto refs = shared.refs;
      if (config.per_reviewer_retrieval) {
        auto own = retrieve(paper, retrieval);
        refs = std::move(own.refs);
        warnings[i] = std::move(own.warning);
      }
      used[i] = refs;
      results[i] = generate_review(reviewer_gateway, paper, refs, config, static_cast<int>(i));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::vector<std::future<void>> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < n; i += jobs) run_one(i);
      }));
    }
    for (auto& f : workers) f.get();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
  }
  if (config.per_reviewer_retrieval) out.relevant_papers = used.front();

  for (std::size_t i = 0; i < n; ++i) {
    out.reviews.push_back(results[i]->review);
    out.transcript.push_back(
        {"reviewer " + std::to_string(i + 1), std::move(results[i]->calls), warnings[i]});
  }
  auto chair = generate_meta_review(chair_gateway, out.reviews, config, &paper);
  out.meta_review = std::move(chair.meta_review);
  out.transcript.push_back({"chair", std::move(chair.calls), {}});
  return out;
}

json to_json(const PipelineOutput& o, const TagGrammar& grammar) {
  json refs = json::array();
  for (const auto& r : o.relevant_papers) refs.push_back(ref_json(r));
  json reviews = json::array();
  for (const auto& r : o.reviews) {
    reviews.push_back({{"text", render_structured(r, grammar)},
                       {"summary", r.summary},
                       {"strengths", r.strengths},
                       {"weaknesses", r.weaknesses},
                       {"conclusion", r.conclusion},
                       {"verdict", to_string(r.verdict)}});
  }
  json transcript = json::array();
  for (const auto& t : o.transcript) {
    json calls = json::array();
    for (const auto& c : t.calls) calls.push_back(to_json(c));
    json entry = {{"stage", t.stage}, {"calls", std::move(calls)}};
    if (!t.warning.empty()) entry["warning"] = t.warning;
    transcript.push_back(std::move(entry));
  }
  return {{"paper_id", o.paper_id},
          {"relevant_papers", std::move(refs)},
          {"reviews", std::move(reviews)},
          {"meta_review", {{"text", o.meta_review.text}, {"verdict", to_string(o.meta_review.verdict)}}},
          {"transcript", std::move(transcript)}};
}

}  // namespace reviewkit
