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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "reviewkit/error.hpp"
#include "reviewkit/llm_gateway.hpp"
#include "reviewkit/structured_review.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {
namespace {

std::string between(std::string_view text, std::string_view start, std::string_view end) {
  const auto b = text.find(start);
  if (b == std::string_view::npos) return {};
  const auto from = b + start.size();
  const auto e = end.empty() ? std::string_view::npos : text.find(end, from);
  return std::string(trim(text.substr(from, e == std::string_view::npos ? e : e - from)));
}

std::string line_after(std::string_view text, std::string_view label) {
  const auto b = text.find(label);
  if (b == std::string_view::npos) return {};
  const auto from = b + label.size();
  const auto e = text.find('\n', from);
  return std::string(trim(text.substr(from, e == std::string_view::npos ? e : e - from)));
}

std::string one_line(std::string_view text) {
  std::string out;
  for (char c : text) out.push_back(c == '\n' || c == '\r' || c == '\t' ? ' ' : c);
  return std::string(trim(out));
}

std::vector<std::string> sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    current.push_back(text[i]);
    const bool terminal = text[i] == '.' || text[i] == '!' || text[i] == '?';
    if (terminal && (i + 1 == text.size() || text[i + 1] == ' ' || text[i + 1] == '\n')) {
      if (auto s = one_line(current); !s.empty()) out.push_back(std::move(s));
      current.clear();
    }
  }
  if (auto s = one_line(current); !s.empty()) out.push_back(std::move(s));
  return out;
}

const std::string& pick(const std::vector<std::string>& options, std::uint64_t h) {
  return options[h % options.size()];
}

std::string render_default(StructuredReview r) {
  r.verdict = extract_verdict(r.conclusion);
  return render_structured(r);
}

std::string reviewer_reply(const ChatRequest& req) {
  const auto& prompt = req.user_prompt;
  const std::string title = line_after(prompt, "Title: ");
  const std::string abstract = line_after(prompt, "Abstract: ");
  const std::uint64_t seed = req.seed.value_or(0);
  const std::uint64_t h = fnv1a64(title + "#" + std::to_string(seed));
  const auto abs_sentences = sentences(abstract);

  StructuredReview r;
  r.summary = "The paper \"" + one_line(title) + "\" is summarized as follows. " +
              (abs_sentences.empty() ? one_line(abstract) : abs_sentences.front());
  static const std::vector<std::string> strengths = {
      "The problem is well motivated and relevant to the community.",
      "The method is described clearly and is easy to follow.",
      "The experiments cover several settings and support the main claims.",
      "The idea is simple and could be adopted widely."};
  static const std::vector<std::string> weaknesses = {
      "The evaluation is limited and lacks strong baselines.",
      "Some design choices are not justified by ablations.",
      "The novelty over prior work is unclear.",
      "The presentation of the results could be improved."};
  r.strengths.push_back(pick(strengths, h));
  if (abs_sentences.size() > 1) r.strengths.push_back("The authors report that " + abs_sentences[1]);
  r.weaknesses.push_back(pick(weaknesses, h >> 8));
  const std::string related = line_after(between(prompt, "Related Work 1", ""), "Title: ");
  if (!related.empty()) {
    r.weaknesses.push_back("The relation to \"" + one_line(related) + "\" deserves more discussion.");
  }
  const bool accept = (h >> 16) % 10 < 4;
  r.conclusion = accept ? "The contribution outweighs the weaknesses. I recommend acceptance."
                        : "The weaknesses outweigh the contribution. I recommend rejection.";
  return render_default(std::move(r));
}

std::string chair_reply(const ChatRequest& req) {
  const auto& prompt = req.user_prompt;
  int accepts = 0, rejects = 0;
  std::string first_summary, first_strength, first_weakness;
  for (int i = 1;; ++i) {
    const std::string marker = "Reviewer " + std::to_string(i) + ":\n";
    const auto pos = prompt.find(marker);
    if (pos == std::string::npos) break;
    const auto next = prompt.find("Reviewer " + std::to_string(i + 1) + ":\n", pos);
    const auto block = std::string_view(prompt).substr(
        pos + marker.size(), next == std::string::npos ? std::string_view::npos : next - pos - marker.size());
    try {
      const auto review = parse_structured(block);
      if (review.verdict == Verdict::kAccept) ++accepts;
      if (review.verdict == Verdict::kReject) ++rejects;
      if (first_summary.empty()) first_summary = review.summary;
      if (first_strength.empty() && !review.strengths.empty()) first_strength = review.strengths.front();
      if (first_weakness.empty() && !review.weaknesses.empty()) first_weakness = review.weaknesses.front();
    } catch (const Error&) {
    }
  }
  std::string text = "Meta-review. " + (first_summary.empty() ? std::string("The reviewers assessed the submission.") : first_summary);
  if (!first_strength.empty()) text += " The reviewers appreciate that: " + first_strength;
  if (!first_weakness.empty()) text += " The main concern raised is: " + first_weakness;
  text += " Of the reviewers, " + std::to_string(accepts) + " lean positive and " +
          std::to_string(rejects) + " lean negative. ";
  text += accepts > rejects ? "Final recommendation: accept." : "Final recommendation: reject.";
  return text;
}

std::string transcribe_reply(const ChatRequest& req) {
  const auto raw = between(req.user_prompt, "Review to transcribe:\n", "\n\nRewrite the review above");
  auto parts = sentences(raw);
  if (parts.empty()) parts.push_back("The review is empty.");
  static const std::set<std::string> negative = {"however", "lack",  "lacks",   "weak",
                                                 "unclear", "not",   "limited", "missing",
                                                 "concern", "issue", "poor",    "insufficient"};
  StructuredReview r;
  r.summary = parts.front();
  r.conclusion = parts.back();
  const std::size_t lo = parts.size() > 2 ? 1 : 0;
  const std::size_t hi = parts.size() > 2 ? parts.size() - 1 : parts.size();
  for (std::size_t i = lo; i < hi; ++i) {
    bool neg = false;
    for (const auto& t : tokenize(parts[i]).tokens) neg = neg || negative.count(t);
    (neg ? r.weaknesses : r.strengths).push_back(parts[i]);
  }
  return render_default(std::move(r));
}

std::string judge_reply(const ChatRequest& req) {
  const auto& p = req.user_prompt;
  const auto reference = between(p, "Reference review written by a human reviewer:\n", "\n\nReview 1:\n");
  const auto first = between(p, "\n\nReview 1:\n", "\n\nReview 2:\n");
  const auto second = between(p, "\n\nReview 2:\n", "\n\nWhich review");
  auto types = [](const std::string& s) {
    const auto t = tokenize(s).tokens;
    return std::set<std::string>(t.begin(), t.end());
  };
  const auto ref = types(reference);
  auto jaccard = [&](const std::string& s) {
    const auto mine = types(s);
    std::size_t inter = 0;
    for (const auto& t : mine) inter += ref.count(t);
    const std::size_t uni = mine.size() + ref.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  };
  const double a = jaccard(first), b = jaccard(second);
  bool pick_first = a > b;
  if (a == b) pick_first = fnv1a64(first) <= fnv1a64(second);
  const char* slot = pick_first ? "1" : "2";
  return std::string("Review ") + slot + " covers more of the points made in the reference review.\nAnswer: Review " + slot;
}

}  // namespace

std::string synthetic_reply(const ChatRequest& request) {
  const auto& u = request.user_prompt;
  if (u.find("Answer: Review 1") != std::string::npos) return judge_reply(request);
  if (u.find("Review to transcribe:") != std::string::npos) return transcribe_reply(request);
  if (u.find("Reviewer 1:\n") != std::string::npos) return chair_reply(request);
  if (u.find("Title: ") != std::string::npos) return reviewer_reply(request);
  return "I have no specific comments.";
}

}  // namespace reviewkit
