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

#include "reviewkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "reviewkit/error.hpp"

namespace reviewkit {

using nlohmann::json;

namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

std::string ngram_key(const std::vector<std::string>& tokens, std::size_t at, std::size_t n) {
  std::string key;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) key.push_back('\x1f');
    key += tokens[at + i];
  }
  return key;
}

NgramCounts count_ngrams(const TokenSequence& seq, std::size_t n) {
  NgramCounts counts;
  if (seq.size() < n) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) ++counts[ngram_key(seq.tokens, i, n)];
  return counts;
}

void require_order(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::kArgument, "n-gram order must be at least 1");
}

}  // namespace

FlaggedScore distinct_n(const TokenSequence& text, std::size_t n) {
  return distinct_n(std::span<const TokenSequence>(&text, 1), n);
}

FlaggedScore distinct_n(std::span<const TokenSequence> texts, std::size_t n) {
  require_order(n);
  std::unordered_map<std::string, std::size_t> unique;
  std::size_t total = 0;
  for (const auto& t : texts) {
    if (t.size() < n) continue;
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
      ++unique[ngram_key(t.tokens, i, n)];
      ++total;
    }
  }
  if (total == 0) return {0.0, true};
  return {100.0 * static_cast<double>(unique.size()) / static_cast<double>(total), false};
}

double bleu(const TokenSequence& hyp, std::span<const TokenSequence> refs, std::size_t n,
            double epsilon) {
  require_order(n);
  if (refs.empty()) throw Error(ErrorKind::kArgument, "BLEU needs at least one reference");
  if (hyp.empty()) return 0.0;

  double log_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto hyp_counts = count_ngrams(hyp, k);
    std::unordered_map<std::string, std::size_t> max_ref;
    for (const auto& r : refs) {
      for (const auto& [g, c] : count_ngrams(r, k)) {
        auto& m = max_ref[g];
        m = std::max(m, c);
      }
    }
    std::size_t clipped = 0;
    for (const auto& [g, c] : hyp_counts) {
      if (auto it = max_ref.find(g); it != max_ref.end()) clipped += std::min(c, it->second);
    }
    const std::size_t total = hyp.size() >= k ? hyp.size() - k + 1 : 0;
    double p = total ? static_cast<double>(clipped) / static_cast<double>(total) : 0.0;
    p = std::max(p, epsilon);
    log_sum += std::log(p);
  }
  const double geo = std::exp(log_sum / static_cast<double>(n));

  const auto c = static_cast<double>(hyp.size());
  std::size_t best = refs.front().size();
  for (const auto& r : refs) {
    const auto d = [&](std::size_t len) {
      return len > hyp.size() ? len - hyp.size() : hyp.size() - len;
    };
    if (d(r.size()) < d(best) || (d(r.size()) == d(best) && r.size() < best)) best = r.size();
  }
  const double r = static_cast<double>(best);
  const double bp = std::min(1.0, std::exp(1.0 - r / c));
  return geo * bp;
}

double self_bleu(std::span<const TokenSequence> texts, std::size_t n, double epsilon) {
  if (texts.size() < 2) throw Error(ErrorKind::kArgument, "Self-BLEU needs at least two texts");
  double sum = 0.0;
  std::vector<TokenSequence> others;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < texts.size(); ++j) {
      if (j != i) others.push_back(texts[j]);
    }
    sum += bleu(texts[i], others, n, epsilon);
  }
  return sum / static_cast<double>(texts.size());
}

double inverse_self_bleu_score(double sb) {
  return std::clamp(100.0 * (1.0 - sb), 0.0, 100.0);
}

double inverse_self_bleu(std::span<const TokenSequence> texts, std::size_t n, double epsilon) {
  return inverse_self_bleu_score(self_bleu(texts, n, epsilon));
}

RougeScore make_rouge_score(double precision, double recall) {
  RougeScore s{precision, recall, 0.0};
  if (precision + recall > 0.0) s.f1 = 2.0 * precision * recall / (precision + recall);
  return s;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge(const TokenSequence& gen, const TokenSequence& ref, RougeVariant variant) {
  if (gen.empty() || ref.empty()) return {};
  std::size_t matches = 0;
  if (variant == RougeVariant::kRouge1) {
    const auto g = count_ngrams(gen, 1);
    const auto r = count_ngrams(ref, 1);
    for (const auto& [w, c] : g) {
      if (auto it = r.find(w); it != r.end()) matches += std::min(c, it->second);
    }
  } else {
    matches = lcs_length(gen.tokens, ref.tokens);
  }
  return make_rouge_score(static_cast<double>(matches) / static_cast<double>(gen.size()),
                          static_cast<double>(matches) / static_cast<double>(ref.size()));
}

TokenSequence stem_tokens(const TokenSequence& in) {
  static const std::array<std::string_view, 7> suffixes = {"ational", "ness", "ing", "ies",
                                                           "ed",      "ly",   "s"};
  TokenSequence out;
  for (auto t : in.tokens) {
    for (auto suf : suffixes) {
      if (t.size() > suf.size() + 2 && t.compare(t.size() - suf.size(), suf.size(), suf) == 0) {
        if (suf == "s" && t.size() >= 2 && t[t.size() - 2] == 's') break;  // "class"
        t.erase(t.size() - suf.size());
        if (suf == "ies") t += "y";
        break;
      }
    }
    out.tokens.push_back(std::move(t));
  }
  return out;
}

PropositionSet extract_propositions(std::string_view text, const StopWords& stop_words) {
  PropositionSet out;
  std::size_t start = 0;
  auto emit = [&](std::string_view sentence) {
    std::vector<std::string> content;
    for (auto& t : tokenize(sentence).tokens) {
      if (!stop_words.count(t)) content.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < content.size(); ++i) {
      out.insert({content[i]});
      if (i + 1 < content.size()) out.insert({content[i], content[i + 1]});
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '.' || text[i] == '!' || text[i] == '?') {
      emit(text.substr(start, i - start));
      start = i + 1;
    }
  }
  emit(text.substr(start));
  return out;
}

FlaggedScore spice_like(std::string_view generated, std::string_view reference,
                        const StopWords& stop_words) {
  const auto g = extract_propositions(generated, stop_words);
  const auto r = extract_propositions(reference, stop_words);
  if (g.empty() && r.empty()) return {0.0, true};
  if (g.empty() || r.empty()) return {0.0, false};
  std::size_t inter = 0;
  for (const auto& p : g) inter += r.count(p);
  const auto s = make_rouge_score(static_cast<double>(inter) / static_cast<double>(g.size()),
                                  static_cast<double>(inter) / static_cast<double>(r.size()));
  return {100.0 * s.f1, false};
}

double sentiment_distance_score(double a, double b) {
  return std::clamp(100.0 * (1.0 - std::abs(a - b) / 2.0), 0.0, 100.0);
}

json to_json(const MetricReport& r) {
  return {{"distinct4", r.distinct4},     {"inverse_self_bleu4", r.inverse_self_bleu4},
          {"rouge1_f1", r.rouge1_f1},     {"rougeL_f1", r.rougeL_f1},
          {"spice_like", r.spice_like},   {"sentiment_model", r.sentiment_model},
          {"sentiment_lexicon", r.sentiment_lexicon}, {"overall", r.overall}};
}

MetricReport report_from_json(const json& j) {
  MetricReport r;
  try {
    r.distinct4 = j.at("distinct4").get<double>();
    r.inverse_self_bleu4 = j.at("inverse_self_bleu4").get<double>();
    r.rouge1_f1 = j.at("rouge1_f1").get<double>();
    r.rougeL_f1 = j.at("rougeL_f1").get<double>();
    r.spice_like = j.at("spice_like").get<double>();
    r.sentiment_model = j.at("sentiment_model").get<double>();
    r.sentiment_lexicon = j.at("sentiment_lexicon").get<double>();
    r.overall = j.at("overall").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed metric report: ") + e.what());
  }
  return r;
}

MetricReport build_report(const ComponentScores& s) {
  const std::array<std::pair<const char*, const std::vector<double>*>, kComponentCount> lists = {{
      {"distinct4", &s.distinct4},
      {"inverse_self_bleu4", &s.inverse_self_bleu4},
      {"rouge1_f1", &s.rouge1_f1},
      {"rougeL_f1", &s.rougeL_f1},
      {"spice_like", &s.spice_like},
      {"sentiment_model", &s.sentiment_model},
      {"sentiment_lexicon", &s.sentiment_lexicon},
  }};
  for (const auto& [name, list] : lists) {
    if (list->empty()) throw Error(ErrorKind::kArgument, std::string("metric list ") + name + " is empty");
  }
  const std::size_t per_paper = s.rouge1_f1.size();
  for (std::size_t i = 2; i < lists.size(); ++i) {
    if (lists[i].second->size() != per_paper) {
      throw Error(ErrorKind::kArgument, std::string("metric list ") + lists[i].first + " has " +
                                            std::to_string(lists[i].second->size()) +
                                            " entries, expected " + std::to_string(per_paper));
    }
  }
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  MetricReport r;
  r.distinct4 = mean(s.distinct4);
  r.inverse_self_bleu4 = mean(s.inverse_self_bleu4);
  r.rouge1_f1 = mean(s.rouge1_f1);
  r.rougeL_f1 = mean(s.rougeL_f1);
  r.spice_like = mean(s.spice_like);
  r.sentiment_model = mean(s.sentiment_model);
  r.sentiment_lexicon = mean(s.sentiment_lexicon);
  const auto c = r.components();
  r.overall = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(kComponentCount);
  return r;
}

}  // namespace reviewkit
