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

#include "reviewkit/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "reviewkit/error.hpp"
#include "reviewkit/kernels.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;

std::vector<CandidatePaper> search_candidates(SearchService& service, std::string_view query,
                                              Date cutoff, std::size_t limit) {
  if (limit == 0) throw Error(ErrorKind::kArgument, "search limit must be at least 1");
  auto hits = service.search({std::string(query), cutoff, limit});
  std::vector<CandidatePaper> out;
  for (auto& hit : hits) {
    if (out.size() == limit) break;
    if (hit.published_date <= cutoff) out.push_back(std::move(hit));
  }
  return out;
}

std::string build_search_query(const PaperRecord& paper) {
  std::string_view abstract = trim(paper.abstract);
  std::size_t end = abstract.size();
  for (std::size_t i = 0; i < abstract.size(); ++i) {
    const char c = abstract[i];
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == abstract.size() || abstract[i + 1] == ' ' || abstract[i + 1] == '\n')) {
      end = i + 1;
      break;
    }
  }
  std::string q(trim(paper.title));
  const auto first = trim(abstract.substr(0, end));
  if (!first.empty()) {
    q += ' ';
    q += first;
  }
  return q;
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

RateLimiter::RateLimiter(std::chrono::milliseconds min_interval, Sleeper sleeper)
    : min_interval_(min_interval), sleeper_(std::move(sleeper)) {}

void RateLimiter::wait_turn() {
  std::lock_guard lock(mu_);
  const auto now = std::chrono::steady_clock::now();
  if (last_) {
    const auto next = *last_ + min_interval_;
    if (next > now) {
      sleeper_(std::chrono::ceil<std::chrono::milliseconds>(next - now));
    }
  }
  last_ = std::chrono::steady_clock::now();
}

std::chrono::milliseconds RateLimiter::backoff(int attempt, std::chrono::milliseconds base,
                                               std::chrono::milliseconds cap) const {
  auto d = base;
  for (int i = 1; i < attempt && d < cap; ++i) d *= 2;
  return std::min(d, cap);
}

HttpSearchService::HttpSearchService(HttpSearchOptions options,
                                     std::shared_ptr<HttpTransport> transport, Sleeper sleeper)
    : options_(std::move(options)),
      transport_(std::move(transport)),
      limiter_(options_.min_interval, std::move(sleeper)) {}

std::string HttpSearchService::request_url(const SearchQuery& q) const {
  std::string base = options_.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + "/graph/v1/paper/search?query=" + url_encode(q.text) +
         "&limit=" + std::to_string(q.limit) +
         "&fields=title,abstract,publicationDate" +
         "&publicationDateOrYear=" + url_encode(":" + format_date(q.cutoff));
}

std::vector<CandidatePaper> decode_search_response(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kDecode, std::string("search response is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::kDecode, "search response must be an object");
  auto data = j.find("data");
  if (data == j.end() || data->is_null()) return {};
  if (!data->is_array()) throw Error(ErrorKind::kDecode, "search response 'data' must be an array");

  std::vector<CandidatePaper> out;
  for (const auto& item : *data) {
    if (!item.is_object()) throw Error(ErrorKind::kDecode, "search hit must be an object");
    auto str = [&](const char* key) -> std::string {
      auto it = item.find(key);
      if (it == item.end() || it->is_null()) return {};
      if (!it->is_string()) {
        throw Error(ErrorKind::kDecode, std::string("search hit field '") + key + "' must be a string");
      }
      return it->get<std::string>();
    };
    CandidatePaper c;
    c.title = str("title");
    c.abstract = str("abstract");
    c.source_id = str("paperId");
    const auto date = str("publicationDate");
    if (trim(c.title).empty() || date.empty()) continue;
    try {
      c.published_date = parse_date(date);
    } catch (const ParseError&) {
      continue;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CandidatePaper> HttpSearchService::search(const SearchQuery& query) {
  HttpRequest req;
  req.method = "GET";
  req.url = request_url(query);
  req.timeout = options_.timeout;
  if (!options_.api_key.empty()) req.headers["x-api-key"] = options_.api_key;

  std::string last_error;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    limiter_.wait_turn();
    try {
      const auto resp = transport_->send(req);
      throw_for_status(resp, "search");
      return decode_search_response(resp.body);
    } catch (const TransportError& e) {
      last_error = e.what();
      if (e.transport_class() == TransportClass::kRejected || attempt == options_.max_attempts) {
        throw TransportError(e.transport_class(),
                             "search failed after " + std::to_string(attempt) +
                                 " attempt(s): " + last_error,
                             attempt);
      }
      limiter_.sleep(limiter_.backoff(attempt, options_.backoff_base, options_.backoff_cap));
    }
  }
  throw TransportError(TransportClass::kNetwork, "search failed: " + last_error,
                       options_.max_attempts);
}

std::vector<CandidatePaper> CorpusSearchService::search(const SearchQuery& query) {
  // Rank by shared query tokens so `limit` keeps the closest papers.
  const auto q = tokenize(query.text).tokens;
  const std::unordered_set<std::string> qset(q.begin(), q.end());
  struct Scored {
    std::size_t overlap;
    std::size_t index;
  };
  std::vector<Scored> scored;
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    const auto& p = corpus_[i];
    if (p.submission_date > query.cutoff) continue;
    if (query.text == p.title || query.text.rfind(p.title + " ", 0) == 0) {
      continue;  // the paper being reviewed
    }
    std::size_t overlap = 0;
    std::unordered_set<std::string> seen;
    for (const auto& t : tokenize(p.title + " " + p.abstract).tokens) {
      if (qset.count(t) && seen.insert(t).second) ++overlap;
    }
    scored.push_back({overlap, i});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.overlap > b.overlap; });
  std::vector<CandidatePaper> out;
  for (const auto& s : scored) {
    if (out.size() == query.limit) break;
    const auto& p = corpus_[s.index];
    out.push_back({p.title, p.abstract, p.submission_date, p.id});
  }
  return out;
}

EmbeddingVector HashingEmbedder::embed(std::string_view text) {
  if (trim(text).empty()) throw Error(ErrorKind::kArgument, "cannot embed empty text");
  auto tokens = tokenize(text).tokens;
  if (tokens.empty()) tokens.emplace_back(trim(text));
  EmbeddingVector v;
  v.values.assign(dimension_, 0.0);
  for (const auto& t : tokens) v.values[fnv1a64(t) % dimension_] += 1.0;
  double norm = 0.0;
  for (double x : v.values) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v.values) x /= norm;
  return v;
}

HttpEmbedder::HttpEmbedder(HttpEmbedderOptions options, std::shared_ptr<HttpTransport> transport)
    : options_(std::move(options)), transport_(std::move(transport)), dimension_(options_.dimension) {}

std::size_t HttpEmbedder::dimension() const {
  std::lock_guard lock(mu_);
  return dimension_;
}

EmbeddingVector HttpEmbedder::embed(std::string_view text) {
  if (trim(text).empty()) throw Error(ErrorKind::kArgument, "cannot embed empty text");
  std::string base = options_.endpoint;
  while (!base.empty() && base.back() == '/') base.pop_back();
  HttpRequest req;
  req.method = "POST";
  req.url = base + "/embeddings";
  req.timeout = options_.timeout;
  if (!options_.api_key.empty()) req.headers["Authorization"] = "Bearer " + options_.api_key;
  req.body = json{{"model", options_.model}, {"input", std::string(text)}}.dump();
  const auto resp = transport_->send(req);
  throw_for_status(resp, "embedding");

  EmbeddingVector v;
  try {
    const auto j = json::parse(resp.body);
    v.values = j.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kDecode, std::string("malformed embedding response: ") + e.what());
  }
  std::lock_guard lock(mu_);
  if (dimension_ == 0) dimension_ = v.dimension();
  if (v.dimension() != dimension_ || dimension_ == 0) {
    throw Error(ErrorKind::kDecode, "embedding dimension " + std::to_string(v.dimension()) +
                                        " does not match provider dimension " +
                                        std::to_string(dimension_));
  }
  return v;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorKind::kArgument, "embedding dimensions differ (" +
                                          std::to_string(a.dimension()) + " vs " +
                                          std::to_string(b.dimension()) + ")");
  }
  const auto t = kernels::cosine_terms(a.values, b.values);
  if (!(t.norm_a_sq > 0.0) || !(t.norm_b_sq > 0.0)) {
    throw Error(ErrorKind::kArgument, "cosine similarity of a zero vector is undefined");
  }
  const double c = t.dot / (std::sqrt(t.norm_a_sq) * std::sqrt(t.norm_b_sq));
  return std::clamp(c, -1.0, 1.0);
}

std::string embedding_text(std::string_view title, std::string_view abstract) {
  std::string out(title);
  out += '\n';
  out += abstract;
  return out;
}

std::vector<RelevantPaperRef> select_relevant(const PaperRecord& paper,
                                              std::span<const CandidatePaper> candidates,
                                              const RetrievalConfig& config, Embedder& embedder) {
  if (config.k == 0) throw Error(ErrorKind::kArgument, "retrieval k must be at least 1");
  const Date cutoff = config.cutoff.value_or(paper.submission_date);
  std::vector<const CandidatePaper*> pool;
  for (const auto& c : candidates) {
    if (c.published_date <= cutoff && c.published_date <= paper.submission_date) {
      pool.push_back(&c);
    }
  }
  if (pool.empty()) return {};

  const auto query = embedder.embed(embedding_text(paper.title, paper.abstract));
  std::vector<double> sims(pool.size());
  auto score = [&](std::size_t i) {
    sims[i] = cosine_similarity(query, embedder.embed(embedding_text(pool[i]->title, pool[i]->abstract)));
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, pool.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < pool.size(); ++i) score(i);
  } else {
    std::vector<std::future<void>> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < pool.size(); i += jobs) score(i);
      }));
    }
    for (auto& f : workers) f.get();
  }

  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    if (pool[a]->published_date != pool[b]->published_date) {
      return pool[a]->published_date < pool[b]->published_date;
    }
    return pool[a]->source_id < pool[b]->source_id;
  });

  std::vector<RelevantPaperRef> out;
  for (std::size_t i = 0; i < order.size() && out.size() < config.k; ++i) {
    const auto* c = pool[order[i]];
    out.push_back({c->title, c->abstract, c->published_date, std::clamp(sims[order[i]], 0.0, 1.0)});
  }
  return out;
}

RelevantPaperFinder::RelevantPaperFinder(std::shared_ptr<SearchService> search,
                                         std::shared_ptr<Embedder> embedder,
                                         RetrievalConfig config)
    : search_(std::move(search)), embedder_(std::move(embedder)), config_(config) {}

std::vector<RelevantPaperRef> RelevantPaperFinder::find(const PaperRecord& paper) const {
  const Date cutoff = config_.cutoff.value_or(paper.submission_date);
  const auto candidates =
      search_candidates(*search_, build_search_query(paper), cutoff, config_.query_limit);
  return select_relevant(paper, candidates, config_, *embedder_);
}

}  // namespace reviewkit
