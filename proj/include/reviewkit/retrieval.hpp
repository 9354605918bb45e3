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

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reviewkit/corpus.hpp"
#include "reviewkit/date.hpp"
#include "reviewkit/http.hpp"

namespace reviewkit {

struct CandidatePaper {
  std::string title;
  std::string abstract;
  Date published_date{};
  std::string source_id;
  friend bool operator==(const CandidatePaper&, const CandidatePaper&) = default;
};

struct EmbeddingVector {
  std::vector<double> values;
  std::size_t dimension() const noexcept { return values.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

struct RetrievalConfig {
  std::size_t k = 2;
  std::optional<Date> cutoff;  // defaults to the paper's submission date
  std::size_t query_limit = 20;
  std::size_t jobs = 1;        // concurrent embedding calls
};

struct SearchQuery {
  std::string text;
  Date cutoff{};
  std::size_t limit = 1;
};

// Literature search backend. Implementations may ignore the cutoff;
// search_candidates filters locally regardless.
class SearchService {
 public:
  virtual ~SearchService() = default;
  virtual std::vector<CandidatePaper> search(const SearchQuery& query) = 0;
};

// Returns at most `limit` candidates, all published on or before `cutoff`.
std::vector<CandidatePaper> search_candidates(SearchService& service, std::string_view query,
                                              Date cutoff, std::size_t limit);

// Title plus the first sentence of the abstract.
std::string build_search_query(const PaperRecord& paper);

using Sleeper = std::function<void(std::chrono::milliseconds)>;
Sleeper real_sleeper();

// Enforces a minimum spacing between requests and computes bounded
// exponential backoff delays. Thread-safe.
class RateLimiter {
 public:
  RateLimiter(std::chrono::milliseconds min_interval, Sleeper sleeper);

  void wait_turn();
  std::chrono::milliseconds backoff(int attempt, std::chrono::milliseconds base,
                                    std::chrono::milliseconds cap) const;
  void sleep(std::chrono::milliseconds d) const { sleeper_(d); }

 private:
  std::chrono::milliseconds min_interval_;
  Sleeper sleeper_;
  std::mutex mu_;
  std::optional<std::chrono::steady_clock::time_point> last_;
};

struct HttpSearchOptions {
  std::string base_url = "https://api.semanticscholar.org";
  std::string api_key;
  std::chrono::milliseconds min_interval{1000};
  int max_attempts = 4;
  std::chrono::milliseconds backoff_base{1000};
  std::chrono::milliseconds backoff_cap{16000};
  std::chrono::milliseconds timeout{30000};
};

// Semantic-Scholar-style paper search: GET {base}/graph/v1/paper/search with
// query, limit, fields and publicationDateOrYear=:{cutoff}.
class HttpSearchService final : public SearchService {
 public:
  HttpSearchService(HttpSearchOptions options, std::shared_ptr<HttpTransport> transport,
                    Sleeper sleeper = real_sleeper());

  std::vector<CandidatePaper> search(const SearchQuery& query) override;

  std::string request_url(const SearchQuery& query) const;

 private:
  HttpSearchOptions options_;
  std::shared_ptr<HttpTransport> transport_;
  RateLimiter limiter_;
};

// Decodes a search response body. Entries without a title or a publication
// date are skipped; a malformed payload throws Error(kDecode).
std::vector<CandidatePaper> decode_search_response(std::string_view body);

// Fixed hit list, for tests and scripted runs.
class StaticSearchService final : public SearchService {
 public:
  explicit StaticSearchService(std::vector<CandidatePaper> hits) : hits_(std::move(hits)) {}
  std::vector<CandidatePaper> search(const SearchQuery&) override { return hits_; }

 private:
  std::vector<CandidatePaper> hits_;
};

// Offline search over a loaded corpus: every other paper is a candidate,
// dated by its submission date.
class CorpusSearchService final : public SearchService {
 public:
  explicit CorpusSearchService(std::vector<PaperRecord> corpus) : corpus_(std::move(corpus)) {}
  std::vector<CandidatePaper> search(const SearchQuery& query) override;

 private:
  std::vector<PaperRecord> corpus_;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::size_t dimension() const = 0;
  // Throws Error(kArgument) on empty text.
  virtual EmbeddingVector embed(std::string_view text) = 0;
};

// Offline embedder: each token's FNV-1a hash picks one of `dimension` bins,
// bin counts are L2-normalized.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dimension = 256) : dimension_(dimension) {}
  std::size_t dimension() const override { return dimension_; }
  EmbeddingVector embed(std::string_view text) override;

 private:
  std::size_t dimension_;
};

struct HttpEmbedderOptions {
  std::string endpoint;  // base URL; requests go to {endpoint}/embeddings
  std::string api_key;
  std::string model;
  std::size_t dimension = 0;  // 0: take from the first response
  std::chrono::milliseconds timeout{30000};
};

// OpenAI-style embeddings endpoint.
class HttpEmbedder final : public Embedder {
 public:
  HttpEmbedder(HttpEmbedderOptions options, std::shared_ptr<HttpTransport> transport);
  std::size_t dimension() const override;
  EmbeddingVector embed(std::string_view text) override;

 private:
  HttpEmbedderOptions options_;
  std::shared_ptr<HttpTransport> transport_;
  mutable std::mutex mu_;
  std::size_t dimension_;
};

// dot(a,b) / (|a| |b|), clamped to [-1, 1]. Throws Error(kArgument) on a
// dimension mismatch or an all-zero vector.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// Text embedded for a paper or a candidate: title + "\n" + abstract.
std::string embedding_text(std::string_view title, std::string_view abstract);

// Top-k candidates by cosine similarity to the paper, descending; ties go to
// the earlier publication date, then the smaller source_id. Candidates dated
// after the cutoff are dropped. Similarities are recorded clamped to [0, 1].
std::vector<RelevantPaperRef> select_relevant(const PaperRecord& paper,
                                              std::span<const CandidatePaper> candidates,
                                              const RetrievalConfig& config, Embedder& embedder);

// Search + embedding stack used by the review pipeline and dataset builder.
class RelevantPaperFinder {
 public:
  RelevantPaperFinder(std::shared_ptr<SearchService> search, std::shared_ptr<Embedder> embedder,
                      RetrievalConfig config);

  std::vector<RelevantPaperRef> find(const PaperRecord& paper) const;
  const RetrievalConfig& config() const noexcept { return config_; }

 private:
  std::shared_ptr<SearchService> search_;
  std::shared_ptr<Embedder> embedder_;
  RetrievalConfig config_;
};

}  // namespace reviewkit
