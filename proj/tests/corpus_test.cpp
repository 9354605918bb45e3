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

#include <map>
#include <random>

#include "fixtures.hpp"
#include "reviewkit/corpus.hpp"
#include "reviewkit/error.hpp"

namespace reviewkit {
namespace {

TEST(Corpus, SerializeParseRoundTrip) {
  auto records = fixtures::corpus(4);
  records[1].research_domain = "ML";
  records[2].relevant_papers.push_back({"Older work", "Abstract.", parse_date("2022-01-01"), 0.5});
  records[3].meta_review.reset();
  const auto text = serialize_corpus(records);
  EXPECT_EQ(parse_corpus(text), records);
  EXPECT_EQ(serialize_corpus(parse_corpus(text)), text);
}

TEST(Corpus, SkipsBlankLines) {
  auto records = fixtures::corpus(2);
  auto text = "\n" + to_json(records[0]).dump() + "\n\n  \n" + to_json(records[1]).dump() + "\n";
  EXPECT_EQ(parse_corpus(text).size(), 2u);
}

TEST(Corpus, MalformedLineReportsLineNumber) {
  auto text = to_json(fixtures::paper(0)).dump() + "\n{not json\n";
  try {
    parse_corpus(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Corpus, MissingFieldIsParseError) {
  auto j = to_json(fixtures::paper(0));
  j.erase("title");
  EXPECT_THROW(parse_corpus(j.dump()), ParseError);
}

TEST(Corpus, DuplicateIdRejected) {
  auto p = fixtures::paper(0);
  auto text = to_json(p).dump() + "\n" + to_json(p).dump() + "\n";
  try {
    parse_corpus(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Corpus, RelevantPaperAfterSubmissionIsInvalid) {
  auto p = fixtures::paper(0);
  p.relevant_papers.push_back({"Future", "x", p.submission_date + std::chrono::months{1}, 0.3});
  auto v = validate_record(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "relevant_papers[0].published_date");
  EXPECT_THROW(parse_corpus(to_json(p).dump()), Error);
}

TEST(Corpus, TooManyRelevantPapersIsInvalid) {
  auto p = fixtures::paper(0);
  for (int i = 0; i < 3; ++i) p.relevant_papers.push_back({"R", "a", parse_date("2020-01-01"), 0.1});
  EXPECT_FALSE(validate_record(p).empty());
}

TEST(Rational, Parses) {
  auto r = parse_rational("3/10");
  EXPECT_EQ(r.num, 3);
  EXPECT_EQ(r.den, 10);
  r = parse_rational("0.3");
  EXPECT_EQ(r.num * 10, r.den * 3);
  EXPECT_THROW(parse_rational("4/3"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
}

TEST(Benchmark, ThreeToSevenSplit) {
  auto corpus = fixtures::labelled_corpus(45, 80);
  auto set = split_benchmark(corpus, 100, parse_rational("3/10"), 7);
  EXPECT_EQ(set.accept_count, 30u);
  EXPECT_EQ(set.reject_count, 70u);
  EXPECT_EQ(set.entries.size(), 100u);
  std::map<std::string, Decision> by_id;
  for (const auto& p : corpus) by_id[p.id] = p.decision;
  std::size_t acc = 0;
  for (const auto& id : set.entries) acc += by_id.at(id) == Decision::kAccept;
  EXPECT_EQ(acc, 30u);
  EXPECT_EQ(split_benchmark(corpus, 100, parse_rational("3/10"), 7), set);
  EXPECT_NE(split_benchmark(corpus, 100, parse_rational("3/10"), 8).entries, set.entries);
}

TEST(Benchmark, EntriesKeepCorpusOrder) {
  auto corpus = fixtures::labelled_corpus(10, 10);
  auto set = split_benchmark(corpus, 10, {1, 2}, 3);
  std::vector<std::size_t> pos;
  for (const auto& id : set.entries) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].id == id) pos.push_back(i);
    }
  }
  EXPECT_TRUE(std::is_sorted(pos.begin(), pos.end()));
}

TEST(Benchmark, CapacityError) {
  auto corpus = fixtures::labelled_corpus(10, 100);
  try {
    split_benchmark(corpus, 100, parse_rational("3/10"), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacity);
    EXPECT_NE(std::string(e.what()).find("30 accepted"), std::string::npos);
  }
}

TEST(Benchmark, JsonRoundTrip) {
  auto set = split_benchmark(fixtures::labelled_corpus(5, 5), 4, {1, 2}, 11);
  EXPECT_EQ(benchmark_from_json(to_json(set)), set);
}

TEST(SeededPermutation, IsPermutationAndSeeded) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng() % 40;
    auto p = seeded_permutation(n, trial);
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(sorted[i], i);
    EXPECT_EQ(seeded_permutation(n, trial), p);
  }
}

TEST(SeededPermutation, PinnedOutput) {
  // Pinned so a change of RNG or shuffle algorithm shows up as a diff.
  EXPECT_EQ(seeded_permutation(10, 0), (std::vector<std::size_t>{7, 2, 0, 8, 3, 9, 6, 1, 5, 4}));
  EXPECT_EQ(seeded_permutation(10, 42), (std::vector<std::size_t>{1, 7, 9, 0, 3, 8, 4, 2, 5, 6}));
  EXPECT_NE(seeded_permutation(10, 42), seeded_permutation(10, 43));
  EXPECT_TRUE(seeded_permutation(0, 1).empty());
}

}  // namespace
}  // namespace reviewkit
