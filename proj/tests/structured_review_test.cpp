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

#include <random>

#include "reviewkit/error.hpp"
#include "reviewkit/structured_review.hpp"

namespace reviewkit {
namespace {

const std::vector<std::string> kWords = {
    "the",    "method", "results", "are",   "novel",  "weak",     "strong", "baseline",
    "unclear", "I",     "accept",  "reject", "not",   "cannot",   "paper",  "should",
    "be",     "clear",  "writing", "is",    "good",   "(see",     "Table",  "3).",
    "ablation", "missing", "-",    "and",   "but",    "accepted", "rejection", "x:y"};

std::string sentence(std::mt19937& rng, int max_words) {
  std::uniform_int_distribution<int> len(1, max_words);
  std::uniform_int_distribution<std::size_t> pick(0, kWords.size() - 1);
  std::string s;
  for (int i = 0, n = len(rng); i < n; ++i) {
    if (i) s += ' ';
    s += kWords[pick(rng)];
  }
  return s;
}

std::string paragraph(std::mt19937& rng) {
  std::string s = sentence(rng, 12);
  if (rng() % 3 == 0) s += "\n" + sentence(rng, 8);
  return s;
}

StructuredReview random_review(std::mt19937& rng) {
  StructuredReview r;
  r.summary = paragraph(rng);
  std::uniform_int_distribution<int> items(0, 4);
  int ns = items(rng), nw = items(rng);
  if (ns + nw == 0) ns = 1;
  for (int i = 0; i < ns; ++i) r.strengths.push_back(sentence(rng, 10));
  for (int i = 0; i < nw; ++i) r.weaknesses.push_back(sentence(rng, 10));
  r.conclusion = paragraph(rng);
  r.verdict = extract_verdict(r.conclusion);
  return r;
}

TEST(StructuredReview, CanonicalRendering) {
  StructuredReview r{"Sum.", {"a"}, {"b", "c"}, "I recommend acceptance.", Verdict::kAccept};
  EXPECT_EQ(render_structured(r),
            "<SUMMARY>\nSum.\n</SUMMARY>\n<ANALYZE>\nStrengths:\n- a\nWeaknesses:\n- b\n- c\n"
            "</ANALYZE>\n<CONCLUDE>\nI recommend acceptance.\n</CONCLUDE>\n");
}

TEST(StructuredReview, RoundTripProperty) {
  std::mt19937 rng(1234);
  for (int i = 0; i < 500; ++i) {
    auto r = random_review(rng);
    ASSERT_TRUE(validate_review(r).empty()) << render_structured(r);
    const auto text = render_structured(r);
    ASSERT_EQ(parse_structured(text), r) << text;
  }
}

TEST(StructuredReview, CompactInlineForm) {
  const auto r = parse_structured(
      "<SUMMARY>S</SUMMARY><ANALYZE>Strengths: - a\nWeaknesses: - b</ANALYZE><CONCLUDE>Reject. R</CONCLUDE>");
  EXPECT_EQ(r.summary, "S");
  EXPECT_EQ(r.strengths, std::vector<std::string>{"a"});
  EXPECT_EQ(r.weaknesses, std::vector<std::string>{"b"});
  EXPECT_EQ(r.verdict, Verdict::kReject);
}

TEST(StructuredReview, RoundTripWithCustomGrammar) {
  TagGrammar g;
  g.stage_tags = {{{"[S]", "[/S]"}, {"[A]", "[/A]"}, {"[C]", "[/C]"}}};
  g.strengths_header = "Pros:";
  g.weaknesses_header = "Cons:";
  g.list_item_marker = "* ";
  ASSERT_TRUE(validate_grammar(g).empty());
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    auto r = random_review(rng);
    EXPECT_EQ(parse_structured(render_structured(r, g), g), r);
  }
}

TEST(StructuredReview, FuzzNeverCrashes) {
  std::mt19937 rng(77);
  const std::vector<std::string> fragments = {"<SUMMARY>", "</SUMMARY>", "<ANALYZE>", "</ANALYZE>",
                                              "<CONCLUDE>", "</CONCLUDE>", "Strengths:",
                                              "Weaknesses:", "- ", "\n", "accept", "x"};
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 64);
    for (int k = 0; k < len; ++k) {
      if (rng() % 4 == 0) {
        s += fragments[rng() % fragments.size()];
      } else {
        s += static_cast<char>(rng() % 256);
      }
    }
    try {
      auto r = parse_structured(s);
      EXPECT_FALSE(r.summary.empty());
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::kStructure || e.kind() == ErrorKind::kContent)
          << to_string(e.kind());
    }
  }
}

TEST(StructuredReview, MissingMarkerNamesStage) {
  try {
    parse_structured("<SUMMARY>\ns\n</SUMMARY>\n<CONCLUDE>\nok\n</CONCLUDE>");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStructure);
    EXPECT_NE(std::string(e.what()).find("ANALYZE"), std::string::npos);
  }
}

TEST(StructuredReview, InterleavedStagesRejected) {
  const std::string text =
      "<SUMMARY>\ns\n<ANALYZE>\n</SUMMARY>\nStrengths:\n- a\nWeaknesses:\n</ANALYZE>\n"
      "<CONCLUDE>\nc\n</CONCLUDE>";
  try {
    parse_structured(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStructure);
  }
}

TEST(StructuredReview, DuplicateMarkerRejected) {
  StructuredReview r{"S.", {"a"}, {}, "Fine.", Verdict::kUndetermined};
  auto text = render_structured(r) + "<SUMMARY>\nagain\n</SUMMARY>\n";
  EXPECT_THROW(parse_structured(text), Error);
}

TEST(StructuredReview, EmptyStageIsContentError) {
  try {
    parse_structured("<SUMMARY>\n \n</SUMMARY><ANALYZE>\nStrengths:\n- a\n</ANALYZE><CONCLUDE>ok</CONCLUDE>");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kContent);
  }
}

TEST(StructuredReview, ToleratesSurroundingTextAndContinuationLines) {
  const std::string text =
      "Sure, here is the review.\n<SUMMARY>\nA study.\n</SUMMARY>\n<ANALYZE>\nstrengths:\n"
      "- first point\n  continues here\nWeaknesses:\n- weak point\n</ANALYZE>\n<CONCLUDE>\n"
      "I would not accept this paper.\n</CONCLUDE>\nThanks!";
  auto r = parse_structured(text);
  EXPECT_EQ(r.summary, "A study.");
  ASSERT_EQ(r.strengths.size(), 1u);
  EXPECT_EQ(r.weaknesses, std::vector<std::string>{"weak point"});
  EXPECT_EQ(r.verdict, Verdict::kReject);
}

TEST(StructuredReview, RenderRejectsInvalid) {
  StructuredReview r{" padded", {"a"}, {}, "c", Verdict::kUndetermined};
  EXPECT_THROW(render_structured(r), Error);
  r = {"s", {"two\nlines"}, {}, "c", Verdict::kUndetermined};
  EXPECT_THROW(render_structured(r), Error);
  r = {"s", {"a"}, {}, "I recommend acceptance.", Verdict::kReject};
  EXPECT_THROW(render_structured(r), Error);
}

TEST(Verdict, Extraction) {
  EXPECT_EQ(extract_verdict("I recommend acceptance."), Verdict::kAccept);
  EXPECT_EQ(extract_verdict("This paper should be rejected."), Verdict::kReject);
  EXPECT_EQ(extract_verdict("I cannot accept this work."), Verdict::kReject);
  EXPECT_EQ(extract_verdict("I would not reject it."), Verdict::kAccept);
  EXPECT_EQ(extract_verdict("Accept or reject, hard to say."), Verdict::kUndetermined);
  EXPECT_EQ(extract_verdict("Interesting work."), Verdict::kUndetermined);
  EXPECT_EQ(extract_verdict("The paper is acceptable, don't reject."), Verdict::kAccept);
}

TEST(Grammar, ValidationCatchesCollisions) {
  TagGrammar g;
  g.stage_tags[1].open = g.stage_tags[0].open;
  EXPECT_FALSE(validate_grammar(g).empty());
  g = {};
  g.list_item_marker = "";
  EXPECT_FALSE(validate_grammar(g).empty());
}

}  // namespace
}  // namespace reviewkit
