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

#include "reviewkit/error.hpp"
#include "reviewkit/reporting.hpp"

namespace reviewkit {
namespace {

MetricReport report_of(std::array<double, kComponentCount> c) {
  ComponentScores s{{c[0]}, {c[1]}, {c[2]}, {c[3]}, {c[4]}, {c[5]}, {c[6]}};
  return build_report(s);
}

TEST(Format, TwoDecimalsHalfEven) {
  EXPECT_EQ(format_fixed2(98.39), "98.39");
  EXPECT_EQ(format_fixed2(0.125), "0.12");
  EXPECT_EQ(format_fixed2(0.135), "0.14");
  EXPECT_EQ(format_fixed2(98.385), "98.38");
  EXPECT_EQ(format_fixed2(98.395), "98.40");
  EXPECT_EQ(format_fixed2(0.1251), "0.13");
  EXPECT_EQ(format_fixed2(99.995), "100.00");
  EXPECT_EQ(format_fixed2(7.0), "7.00");
  EXPECT_EQ(format_fixed2(0.0), "0.00");
  EXPECT_EQ(format_fixed2(-1.5), "-1.50");
  EXPECT_EQ(format_fixed2(-0.001), "0.00");
}

TEST(Table, HumanRowRendersOverall) {
  const std::vector<LabeledReport> rows = {
      {"Human", report_of({98.88, 89.84, 100, 100, 100, 100, 100})}};
  const auto text = render_table(rows);
  std::istringstream lines(text);
  std::string header, rule, row;
  std::getline(lines, header);
  std::getline(lines, rule);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("Model", 0), 0u);
  EXPECT_NE(header.find("Overall"), std::string::npos);
  EXPECT_EQ(row.substr(row.find_last_not_of(' ') - 4), "98.39");
  EXPECT_NE(row.find("89.84"), std::string::npos);
  EXPECT_EQ(rule.find_first_not_of('-'), std::string::npos);
}

TEST(Table, SortedDescendingWithStableTies) {
  const std::vector<LabeledReport> rows = {{"b", report_of({10, 10, 10, 10, 10, 10, 10})},
                                           {"a", report_of({50, 50, 50, 50, 50, 50, 50})},
                                           {"c", report_of({10, 10, 10, 10, 10, 10, 10})},
                                           {"d", report_of({90, 0, 0, 0, 0, 0, 0})}};
  const auto t = make_comparison(rows);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].label, "a");
  EXPECT_EQ(t.rows[1].label, "d");
  EXPECT_EQ(t.rows[2].label, "b");
  EXPECT_EQ(t.rows[3].label, "c");
  const auto by_distinct = make_comparison(rows, "distinct4");
  EXPECT_EQ(by_distinct.rows[0].label, "d");
  EXPECT_EQ(to_json(t).at("rows").size(), 4u);
}

TEST(Table, Errors) {
  const std::vector<LabeledReport> none;
  EXPECT_THROW(make_comparison(none), Error);
  const std::vector<LabeledReport> one = {{"x", MetricReport{}}};
  EXPECT_THROW(make_comparison(one, "bogus"), Error);
  EXPECT_EQ(table_columns().back(), "overall");
  EXPECT_EQ(table_columns().size(), kComponentCount + 1);
}

TEST(Table, WinRates) {
  WinRateTable t;
  t.rows = {{"model-a", 4.5, 6, 75.0}, {"model-b", 1.5, 6, 25.0}};
  const auto text = render_win_rates(t);
  EXPECT_NE(text.find("model-a"), std::string::npos);
  EXPECT_NE(text.find("75.00"), std::string::npos);
  EXPECT_LT(text.find("model-a"), text.find("model-b"));
}

}  // namespace
}  // namespace reviewkit
