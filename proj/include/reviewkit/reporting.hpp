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

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "reviewkit/arena.hpp"
#include "reviewkit/metrics.hpp"

namespace reviewkit {

struct LabeledReport {
  std::string label;
  MetricReport report;
};

// Two decimals, ties rounded to even ("0.125" -> "0.12", "0.135" -> "0.14").
// Ties are judged on the shortest decimal form of the value, so 98.385
// counts as a tie even though its binary value is slightly below.
std::string format_fixed2(double value);

// Column keys accepted by render_table, in display order:
// distinct4 .. sentiment_lexicon, overall.
std::vector<std::string> table_columns();

struct ComparisonTable {
  std::vector<LabeledReport> rows;  // sorted descending by sorted_by
  std::string sorted_by;
};

// Sorts descending by `sort_column` (ties keep label order). Throws
// Error(kArgument) on empty input or an unknown column.
ComparisonTable make_comparison(std::span<const LabeledReport> reports,
                                std::string_view sort_column = "overall");

std::string render_table(const ComparisonTable& table);
std::string render_table(std::span<const LabeledReport> reports,
                         std::string_view sort_column = "overall");

nlohmann::json to_json(const ComparisonTable& table);

std::string render_win_rates(const WinRateTable& table);

}  // namespace reviewkit
