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

#include "reviewkit/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "reviewkit/error.hpp"

namespace reviewkit {

namespace {

const std::vector<std::string> kColumns = {"distinct4", "inverse_self_bleu4", "rouge1_f1",
                                           "rougeL_f1", "spice_like", "sentiment_model",
                                           "sentiment_lexicon", "overall"};
const std::vector<std::string> kHeaders = {"Distinct-4", "Inv-SBLEU@4", "ROUGE-1",
                                           "ROUGE-L", "SPICE", "Sent-Model",
                                           "Sent-Lexicon", "Overall"};

double column_value(const MetricReport& r, std::size_t col) {
  if (col < kComponentCount) return r.components()[col];
  return r.overall;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string format_fixed2(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  // Shortest round-trip decimal, then round that digit string.
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  std::string digits(buf, ec == std::errc() ? end : buf);
  bool negative = !digits.empty() && digits[0] == '-';
  if (negative) digits.erase(0, 1);
  auto dot = digits.find('.');
  std::string ip = dot == std::string::npos ? digits : digits.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : digits.substr(dot + 1);
  std::string kept = fp.substr(0, std::min<std::size_t>(2, fp.size()));
  kept.resize(2, '0');
  std::string rest = fp.size() > 2 ? fp.substr(2) : "";

  bool round_up = false;
  if (!rest.empty()) {
    if (rest[0] > '5') {
      round_up = true;
    } else if (rest[0] == '5') {
      bool beyond = rest.find_first_not_of('0', 1) != std::string::npos;
      round_up = beyond || ((kept[1] - '0') % 2 == 1);
    }
  }
  std::string all = ip + kept;
  if (round_up) {
    int i = static_cast<int>(all.size()) - 1;
    while (i >= 0 && all[i] == '9') all[i--] = '0';
    if (i < 0) {
      all.insert(all.begin(), '1');
    } else {
      ++all[i];
    }
  }
  std::string out = all.substr(0, all.size() - 2) + "." + all.substr(all.size() - 2);
  if (negative && out.find_first_not_of("0.") != std::string::npos) out.insert(0, "-");
  return out;
}

std::vector<std::string> table_columns() { return kColumns; }

ComparisonTable make_comparison(std::span<const LabeledReport> reports,
                                std::string_view sort_column) {
  if (reports.empty()) throw Error(ErrorKind::kArgument, "no reports to render");
  auto it = std::find(kColumns.begin(), kColumns.end(), sort_column);
  if (it == kColumns.end()) {
    throw Error(ErrorKind::kArgument, "unknown sort column '" + std::string(sort_column) + "'");
  }
  const auto col = static_cast<std::size_t>(it - kColumns.begin());
  ComparisonTable t;
  t.sorted_by = std::string(sort_column);
  t.rows.assign(reports.begin(), reports.end());
  std::stable_sort(t.rows.begin(), t.rows.end(), [&](const LabeledReport& a, const LabeledReport& b) {
    return column_value(a.report, col) > column_value(b.report, col);
  });
  return t;
}

std::string render_table(const ComparisonTable& table) {
  std::size_t label_width = 5;  // "Model"
  for (const auto& r : table.rows) label_width = std::max(label_width, r.label.size());
  std::vector<std::size_t> widths;
  for (const auto& h : kHeaders) widths.push_back(std::max<std::size_t>(h.size(), 7));

  std::string out = pad_right("Model", label_width);
  for (std::size_t c = 0; c < kHeaders.size(); ++c) out += "  " + pad_left(kHeaders[c], widths[c]);
  out += "\n";
  std::size_t rule = label_width;
  for (auto w : widths) rule += w + 2;
  out += std::string(rule, '-') + "\n";
  for (const auto& r : table.rows) {
    out += pad_right(r.label, label_width);
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      out += "  " + pad_left(format_fixed2(column_value(r.report, c)), widths[c]);
    }
    out += "\n";
  }
  return out;
}

std::string render_table(std::span<const LabeledReport> reports, std::string_view sort_column) {
  return render_table(make_comparison(reports, sort_column));
}

nlohmann::json to_json(const ComparisonTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"label", r.label}, {"report", to_json(r.report)}});
  }
  return {{"sorted_by", table.sorted_by}, {"columns", kColumns}, {"rows", std::move(rows)}};
}

std::string render_win_rates(const WinRateTable& table) {
  std::size_t width = 5;
  for (const auto& r : table.rows) width = std::max(width, r.model.size());
  std::string out = pad_right("Model", width) + "  " + pad_left("Wins", 8) + "  " +
                    pad_left("Games", 6) + "  " + pad_left("Win rate", 8) + "\n";
  out += std::string(width + 30, '-') + "\n";
  for (const auto& r : table.rows) {
    out += pad_right(r.model, width) + "  " + pad_left(format_fixed2(r.wins), 8) + "  " +
           pad_left(std::to_string(r.comparisons), 6) + "  " +
           pad_left(format_fixed2(r.win_rate), 8) + "\n";
  }
  return out;
}

}  // namespace reviewkit
