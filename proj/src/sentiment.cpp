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

#include "reviewkit/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "embedded.hpp"
#include "reviewkit/error.hpp"
#include "reviewkit/metrics.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;

SentimentLexicon parse_lexicon(std::string_view text) {
  SentimentLexicon lex;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(line_no, "lexicon line lacks a tab");
    const auto token = to_lower_ascii(trim(line.substr(0, tab)));
    const auto num = trim(line.substr(tab + 1));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc{} || ptr != num.data() + num.size() || token.empty()) {
      throw ParseError(line_no, "malformed lexicon entry");
    }
    lex.valence[token] = v;
  }
  return lex;
}

SentimentLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str());
}

const SentimentLexicon& default_lexicon() {
  static const SentimentLexicon lex = parse_lexicon(embedded::sentiment_lexicon());
  return lex;
}

namespace {

const std::unordered_set<std::string>& boosters() {
  static const std::unordered_set<std::string> words = {
      "absolutely", "amazingly", "completely", "considerably", "deeply",  "especially",
      "extremely",  "greatly",   "highly",     "hugely",       "incredibly", "particularly",
      "really",     "remarkably", "substantially", "thoroughly", "totally", "truly",
      "very",       "most",      "so",         "quite"};
  return words;
}

const std::unordered_set<std::string>& dampeners() {
  static const std::unordered_set<std::string> words = {"almost",   "barely",   "marginally",
                                                        "slightly", "somewhat", "partly",
                                                        "less",     "little"};
  return words;
}

const std::unordered_set<std::string>& negators() {
  // "t" is what tokenize leaves of n't.
  static const std::unordered_set<std::string> words = {
      "not", "no", "never", "cannot", "t", "nor", "neither", "without",
      "nothing", "none", "nobody", "nowhere", "hardly", "rarely", "seldom"};
  return words;
}

}  // namespace

double normalize_valence(double sum) {
  if (sum == 0.0) return 0.0;
  return std::clamp(sum / std::sqrt(sum * sum + kNormalizationAlpha), -1.0, 1.0);
}

double LexiconSentiment::raw_sum(std::string_view text) const {
  const auto tokens = tokenize(text).tokens;
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = lexicon_.valence.find(tokens[i]);
    if (it == lexicon_.valence.end()) continue;
    double v = it->second;
    if (i > 0) {
      const double sign = v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
      if (boosters().count(tokens[i - 1])) v += sign * kBoosterIncrement;
      else if (dampeners().count(tokens[i - 1])) v -= sign * kBoosterIncrement;
    }
    for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
      if (negators().count(tokens[i - back])) {
        v *= kNegationScalar;
        break;
      }
    }
    sum += v;
  }
  return sum;
}

SentimentPolarity LexiconSentiment::polarity(std::string_view text) {
  return {normalize_valence(raw_sum(text)), name()};
}

HttpSentimentClassifier::HttpSentimentClassifier(ClassifierOptions options,
                                                 std::shared_ptr<HttpTransport> transport)
    : options_(std::move(options)), transport_(std::move(transport)) {}

double decode_classifier_polarity(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kDecode, std::string("classifier response is not JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("polarity")) {
    if (!j["polarity"].is_number()) throw Error(ErrorKind::kDecode, "polarity must be a number");
    return std::clamp(j["polarity"].get<double>(), -1.0, 1.0);
  }
  while (j.is_array() && !j.empty() && j.front().is_array()) j = j.front();
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::kDecode, "unrecognized classifier response");
  double pos = 0.0, neg = 0.0;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("label") || !item.contains("score") ||
        !item["label"].is_string() || !item["score"].is_number()) {
      throw Error(ErrorKind::kDecode, "classifier entries need label and score");
    }
    const auto label = to_lower_ascii(item["label"].get<std::string>());
    const double score = item["score"].get<double>();
    if (label.find("pos") != std::string::npos || label == "label_1") pos += score;
    else if (label.find("neg") != std::string::npos || label == "label_0") neg += score;
  }
  return std::clamp(pos - neg, -1.0, 1.0);
}

SentimentPolarity HttpSentimentClassifier::polarity(std::string_view text) {
  if (trim(text).empty()) return {0.0, name()};
  HttpRequest req;
  req.method = "POST";
  req.url = options_.endpoint;
  req.timeout = options_.timeout;
  if (!options_.api_key.empty()) req.headers["Authorization"] = "Bearer " + options_.api_key;
  req.body = json{{"inputs", std::string(text)}}.dump();
  const auto resp = transport_->send(req);
  throw_for_status(resp, "sentiment classifier");
  return {decode_classifier_polarity(resp.body), name()};
}

double sentiment_consistency(std::string_view generated, std::string_view reference,
                             SentimentProvider& provider) {
  return sentiment_distance_score(provider.polarity(generated).value,
                                  provider.polarity(reference).value);
}

}  // namespace reviewkit
