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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace reviewkit {

// Lowercased word tokens. Words are maximal runs of ASCII letters/digits or
// non-ASCII bytes; everything else separates. Never contains empty strings.
struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

TokenSequence tokenize(std::string_view text);

std::string join_tokens(const TokenSequence& seq, std::string_view sep = " ");

std::string_view trim(std::string_view text) noexcept;
std::string to_lower_ascii(std::string_view text);

// Case-insensitive ASCII substring search; npos when absent.
std::size_t find_ci(std::string_view haystack, std::string_view needle,
                    std::size_t from = 0) noexcept;

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

using StopWords = std::unordered_set<std::string>;

// English function words shipped in data/stop_words.txt.
const StopWords& default_stop_words();

// Replaces every {{name}} with vars[name]. Unknown placeholders are left
// untouched so a template can be inspected for missing bindings.
std::string substitute(std::string_view tmpl,
                       const std::map<std::string, std::string>& vars);

}  // namespace reviewkit
