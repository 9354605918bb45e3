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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reviewkit/evaluation.hpp"
#include "reviewkit/settings.hpp"

namespace reviewkit {

// Exit statuses returned by run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitTransport = 4;
inline constexpr int kExitPipeline = 5;

// Writes to a temporary sibling file and renames it over `path`, so readers
// never observe a partial file. Throws Error(kIo).
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Generated reviews from a JSON object, a JSON array or JSONL. Each item is
// either {"paper_id", "text"} or pipeline output, whose meta-review text is
// taken.
std::vector<GeneratedReview> parse_generated(std::string_view content);

// Human reference per paper: the meta-review when present, else the first
// review.
std::map<std::string, std::string> human_references(std::span<const PaperRecord> corpus);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env());
int run(int argc, char** argv);

}  // namespace reviewkit
