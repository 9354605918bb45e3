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

#include <string_view>

// Contents of templates/ and data/ compiled into the library.
namespace reviewkit::embedded {

std::string_view reviewer_system();
std::string_view reviewer_user();
std::string_view reviewer_instruction();
std::string_view chair_system();
std::string_view chair_user();
std::string_view judge_system();
std::string_view judge_user();
std::string_view transcribe_system();
std::string_view transcribe_user();
std::string_view sentiment_lexicon();
std::string_view stop_words();

}  // namespace reviewkit::embedded
