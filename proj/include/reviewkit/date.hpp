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
#include <string>
#include <string_view>

namespace reviewkit {

// Calendar date; time of day is never significant anywhere in the toolkit.
using Date = std::chrono::year_month_day;

// Parses "YYYY-MM-DD". Throws ParseError on anything else, including
// impossible dates such as 2023-02-30.
Date parse_date(std::string_view text);

std::string format_date(const Date& date);

}  // namespace reviewkit
