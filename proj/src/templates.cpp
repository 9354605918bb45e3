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

#include "reviewkit/templates.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "embedded.hpp"
#include "reviewkit/error.hpp"

namespace reviewkit {

const PromptTemplates& default_templates() {
  static const PromptTemplates t{
      std::string(embedded::reviewer_system()),   std::string(embedded::reviewer_user()),
      std::string(embedded::reviewer_instruction()), std::string(embedded::chair_system()),
      std::string(embedded::chair_user()),        std::string(embedded::judge_system()),
      std::string(embedded::judge_user()),        std::string(embedded::transcribe_system()),
      std::string(embedded::transcribe_user())};
  return t;
}

PromptTemplates load_templates(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::kIo, "template directory not found: " + dir.string());
  }
  PromptTemplates t = default_templates();
  const std::pair<const char*, std::string*> slots[] = {
      {"reviewer_system", &t.reviewer_system},     {"reviewer_user", &t.reviewer_user},
      {"reviewer_instruction", &t.reviewer_instruction}, {"chair_system", &t.chair_system},
      {"chair_user", &t.chair_user},               {"judge_system", &t.judge_system},
      {"judge_user", &t.judge_user},               {"transcribe_system", &t.transcribe_system},
      {"transcribe_user", &t.transcribe_user}};
  for (const auto& [name, slot] : slots) {
    const auto path = dir / (std::string(name) + ".txt");
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot read template " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    *slot = buf.str();
  }
  return t;
}

}  // namespace reviewkit
