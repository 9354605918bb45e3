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
#include <string>

namespace reviewkit {

// Prompt templates with {{placeholder}} bindings. Defaults are the files
// under templates/ in the source tree.
struct PromptTemplates {
  std::string reviewer_system;
  std::string reviewer_user;
  std::string reviewer_instruction;
  std::string chair_system;
  std::string chair_user;
  std::string judge_system;
  std::string judge_user;
  std::string transcribe_system;
  std::string transcribe_user;
};

const PromptTemplates& default_templates();

// Defaults overridden by any <name>.txt present in `dir` (e.g.
// reviewer_user.txt). Throws Error(kIo) if dir does not exist.
PromptTemplates load_templates(const std::filesystem::path& dir);

}  // namespace reviewkit
