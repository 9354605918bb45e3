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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reviewkit/http.hpp"
#include "reviewkit/llm_gateway.hpp"

namespace reviewkit {

enum class SettingSource { kDefault, kFile, kEnv, kFlag };

const char* to_string(SettingSource s) noexcept;

// key = value lines; '#' starts a comment line. Throws ParseError with the
// line number on a line without '='.
std::map<std::string, std::string> parse_config_text(std::string_view text);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_env();

// "reviewer_profile" -> "REVIEWKIT_REVIEWER_PROFILE", "profile.x.model" ->
// "REVIEWKIT_PROFILE_X_MODEL".
std::string env_name_for(std::string_view key);

// Layered key/value settings: flags > environment > config file > defaults.
class Settings {
 public:
  static Settings with_defaults();

  void set(const std::string& key, std::string value, SettingSource source);
  // Environment values for every key already known plus profile keys of
  // every profile mentioned in the *_profile settings.
  void apply_env(const EnvLookup& env);
  void apply_file(const std::map<std::string, std::string>& values);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback = "") const;
  long long get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  SettingSource source(const std::string& key) const;

  // "key = value  (source)" per line, sorted by key; api keys redacted.
  std::string describe() const;

 private:
  struct Value {
    std::string text;
    SettingSource source = SettingSource::kDefault;
  };
  std::map<std::string, Value> values_;
};

struct ProviderProfile {
  std::string name;
  std::string kind;  // "mock" or "openai"
  std::string endpoint;
  std::string model;
  std::string api_key;
};

// "mock" is built in. Other profiles need profile.<name>.endpoint; the key
// comes from the variable named by profile.<name>.api_key_env (default
// REVIEWKIT_PROFILE_<NAME>_API_KEY). Throws Error(kUsage) when incomplete.
ProviderProfile resolve_profile(const Settings& settings, const std::string& name,
                                const EnvLookup& env);

// Mock profiles use `mock_script` when given, the synthetic generator
// otherwise.
std::shared_ptr<ChatProvider> make_provider(const ProviderProfile& profile,
                                            const std::optional<nlohmann::json>& mock_script,
                                            std::shared_ptr<HttpTransport> transport);

}  // namespace reviewkit
