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

#include "reviewkit/settings.hpp"

#include <cctype>
#include <cstdlib>
#include <thread>

#include "reviewkit/text.hpp"

namespace reviewkit {

const char* to_string(SettingSource s) noexcept {
  switch (s) {
    case SettingSource::kDefault: return "default";
    case SettingSource::kFile: return "config";
    case SettingSource::kEnv: return "env";
    case SettingSource::kFlag: return "flag";
  }
  return "default";
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = trim(text.substr(pos, nl - pos));
    ++line_no;
    pos = nl + 1;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
}

std::string env_name_for(std::string_view key) {
  std::string out = "REVIEWKIT_";
  for (char c : key) {
    out += std::isalnum(static_cast<unsigned char>(c))
               ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
               : '_';
  }
  return out;
}

Settings Settings::with_defaults() {
  Settings s;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::map<std::string, std::string> defaults = {
      {"seed", "0"},
      {"jobs", std::to_string(hw)},
      {"n_reviewers", "3"},
      {"max_in_flight", "4"},
      {"max_attempts", "3"},
      {"max_parse_retries", "2"},
      {"char_budget", "48000"},
      {"reviewer_profile", "mock"},
      {"chair_profile", "mock"},
      {"judge_profile", "mock"},
      {"transcribe_profile", "mock"},
      {"search", "corpus"},
      {"search_base_url", "https://api.semanticscholar.org"},
      {"search_api_key", ""},
      {"embedder", "hashing"},
      {"embedding_endpoint", ""},
      {"embedding_model", ""},
      {"sentiment_endpoint", ""},
      {"recall_threshold", "0.85"},
      {"templates_dir", ""},
      {"mock_script", ""},
  };
  for (const auto& [k, v] : defaults) s.set(k, v, SettingSource::kDefault);
  return s;
}

void Settings::set(const std::string& key, std::string value, SettingSource source) {
  auto it = values_.find(key);
  if (it != values_.end() && static_cast<int>(source) < static_cast<int>(it->second.source)) return;
  values_[key] = Value{std::move(value), source};
}

void Settings::apply_file(const std::map<std::string, std::string>& values) {
  for (const auto& [k, v] : values) set(k, v, SettingSource::kFile);
}

void Settings::apply_env(const EnvLookup& env) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : values_) keys.push_back(k);
  for (const auto& [k, v] : values_) {
    if (k.size() > 8 && k.compare(k.size() - 8, 8, "_profile") == 0) {
      for (const char* field : {"endpoint", "model", "api_key_env"}) {
        keys.push_back("profile." + v.text + "." + field);
      }
    }
  }
  for (const auto& k : keys) {
    if (auto v = env(env_name_for(k))) set(k, *v, SettingSource::kEnv);
  }
}

bool Settings::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Settings::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.text;
}

long long Settings::get_int(const std::string& key) const {
  const auto text = get(key);
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kUsage, "setting '" + key + "' must be an integer, got '" + text + "'");
  }
}

double Settings::get_double(const std::string& key) const {
  const auto text = get(key);
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kUsage, "setting '" + key + "' must be a number, got '" + text + "'");
  }
}

SettingSource Settings::source(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? SettingSource::kDefault : it->second.source;
}

std::string Settings::describe() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    const bool secret = k.find("api_key") != std::string::npos && k.find("_env") == std::string::npos;
    out += k + " = " + (secret && !v.text.empty() ? "<redacted>" : v.text) + "  (" +
           to_string(v.source) + ")\n";
  }
  return out;
}

ProviderProfile resolve_profile(const Settings& settings, const std::string& name,
                                const EnvLookup& env) {
  ProviderProfile p;
  p.name = name;
  if (name == "mock") {
    p.kind = "mock";
    return p;
  }
  const std::string prefix = "profile." + name + ".";
  p.kind = "openai";
  p.endpoint = settings.get(prefix + "endpoint");
  p.model = settings.get(prefix + "model");
  if (p.endpoint.empty()) {
    throw Error(ErrorKind::kUsage, "provider profile '" + name + "' has no endpoint (set " +
                                       prefix + "endpoint or " +
                                       env_name_for(prefix + "endpoint") + ")");
  }
  auto key_var = settings.get(prefix + "api_key_env", env_name_for(prefix + "api_key"));
  if (auto key = env(key_var)) p.api_key = *key;
  return p;
}

std::shared_ptr<ChatProvider> make_provider(const ProviderProfile& profile,
                                            const std::optional<nlohmann::json>& mock_script,
                                            std::shared_ptr<HttpTransport> transport) {
  if (profile.kind == "mock") {
    if (mock_script) return scripted_provider_from_json(*mock_script, profile.name);
    return std::make_shared<ScriptedProvider>(std::vector<ScriptRule>{}, synthetic_reply,
                                              profile.name);
  }
  OpenAiChatOptions o;
  o.endpoint = profile.endpoint;
  o.api_key = profile.api_key;
  o.model = profile.model;
  return std::make_shared<OpenAiChatProvider>(std::move(o), std::move(transport));
}

}  // namespace reviewkit
