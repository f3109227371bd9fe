// Copyright 2026 The negkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEGKIT_CONFIG_H_
#define NEGKIT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "negkit/util.h"

namespace negkit {

// Flat key set of the pipeline configuration file. The file is INI-style:
// "key = value" lines, '#' or ';' comments, and optional [section] headers
// that prefix their keys with "section.". Every key has a default; unknown
// keys are rejected.
struct KeySpec {
  const char* key;
  const char* default_value;
  const char* help;
};
const std::vector<KeySpec>& ConfigKeys();

class Config {
 public:
  // Defaults only; `base_dir` anchors relative paths.
  explicit Config(std::filesystem::path base_dir = ".");

  // Throws kConfigError on syntax errors or unknown keys.
  static Config Load(const std::filesystem::path& path);
  static Config Parse(const std::string& text, std::filesystem::path base_dir);

  // "key=value" override; throws kConfigError on an unknown key.
  void Set(const std::string& key, const std::string& value);
  void ApplyOverride(const std::string& assignment);

  std::string GetString(const std::string& key) const;
  std::int64_t GetInt(const std::string& key) const;
  std::uint64_t GetSeed(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  bool GetBool(const std::string& key) const;
  std::vector<std::string> GetList(const std::string& key) const;
  // Empty value means unset. Relative paths resolve against the config dir.
  std::optional<std::filesystem::path> GetPath(const std::string& key) const;

  // Throws kConfigError if an input.* path is set but missing.
  void ValidateInputs() const;

  // "key=value\n" for every key, sorted; the basis of Hash().
  std::string Canonical() const;
  std::string Hash() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::filesystem::path base_dir_;
  std::map<std::string, std::string> values_;
};

}  // namespace negkit

#endif  // NEGKIT_CONFIG_H_
