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

#include "negkit/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cstdlib>
#include <sstream>

#include "negkit/error.h"

namespace negkit {
namespace {

namespace pt = boost::property_tree;

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kConfigError, message);
}

void Flatten(const pt::ptree& tree, const std::string& prefix,
             std::map<std::string, std::string>& out) {
  for (const auto& [key, child] : tree) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (child.empty()) {
      out[name] = Trim(child.data());
    } else {
      Flatten(child, name, out);
    }
  }
}

}  // namespace

const std::vector<KeySpec>& ConfigKeys() {
  static const std::vector<KeySpec> kKeys = {
      {"input.atomic", "", "ATOMIC release file (CSV/TSV or canonical JSONL)"},
      {"input.anion", "", "ANION logical-negation file"},
      {"input.split", "train", "split to ingest: train or test"},
      {"input.test_atomic", "", "ATOMIC file for the benchmark test split"},
      {"output.dir", "out", "artifact directory"},
      {"prompts.dir", "", "prompt asset directory; empty uses the bundled set"},
      {"backend.mode", "mock", "mock or http"},
      {"backend.base_url", "", "chat-completion base URL for http mode"},
      {"backend.model", "mock-model", "model name sent to the backend"},
      {"backend.judge_model", "", "judge model name; empty reuses backend.model"},
      {"backend.api_key_env", "NEGKIT_API_KEY", "environment variable holding the credential"},
      {"backend.concurrency", "4", "maximum in-flight requests"},
      {"backend.cache_path", "", "JSONL response cache; empty disables persistence"},
      {"backend.temperature", "0", "sampling temperature"},
      {"backend.max_retries", "3", "retries after the first attempt"},
      {"backend.timeout_seconds", "60", "per-request timeout"},
      {"seeds.judge_data", "11", "judge training-set sampling"},
      {"seeds.baseline", "12", "baseline corpus sampling"},
      {"seeds.subset", "13", "size-ablation subsets"},
      {"seeds.random_labels", "14", "random-label ablation"},
      {"seeds.benchmark", "15", "benchmark sampling"},
      {"seeds.task_order", "", "annotation task order; empty keeps id order"},
      {"negate.mode", "rules", "rules or generative"},
      {"negate.fallback_to_rules", "true", "use rules when a generative rewrite is rejected"},
      {"negate.min_overlap", "0.8", "content-token overlap a rewrite must keep"},
      {"judge.per_relation_per_label", "200", "judge training instances per relation and label"},
      {"judge.sources", "atomic,anion", "sources of Valid and Ambiguous instances"},
      {"judge.train", "", "judge training JSONL written by judge-build"},
      {"judge.gold", "", "gold labeled JSONL for judge-eval"},
      {"judge.predictions", "", "verdict JSONL for judge-eval"},
      {"label.input", "", "triples to label; empty uses the negate output"},
      {"label.attempts", "3", "judge attempts per triple"},
      {"label.quarantine_threshold", "", "abort when more triples are quarantined; empty means never"},
      {"stats.input", "", "labeled JSONL; empty uses the label output"},
      {"build.input", "", "labeled JSONL; empty uses the label output"},
      {"build.invalid_pool", "", "labeled Invalid pool; empty uses judge-build's pool"},
      {"build.subset_sizes", "1000,10000", "triples per source for size ablations"},
      {"build.variant_ablation", "true", "emit per-variant subsets"},
      {"build.random_labels", "true", "emit the random-label ablation"},
      {"build.instruction", "", "instruction text; empty uses the default"},
      {"bench.per_relation", "200", "originals sampled per relation"},
      {"annotate.data_dir", "", "session directory; empty uses <output.dir>/annotation"},
      {"annotate.host", "127.0.0.1", "listen address"},
      {"annotate.port", "8080", "listen port"},
      {"annotate.policy", "AGREE_ONLY", "AGREE_ONLY or THIRD_PASS"},
      {"annotate.annotators", "a1,a2", "the two primary annotator ids"},
      {"annotate.adjudicator", "adjudicator", "THIRD_PASS adjudicator id"},
      {"annotate.strict", "true", "require complete labels before adjudication"},
      {"eval.task", "", "condaqa, nevir, rte, snli, mnli or csqa"},
      {"eval.gold", "", "gold JSONL"},
      {"eval.predictions", "", "prediction JSONL"},
      {"eval.baseline", "", "baseline prediction JSONL for delta and McNemar"},
      {"eval.label_set", "", "comma-separated labels; empty uses the task default"},
      {"eval.prompt", "", "prompt asset for inference; empty uses the task default"},
      {"eval.exemplars", "", "file bound to {exemplars} in the prompt"},
  };
  return kKeys;
}

Config::Config(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {
  for (const auto& spec : ConfigKeys()) values_[spec.key] = spec.default_value;
}

Config Config::Load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) Fail("config file not found: " + path.string());
  return Parse(ReadFile(path), path.has_parent_path() ? path.parent_path()
                                                      : std::filesystem::path("."));
}

Config Config::Parse(const std::string& text, std::filesystem::path base_dir) {
  pt::ptree tree;
  std::istringstream stream(text);
  try {
    pt::ini_parser::read_ini(stream, tree);
  } catch (const pt::ini_parser_error& e) {
    Fail(std::string("config syntax error: ") + e.what());
  }
  std::map<std::string, std::string> flat;
  Flatten(tree, "", flat);
  Config config(std::move(base_dir));
  for (const auto& [key, value] : flat) config.Set(key, value);
  return config;
}

void Config::Set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) Fail("unknown config key '" + key + "'");
  it->second = Trim(value);
}

void Config::ApplyOverride(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) Fail("override must be key=value: " + assignment);
  Set(Trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::string Config::GetString(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) Fail("unknown config key '" + key + "'");
  return it->second;
}

std::int64_t Config::GetInt(const std::string& key) const {
  const std::string text = GetString(key);
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || errno != 0 || *end != '\0') {
    Fail(key + " must be an integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t Config::GetSeed(const std::string& key) const {
  const std::string text = GetString(key);
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || text[0] == '-' || errno != 0 || *end != '\0') {
    Fail(key + " must be a non-negative integer seed, got '" + text + "'");
  }
  return value;
}

double Config::GetDouble(const std::string& key) const {
  const std::string text = GetString(key);
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || errno != 0 || *end != '\0') {
    Fail(key + " must be a number, got '" + text + "'");
  }
  return value;
}

bool Config::GetBool(const std::string& key) const {
  const std::string text = ToLower(GetString(key));
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  Fail(key + " must be a boolean, got '" + text + "'");
}

std::vector<std::string> Config::GetList(const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream stream(GetString(key));
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::optional<std::filesystem::path> Config::GetPath(const std::string& key) const {
  const std::string text = GetString(key);
  if (text.empty()) return std::nullopt;
  std::filesystem::path path(text);
  if (path.is_relative()) path = base_dir_ / path;
  return path.lexically_normal();
}

void Config::ValidateInputs() const {
  for (const auto& [key, value] : values_) {
    if (!StartsWith(key, "input.") || key == "input.split" || value.empty()) continue;
    const auto path = GetPath(key);
    if (!std::filesystem::exists(*path)) {
      Fail(key + " points to a missing file: " + path->string());
    }
  }
}

std::string Config::Canonical() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
  return out;
}

std::string Config::Hash() const { return Sha256Hex(Canonical()); }

}  // namespace negkit
