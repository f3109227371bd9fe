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

#ifndef NEGKIT_UTIL_H_
#define NEGKIT_UTIL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

namespace negkit {

using Json = nlohmann::ordered_json;

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// Text helpers. Whitespace means ASCII space, tab, CR, LF.
std::string Trim(std::string_view text);
std::string ToLower(std::string_view text);
std::vector<std::string> SplitTokens(std::string_view text);
std::string JoinTokens(std::span<const std::string> tokens);
bool StartsWith(std::string_view text, std::string_view prefix);
bool EndsWith(std::string_view text, std::string_view suffix);

// Whole-file I/O. Throws Error(kIoError) on failure.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Reads a JSON-lines file; blank lines are skipped. Parse failures throw
// Error(kMalformedInput) naming the 1-based line number.
std::vector<Json> ReadJsonLines(const std::filesystem::path& path);
std::string ToJsonLines(std::span<const Json> rows);

// Seeded generator whose output is identical on every platform. The standard
// distributions are implementation-defined, so bounded draws and shuffles are
// done here on top of the raw mt19937_64 stream.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  // Derives an independent stream for a named purpose.
  DeterministicRng Fork(std::string_view purpose) const;

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);
  bool Coin() { return (engine_() >> 63) != 0; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), in draw order. Requires k <= n.
  std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// thrown by any call is rethrown after all workers stop.
void ParallelFor(std::size_t n, std::size_t workers,
                 const std::function<void(std::size_t)>& fn);

}  // namespace negkit

#endif  // NEGKIT_UTIL_H_
