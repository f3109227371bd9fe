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


#include "negkit/util.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>

#include "negkit/error.h"

namespace negkit {
namespace {

TEST(Sha256Test, KnownDigests) {
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(TextTest, TrimSplitJoin) {
  EXPECT_EQ(Trim("  a b \t\n"), "a b");
  EXPECT_EQ(Trim("   "), "");
  EXPECT_EQ(ToLower("PersonX"), "personx");
  const auto tokens = SplitTokens("  PersonX   takes\ta picture ");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(tokens[1], "takes");
  EXPECT_EQ(JoinTokens(tokens), "PersonX takes a picture");
  EXPECT_TRUE(StartsWith("not happy", "not "));
  EXPECT_TRUE(EndsWith("file.jsonl", ".jsonl"));
}

TEST(ErrorTest, ExitStatusMapping) {
  EXPECT_EQ(ExitStatusFor(ErrorCode::kConfigError), 1);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kBackendUnavailable), 3);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kProtocolError), 3);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kShortfall), 2);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kMalformedInput), 2);
  Error error(ErrorCode::kShortfall, "short");
  EXPECT_EQ(error.name(), "ShortfallError");
}

TEST(DeterministicRngTest, SameSeedSameStream) {
  DeterministicRng a(42), b(42), c(43);
  std::vector<std::uint64_t> xs, ys, zs;
  for (int i = 0; i < 16; ++i) {
    xs.push_back(a.Next());
    ys.push_back(b.Next());
    zs.push_back(c.Next());
  }
  EXPECT_EQ(xs, ys);
  EXPECT_NE(xs, zs);
}

TEST(DeterministicRngTest, ForksAreIndependentAndStable) {
  const DeterministicRng root(7);
  DeterministicRng f1 = root.Fork("alpha");
  DeterministicRng f2 = root.Fork("alpha");
  DeterministicRng g = root.Fork("beta");
  const auto x = f1.Next();
  EXPECT_EQ(x, f2.Next());
  EXPECT_NE(x, g.Next());
}

TEST(DeterministicRngTest, BelowStaysInRange) {
  DeterministicRng rng(1);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull}) {
    for (int i = 0; i < 500; ++i) EXPECT_LT(rng.Below(bound), bound);
  }
}

TEST(DeterministicRngTest, ShuffleIsPermutation) {
  DeterministicRng rng(5);
  std::vector<int> items(50);
  std::iota(items.begin(), items.end(), 0);
  auto shuffled = items;
  rng.Shuffle(shuffled);
  EXPECT_NE(shuffled, items);
  std::sort(shuffled.begin(), shuffled.end());
  EXPECT_EQ(shuffled, items);
}

TEST(DeterministicRngTest, SampleIndicesDistinct) {
  DeterministicRng rng(9);
  const auto sample = rng.SampleIndices(100, 30);
  ASSERT_EQ(sample.size(), 30u);
  std::set<std::size_t> unique(sample.begin(), sample.end());
  EXPECT_EQ(unique.size(), 30u);
  for (auto index : sample) EXPECT_LT(index, 100u);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(200);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelForTest, RethrowsFirstFailure) {
  EXPECT_THROW(ParallelFor(10, 3,
                           [](std::size_t i) {
                             if (i == 4) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

}  // namespace
}  // namespace negkit
