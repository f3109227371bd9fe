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

#include <gtest/gtest.h>

#include <set>

#include "test_support.h"

namespace negkit {
namespace {

using testing::CodeOf;

TEST(ConfigTest, DefaultsCoverEveryKey) {
  const Config config;
  std::set<std::string> keys;
  for (const auto& spec : ConfigKeys()) {
    EXPECT_TRUE(keys.insert(spec.key).second) << spec.key;
    EXPECT_EQ(config.GetString(spec.key), spec.default_value);
  }
  EXPECT_EQ(config.values().size(), keys.size());
  EXPECT_EQ(config.GetString("backend.mode"), "mock");
  EXPECT_DOUBLE_EQ(config.GetDouble("backend.temperature"), 0.0);
}

TEST(ConfigTest, ParsesSectionsAndComments) {
  const Config config = Config::Parse(
      "# comment\n"
      "[backend]\n"
      "mode = http\n"
      "concurrency = 8\n"
      "; another comment\n"
      "[judge]\n"
      "sources = atomic\n"
      "[negate]\n"
      "fallback_to_rules = no\n",
      "/base");
  EXPECT_EQ(config.GetString("backend.mode"), "http");
  EXPECT_EQ(config.GetInt("backend.concurrency"), 8);
  EXPECT_EQ(config.GetList("judge.sources"), std::vector<std::string>{"atomic"});
  EXPECT_FALSE(config.GetBool("negate.fallback_to_rules"));
  EXPECT_EQ(config.GetList("build.subset_sizes"),
            (std::vector<std::string>{"1000", "10000"}));
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_EQ(CodeOf([] { Config::Parse("[backend]\ncolour = red\n", "."); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf([] { Config::Parse("[backend\nmode = mock\n", "."); }),
            ErrorCode::kConfigError);
  Config config;
  EXPECT_EQ(CodeOf([&] { config.ApplyOverride("nokey"); }), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf([&] { config.ApplyOverride("seeds.colour=1"); }),
            ErrorCode::kConfigError);
  config.Set("seeds.baseline", "-3");
  EXPECT_EQ(CodeOf([&] { config.GetSeed("seeds.baseline"); }), ErrorCode::kConfigError);
  config.Set("backend.concurrency", "four");
  EXPECT_EQ(CodeOf([&] { config.GetInt("backend.concurrency"); }),
            ErrorCode::kConfigError);
  config.Set("negate.fallback_to_rules", "perhaps");
  EXPECT_EQ(CodeOf([&] { config.GetBool("negate.fallback_to_rules"); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kConfigError), 1);
}

TEST(ConfigTest, OverridesAndHash) {
  Config a;
  Config b;
  EXPECT_EQ(a.Hash(), b.Hash());
  b.ApplyOverride("seeds.baseline = 99");
  EXPECT_EQ(b.GetSeed("seeds.baseline"), 99u);
  EXPECT_NE(a.Hash(), b.Hash());
  b.ApplyOverride("seeds.baseline=12");
  EXPECT_EQ(a.Hash(), b.Hash());
  EXPECT_EQ(a.Hash().size(), 64u);
}

TEST(ConfigTest, PathsResolveAgainstConfigDirectory) {
  const Config config = Config::Parse("[input]\natomic = data/a.csv\nanion = /abs/b.jsonl\n",
                                      "/etc/negkit");
  EXPECT_EQ(*config.GetPath("input.atomic"), "/etc/negkit/data/a.csv");
  EXPECT_EQ(*config.GetPath("input.anion"), "/abs/b.jsonl");
  EXPECT_FALSE(config.GetPath("input.test_atomic").has_value());
  EXPECT_EQ(CodeOf([&] { config.ValidateInputs(); }), ErrorCode::kConfigError);
}

TEST(ConfigTest, ToyConfigLoads) {
  const Config config = Config::Load(testing::DataDir() / "toy.ini");
  config.ValidateInputs();
  EXPECT_EQ(config.GetInt("judge.per_relation_per_label"), 4);
  EXPECT_EQ(*config.GetPath("input.atomic"), testing::DataDir() / "toy_atomic.csv");
  EXPECT_EQ(CodeOf([] { Config::Load("/nonexistent/negkit.ini"); }),
            ErrorCode::kConfigError);
}

}  // namespace
}  // namespace negkit
