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


#include "negkit/judge.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "negkit/error.h"
#include "negkit/negator.h"
#include "oracles.h"
#include "test_support.h"

namespace negkit {
namespace {

using testing::Atomic;
using testing::CodeOf;
using testing::Labeled;
using testing::SyntheticAnion;
using testing::SyntheticAtomic;

TEST(ParseVerdictTest, Examples) {
  EXPECT_EQ(ParseVerdict("Valid"), ValidityLabel::kValid);
  EXPECT_EQ(ParseVerdict("[INVALID]"), ValidityLabel::kInvalid);
  EXPECT_EQ(ParseVerdict("[Ambiguous]"), ValidityLabel::kAmbiguous);
  EXPECT_EQ(ParseVerdict("it is valid or invalid"), ValidityLabel::kValid);
  EXPECT_EQ(ParseVerdict("Answer: invalid, not valid."), ValidityLabel::kInvalid);
  EXPECT_EQ(CodeOf([] { ParseVerdict("perhaps"); }),
            ErrorCode::kUnparseableVerdict);
  try {
    ParseVerdict("perhaps");
  } catch (const Error& error) {
    EXPECT_NE(std::string(error.what()).find("perhaps"), std::string::npos);
  }
}

// Earliest label word wins; ties cannot happen between distinct words.
TEST(ParseVerdictTest, MatchesPositionOracle) {
  const std::vector<std::string> words = {"valid", "invalid", "ambiguous",
                                          "maybe", "the",     "[Valid]",
                                          "INVALID.", "so"};
  std::mt19937 rng(3);
  for (int round = 0; round < 300; ++round) {
    std::string text;
    int first = -1;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      const std::string& w = words[rng() % words.size()];
      text += (i ? " " : "") + w;
      std::string lw;
      for (char c : w) {
        if (std::isalpha(static_cast<unsigned char>(c))) lw.push_back(std::tolower(c));
      }
      if (first < 0) {
        if (lw == "valid") first = 0;
        if (lw == "invalid") first = 1;
        if (lw == "ambiguous") first = 2;
      }
    }
    if (first < 0) {
      EXPECT_EQ(CodeOf([&] { ParseVerdict(text); }), ErrorCode::kUnparseableVerdict);
    } else {
      EXPECT_EQ(ParseVerdict(text), kAllLabels[first]) << text;
    }
  }
}

TEST(MockOracleTest, PureAndRuleBased) {
  MockOracleJudge judge;
  const auto toy =
      LoadAtomic(testing::DataDir() / "toy_atomic.csv", Split::kTrain).triples;
  for (const auto& t : toy) {
    const ValidityLabel parent = judge.Label(t).label;
    EXPECT_EQ(judge.Label(t).label, parent);
    std::vector<Triple> variants;
    try {
      variants = GenerateVariants(t);
    } catch (const Error&) {
      continue;
    }
    const Triple& neg_then = variants[1];
    if (parent == ValidityLabel::kValid) {
      EXPECT_EQ(judge.Label(neg_then).label, ValidityLabel::kInvalid);
    }
    if (parent == ValidityLabel::kAmbiguous) {
      for (const auto& v : variants) {
        EXPECT_EQ(judge.Label(v).label, ValidityLabel::kAmbiguous);
      }
    }
  }
}

TEST(MockOracleTest, GoldTableWins) {
  const Triple t = Atomic("PersonX runs", Relation::kXWant, "to rest");
  MockOracleJudge judge({{t.id, ValidityLabel::kAmbiguous}});
  EXPECT_EQ(judge.Label(t).label, ValidityLabel::kAmbiguous);
}

TEST(RemoteJudgeTest, ParsesBracketedReply) {
  MockChatBackend backend(MockChatBackend::Canned("[Ambiguous]"));
  LlmClient client(backend, {});
  RemoteJudge judge(client, LoadPromptAsset(testing::PromptDir() / "judge.txt"),
                    {"judge-model", 0.0, 8});
  const JudgeVerdict v =
      judge.Label(Atomic("PersonX runs", Relation::kXWant, "to rest"));
  EXPECT_EQ(v.label, ValidityLabel::kAmbiguous);
  EXPECT_EQ(v.raw_output, "[Ambiguous]");
  EXPECT_EQ(v.backend_id, "judge-model");

  MockChatBackend vague(MockChatBackend::Canned("perhaps"));
  LlmClient vague_client(vague, {});
  RemoteJudge vague_judge(vague_client,
                          LoadPromptAsset(testing::PromptDir() / "judge.txt"),
                          {"judge-model", 0.0, 8});
  EXPECT_EQ(CodeOf([&] {
              vague_judge.Label(Atomic("PersonX runs", Relation::kXWant, "to rest"));
            }),
            ErrorCode::kUnparseableVerdict);
}

SourceCorpora Corpora(std::size_t atomic, std::size_t anion) {
  return SourceCorpora{SyntheticAtomic(atomic), SyntheticAnion(anion)};
}

TEST(BuildValidSetTest, BothSourcesSplitEvenly) {
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 20;
  spec.seed = 4;
  const auto valid = BuildValidSet(Corpora(30, 30), spec);
  ASSERT_EQ(valid.size(), 180u);
  std::map<std::pair<Relation, Source>, int> counts;
  for (const auto& item : valid) {
    EXPECT_EQ(item.label, ValidityLabel::kValid);
    EXPECT_EQ(item.label_source, LabelSource::Synthetic());
    ++counts[{item.triple.relation, item.triple.source}];
  }
  for (Relation r : kAllRelations) {
    EXPECT_EQ((counts[{r, Source::kAtomic}]), 10);
    EXPECT_EQ((counts[{r, Source::kAnion}]), 10);
  }
  EXPECT_EQ(BuildValidSet(Corpora(30, 30), spec), valid);
}

TEST(BuildValidSetTest, OneSourceTakesAll) {
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 20;
  spec.use_anion = false;
  const auto valid = BuildValidSet(Corpora(20, 0), spec);
  EXPECT_EQ(valid.size(), 180u);
  for (const auto& item : valid) EXPECT_EQ(item.triple.source, Source::kAtomic);
}

TEST(BuildValidSetTest, Shortfall) {
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 200;
  spec.use_anion = false;
  try {
    BuildValidSet(Corpora(50, 0), spec);
    FAIL();
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::kShortfall);
    EXPECT_NE(std::string(error.what()).find("deficit 150"), std::string::npos);
  }
}

TEST(BuildAmbiguousSetTest, RecombinationsAvoidExistingTriples) {
  const SourceCorpora corpora = Corpora(12, 12);
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 8;
  spec.seed = 2;
  const auto ambiguous = BuildAmbiguousSet(corpora, spec);
  ASSERT_EQ(ambiguous.size(), 72u);
  std::set<std::tuple<std::string, Relation, std::string>> existing;
  for (const auto* list : {&corpora.atomic, &corpora.anion}) {
    for (const auto& t : *list) existing.insert({t.head.text, t.relation, t.tail.text});
  }
  std::set<TripleId> ids;
  for (const auto& item : ambiguous) {
    EXPECT_EQ(item.label, ValidityLabel::kAmbiguous);
    EXPECT_FALSE(existing.count(
        {item.triple.head.text, item.triple.relation, item.triple.tail.text}));
    ids.insert(item.triple.id);
  }
  EXPECT_EQ(ids.size(), ambiguous.size());
  EXPECT_EQ(BuildAmbiguousSet(corpora, spec), ambiguous);
}

TEST(BuildAmbiguousSetTest, ExhaustedWhenEveryCombinationExists) {
  // One head and one tail per relation: the only recombination is the source.
  SourceCorpora corpora;
  for (Relation r : kAllRelations) {
    corpora.atomic.push_back(Atomic("PersonX runs", r, "to rest"));
  }
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 1;
  spec.use_anion = false;
  const auto code = CodeOf([&] { BuildAmbiguousSet(corpora, spec); });
  ASSERT_TRUE(code.has_value());
  EXPECT_TRUE(*code == ErrorCode::kRecombinationExhausted ||
              *code == ErrorCode::kShortfall);
}

TEST(BuildInvalidSetTest, CannedGeneration) {
  SourceCorpora corpora;
  for (Relation r : kAllRelations) {
    corpora.atomic.push_back(Atomic("PersonX is hungry", r, "to eat food"));
  }
  MockChatBackend backend(MockChatBackend::Canned("to starve forever"));
  LlmClient client(backend, {});
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 1;
  spec.use_anion = false;
  InvalidGenerationOptions options{
      LoadPromptAsset(testing::PromptDir() / "invalid_generation.txt"), {}};
  const auto invalid = BuildInvalidSet(corpora, spec, client, options);
  ASSERT_EQ(invalid.size(), 9u);
  EXPECT_EQ(invalid[0].triple.head.text, "PersonX is hungry");
  EXPECT_EQ(invalid[0].triple.tail.text, "to starve forever");
  EXPECT_EQ(invalid[0].label, ValidityLabel::kInvalid);
  EXPECT_EQ(invalid[0].label_source, LabelSource::Synthetic());
}

TEST(BuildInvalidSetTest, EmptyGenerationIsRedrawn) {
  SourceCorpora corpora{SyntheticAtomic(3), {}};
  std::atomic<int> calls{0};
  MockChatBackend backend([&](const ChatRequest& r) {
    // Every other request comes back empty.
    ChatResponse response;
    if (calls.fetch_add(1) % 2 == 0) {
      response.content = "to fly " + Sha256Hex(r.messages.back().content).substr(0, 8);
    }
    return response;
  });
  ClientOptions client_options;
  client_options.max_in_flight = 1;
  client_options.cache_enabled = false;
  LlmClient client(backend, client_options);
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 1;
  spec.use_anion = false;
  InvalidGenerationStats stats;
  const auto invalid = BuildInvalidSet(
      corpora, spec, client,
      {LoadPromptAsset(testing::PromptDir() / "invalid_generation.txt"), {}},
      &stats);
  EXPECT_EQ(invalid.size(), 9u);
  EXPECT_GT(stats.rejected, 0u);
  for (const auto& item : invalid) EXPECT_FALSE(item.triple.tail.text.empty());
}

TEST(BuildInvalidSetTest, BackendFailurePropagates) {
  SourceCorpora corpora{SyntheticAtomic(2), {}};
  MockChatBackend backend([](const ChatRequest&) -> ChatResponse {
    throw TransientBackendError("down");
  });
  ClientOptions options;
  options.max_retries = 0;
  LlmClient client(backend, options);
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 1;
  spec.use_anion = false;
  EXPECT_EQ(CodeOf([&] {
              BuildInvalidSet(corpora, spec, client,
                              {LoadPromptAsset(testing::PromptDir() /
                                               "invalid_generation.txt"),
                               {}});
            }),
            ErrorCode::kBackendUnavailable);
}

TEST(JudgeTrainingSpecTest, Total) {
  JudgeTrainingSpec spec;
  spec.per_relation_per_label = 200;
  EXPECT_EQ(spec.total(), 5400u);
}

std::vector<LabeledTriple> GoldOf(const std::vector<ValidityLabel>& labels) {
  std::vector<LabeledTriple> gold;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    gold.push_back(Labeled(Atomic("PersonX runs " + std::to_string(i),
                                  kAllRelations[i % 9], "to rest"),
                           labels[i]));
  }
  return gold;
}

std::vector<JudgeVerdict> VerdictsFor(const std::vector<LabeledTriple>& gold,
                                      const std::vector<ValidityLabel>& predicted) {
  std::vector<JudgeVerdict> verdicts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    verdicts.push_back({gold[i].triple.id, predicted[i], "", "test"});
  }
  return verdicts;
}

TEST(EvaluateJudgeTest, PerfectVerdicts) {
  using V = ValidityLabel;
  const auto gold = GoldOf({V::kValid, V::kInvalid, V::kAmbiguous, V::kValid});
  const auto report = EvaluateJudge(
      VerdictsFor(gold, {V::kValid, V::kInvalid, V::kAmbiguous, V::kValid}), gold);
  EXPECT_DOUBLE_EQ(report.accuracy, 1.0);
  for (const auto& [label, m] : report.per_label) {
    EXPECT_DOUBLE_EQ(m.precision, 1.0);
    EXPECT_DOUBLE_EQ(m.recall, 1.0);
    EXPECT_DOUBLE_EQ(m.f1, 1.0);
  }
  EXPECT_DOUBLE_EQ(report.macro.f1, 1.0);
}

TEST(EvaluateJudgeTest, ConfusionExample) {
  using V = ValidityLabel;
  const auto gold = GoldOf({V::kValid, V::kValid, V::kInvalid, V::kAmbiguous});
  const auto report = EvaluateJudge(
      VerdictsFor(gold, {V::kValid, V::kInvalid, V::kInvalid, V::kAmbiguous}), gold);
  EXPECT_DOUBLE_EQ(report.accuracy, 0.75);
  EXPECT_DOUBLE_EQ(report.per_label.at(V::kValid).precision, 1.0);
  EXPECT_DOUBLE_EQ(report.per_label.at(V::kValid).recall, 0.5);
  EXPECT_DOUBLE_EQ(report.per_label.at(V::kInvalid).precision, 0.5);
  EXPECT_DOUBLE_EQ(report.per_label.at(V::kInvalid).recall, 1.0);
  EXPECT_DOUBLE_EQ(report.per_label.at(V::kAmbiguous).precision, 1.0);
  EXPECT_DOUBLE_EQ(report.per_label.at(V::kAmbiguous).recall, 1.0);
  EXPECT_EQ(report.confusion[0][1], 1u);
  EXPECT_NE(report.ToTable().find("Overall"), std::string::npos);
}

TEST(EvaluateJudgeTest, Errors) {
  const auto gold = GoldOf({ValidityLabel::kValid});
  EXPECT_EQ(CodeOf([&] { EvaluateJudge({}, gold); }), ErrorCode::kEmptyInput);
  const std::vector<JudgeVerdict> unknown = {{"nope", ValidityLabel::kValid, "", ""}};
  EXPECT_EQ(CodeOf([&] { EvaluateJudge(unknown, gold); }),
            ErrorCode::kUnknownInstance);
}

TEST(EvaluateJudgeTest, RandomFixturesMatchOracleAndPermutation) {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 20;
    std::vector<ValidityLabel> g, p;
    std::vector<int> gi, pi;
    for (std::size_t i = 0; i < n; ++i) {
      gi.push_back(static_cast<int>(rng() % 3));
      pi.push_back(static_cast<int>(rng() % 3));
      g.push_back(kAllLabels[gi.back()]);
      p.push_back(kAllLabels[pi.back()]);
    }
    const auto gold = GoldOf(g);
    auto verdicts = VerdictsFor(gold, p);
    const auto report = EvaluateJudge(verdicts, gold);
    const auto want = oracle::Classify(gi, pi, {0, 1, 2});
    EXPECT_TRUE(oracle::RelClose(report.accuracy, want.accuracy));
    for (int k = 0; k < 3; ++k) {
      const auto& m = report.per_label.at(kAllLabels[k]);
      EXPECT_TRUE(oracle::RelClose(m.precision, want.per_label.at(k).precision));
      EXPECT_TRUE(oracle::RelClose(m.recall, want.per_label.at(k).recall));
      EXPECT_TRUE(oracle::RelClose(m.f1, want.per_label.at(k).f1));
    }
    EXPECT_TRUE(oracle::RelClose(report.macro.f1, want.macro.f1));
    std::shuffle(verdicts.begin(), verdicts.end(), rng);
    EXPECT_EQ(EvaluateJudge(verdicts, gold).macro.f1, report.macro.f1);
  }
}

TEST(VerdictJsonTest, RoundTrip) {
  const JudgeVerdict v{"abc", ValidityLabel::kInvalid, "[Invalid]", "mock"};
  const JudgeVerdict back = VerdictFromJson(VerdictToJson(v));
  EXPECT_EQ(back.triple_id, v.triple_id);
  EXPECT_EQ(back.label, v.label);
  EXPECT_EQ(back.raw_output, v.raw_output);
  EXPECT_EQ(back.backend_id, v.backend_id);
}

}  // namespace
}  // namespace negkit
