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


#include "negkit/eval_harness.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "test_support.h"

namespace negkit {
namespace {

using testing::CodeOf;
using testing::TempDir;

PredictionRecord Pred(std::string id, std::string prediction) {
  return PredictionRecord{std::move(id), std::move(prediction), std::nullopt};
}

ClassificationInstance Cls(std::string id, std::string gold) {
  return ClassificationInstance{std::move(id), std::move(gold), std::nullopt, Json::object()};
}

CondaQAInstance Conda(std::string id, std::string question, EditType edit,
                      std::string answer) {
  CondaQAInstance out;
  out.instance_id = std::move(id);
  out.question_id = std::move(question);
  out.bundle_id = "b";
  out.edit_type = edit;
  out.gold_answer = std::move(answer);
  // Distinct passages keep every rendered prompt, and so every cache key, unique.
  out.fields = Json{{"passage", "passage " + out.instance_id}, {"question", "q"}};
  return out;
}

constexpr std::array<EditType, 4> kEdits = {EditType::kOriginal, EditType::kParaphrase,
                                            EditType::kScope, EditType::kAffirmative};

// Groups g0..g{n-1}, each holding all four edits with answer "yes".
std::vector<CondaQAInstance> CondaGroups(int n) {
  std::vector<CondaQAInstance> out;
  for (int g = 0; g < n; ++g) {
    for (EditType edit : kEdits) {
      out.push_back(Conda("g" + std::to_string(g) + "-" + std::string(EditTypeName(edit)),
                          "g" + std::to_string(g), edit, "yes"));
    }
  }
  return out;
}

std::vector<PredictionRecord> Answering(const std::vector<CondaQAInstance>& gold,
                                        const std::set<std::string>& wrong = {}) {
  std::vector<PredictionRecord> out;
  for (const auto& instance : gold) {
    out.push_back(Pred(instance.instance_id,
                       wrong.count(instance.instance_id) ? "no" : instance.gold_answer));
  }
  return out;
}

const std::vector<std::string> kNli = {"entailment", "not_entailment"};

TEST(ClassificationTest, AccuracyOverFourInstances) {
  std::vector<ClassificationInstance> gold = {
      Cls("1", "entailment"), Cls("2", "not_entailment"), Cls("3", "entailment"),
      Cls("4", "not_entailment")};
  std::vector<PredictionRecord> predictions = {
      Pred("1", "entailment"), Pred("2", "not_entailment"), Pred("3", "entailment"),
      Pred("4", "entailment")};
  const EvalReport report = ScoreClassification(predictions, gold, kNli);
  EXPECT_DOUBLE_EQ(report.Get("accuracy").value, 75.0);
  EXPECT_EQ(report.Get("accuracy").numerator, 3u);
  EXPECT_EQ(report.counts.at("invalid_output"), 0u);
  ASSERT_EQ(report.breakdowns[0].name, "gold_label");
}

TEST(ClassificationTest, BracketedAndInvalidOutputs) {
  std::vector<ClassificationInstance> gold = {Cls("1", "entailment"),
                                              Cls("2", "entailment"),
                                              Cls("3", "entailment")};
  std::vector<PredictionRecord> predictions = {Pred("1", "[Entailment]"),
                                               Pred("2", "maybe")};
  const EvalReport report = ScoreClassification(predictions, gold, kNli);
  EXPECT_TRUE(report.correct.at("1"));
  EXPECT_FALSE(report.correct.at("2"));
  EXPECT_EQ(report.counts.at("invalid_output"), 1u);
  EXPECT_EQ(report.counts.at("missing"), 1u);
  EXPECT_NEAR(report.Get("accuracy").value, 100.0 / 3, 1e-9);
}

TEST(ClassificationTest, RejectsBadPredictionSets) {
  std::vector<ClassificationInstance> gold = {Cls("1", "entailment")};
  std::vector<PredictionRecord> unknown = {Pred("9", "entailment")};
  EXPECT_EQ(CodeOf([&] { ScoreClassification(unknown, gold, kNli); }),
            ErrorCode::kUnknownInstance);
  std::vector<PredictionRecord> twice = {Pred("1", "entailment"), Pred("1", "entailment")};
  EXPECT_EQ(CodeOf([&] { ScoreClassification(twice, gold, kNli); }),
            ErrorCode::kDuplicatePrediction);
  EXPECT_EQ(CodeOf([&] { ScoreClassification({}, std::span<const ClassificationInstance>(), kNli); }),
            ErrorCode::kEmptyInput);
  std::vector<Json> rows = {Json{{"instance_id", "1"}, {"prediction", "a"}},
                            Json{{"instance_id", "1"}, {"prediction", "b"}}};
  EXPECT_EQ(CodeOf([&] { PredictionsFromJson(rows); }), ErrorCode::kDuplicatePrediction);
}

TEST(ClassificationTest, MatchesOracleOnRandomFixtures) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> space = {"a", "b", "c"};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + int(rng() % 40);
    std::vector<ClassificationInstance> gold;
    std::vector<PredictionRecord> predictions;
    std::vector<int> g, p;
    for (int i = 0; i < n; ++i) {
      g.push_back(int(rng() % 3));
      p.push_back(int(rng() % 3));
      gold.push_back(Cls(std::to_string(i), space[g.back()]));
      predictions.push_back(Pred(std::to_string(i), space[p.back()]));
    }
    std::shuffle(predictions.begin(), predictions.end(), rng);
    const auto want = oracle::Classify(g, p, {0, 1, 2});
    const EvalReport report = ScoreClassification(predictions, gold, space);
    EXPECT_TRUE(oracle::RelClose(report.Get("accuracy").value, 100 * want.accuracy))
        << trial;
  }
}

TEST(NormalizationTest, LabelsAndAnswers) {
  EXPECT_EQ(NormalizeLabel("[Not Entailment]"), "not_entailment");
  EXPECT_EQ(NormalizeLabel("  Entailment. "), "entailment");
  EXPECT_EQ(NormalizeLabel("not-entailment"), "not_entailment");
  EXPECT_EQ(NormalizeAnswer("[DON'T KNOW]"), "don't know");
  EXPECT_EQ(NormalizeAnswer("dont know"), "don't know");
  EXPECT_EQ(NormalizeAnswer("Unknown"), "don't know");
  EXPECT_EQ(NormalizeAnswer("  Yes! "), "yes");
  EXPECT_EQ(ParseDocChoice("Doc1"), 1);
  EXPECT_EQ(ParseDocChoice("[Doc2]"), 2);
  EXPECT_EQ(ParseDocChoice("Doc1 or Doc2"), 0);
  EXPECT_EQ(ParseDocChoice("neither"), 0);
}

TEST(CondaQATest, AllCorrectScoresFullMarks) {
  const auto gold = CondaGroups(3);
  const EvalReport report = ScoreCondaQA(Answering(gold), gold);
  for (const char* name : {"accuracy", "consistency_all", "consistency_paraphrase",
                           "consistency_scope", "consistency_affirmative"}) {
    EXPECT_DOUBLE_EQ(report.Get(name).value, 100.0) << name;
  }
  EXPECT_EQ(report.counts.at("groups_complete"), 3u);
}

TEST(CondaQATest, ScopeErrorBreaksOnlyScopeConsistency) {
  const auto gold = CondaGroups(1);
  const EvalReport report = ScoreCondaQA(Answering(gold, {"g0-SCOPE"}), gold);
  EXPECT_DOUBLE_EQ(report.Get("consistency_all").value, 0.0);
  EXPECT_DOUBLE_EQ(report.Get("consistency_scope").value, 0.0);
  EXPECT_DOUBLE_EQ(report.Get("consistency_paraphrase").value, 100.0);
  EXPECT_DOUBLE_EQ(report.Get("consistency_affirmative").value, 100.0);
  EXPECT_DOUBLE_EQ(report.Get("accuracy").value, 75.0);
}

TEST(CondaQATest, ErrorsInOneOriginalBreakThatGroupOnly) {
  // Two groups of four; both wrong answers sit in the first group's ORIGINAL
  // and paraphrase, so six of eight are right.
  const auto gold = CondaGroups(2);
  const EvalReport report =
      ScoreCondaQA(Answering(gold, {"g0-ORIGINAL", "g0-PARAPHRASE"}), gold);
  EXPECT_DOUBLE_EQ(report.Get("accuracy").value, 75.0);
  EXPECT_DOUBLE_EQ(report.Get("consistency_all").value, 50.0);
  EXPECT_DOUBLE_EQ(report.Get("consistency_paraphrase").value, 50.0);
  EXPECT_DOUBLE_EQ(report.Get("consistency_scope").value, 50.0);
  EXPECT_DOUBLE_EQ(report.Get("consistency_affirmative").value, 50.0);
}

TEST(CondaQATest, IncompleteGroupsLeaveDenominators) {
  auto gold = CondaGroups(2);
  gold.pop_back();  // g1 loses AFFIRMATIVE
  const EvalReport report = ScoreCondaQA(Answering(gold), gold);
  EXPECT_EQ(report.Get("consistency_all").denominator, 1u);
  EXPECT_EQ(report.Get("consistency_affirmative").denominator, 1u);
  EXPECT_EQ(report.Get("consistency_scope").denominator, 2u);
  std::vector<CondaQAInstance> originals = {gold[0]};
  const EvalReport lone = ScoreCondaQA(Answering(originals), originals);
  EXPECT_FALSE(lone.Has("consistency_all"));
  EXPECT_FALSE(lone.Has("consistency_scope"));
}

TEST(CondaQATest, EmptyAndMissingPredictionsAreWrong) {
  const auto gold = CondaGroups(1);
  std::vector<PredictionRecord> predictions = {Pred("g0-ORIGINAL", "  "),
                                               Pred("g0-SCOPE", "Yes.")};
  const EvalReport report = ScoreCondaQA(predictions, gold);
  EXPECT_EQ(report.counts.at("empty_prediction"), 1u);
  EXPECT_EQ(report.counts.at("missing"), 2u);
  EXPECT_DOUBLE_EQ(report.Get("accuracy").value, 25.0);
}

TEST(CondaQATest, MatchesOracleOnRandomFixtures) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int groups = 1 + int(rng() % 8);
    auto gold = CondaGroups(groups);
    std::set<std::string> wrong;
    std::vector<oracle::GroupItem> items;
    for (const auto& instance : gold) {
      const bool ok = rng() % 3 != 0;
      if (!ok) wrong.insert(instance.instance_id);
      items.push_back({instance.question_id, int(instance.edit_type), ok});
    }
    auto predictions = Answering(gold, wrong);
    std::shuffle(predictions.begin(), predictions.end(), rng);
    std::shuffle(gold.begin(), gold.end(), rng);
    const EvalReport report = ScoreCondaQA(predictions, gold);
    const auto want = oracle::GroupConsistency(items);
    EXPECT_TRUE(oracle::RelClose(report.Get("consistency_all").value, 100 * want.all));
    const char* names[4] = {"", "consistency_paraphrase", "consistency_scope",
                            "consistency_affirmative"};
    for (int e = 1; e < 4; ++e) {
      EXPECT_TRUE(oracle::RelClose(report.Get(names[e]).value, 100 * want.per_edit[e]))
          << trial << " " << names[e];
      // Consistency-All never exceeds any pairwise consistency.
      EXPECT_LE(report.Get("consistency_all").value, report.Get(names[e]).value);
    }
    EXPECT_LE(report.Get("consistency_all").value, report.Get("accuracy").value + 1e-9);
  }
}

TEST(CondaQATest, GoldReaderRequiresOneOriginalPerBundle) {
  std::vector<Json> rows = {
      Json{{"instance_id", "1"}, {"question_id", "q"}, {"bundle_id", "b"},
           {"edit_type", "PARAPHRASE"}, {"answer", "yes"}}};
  EXPECT_EQ(CodeOf([&] { CondaQAGoldFromJson(rows); }), ErrorCode::kMalformedInput);
}

NevIRInstance Pair(std::string id) {
  return NevIRInstance{std::move(id), "q1", "q2", "d1", "d2"};
}

TEST(NevIRTest, PairwiseAccuracy) {
  std::vector<NevIRInstance> gold = {Pair("p1"), Pair("p2")};
  std::vector<PredictionRecord> half = {
      Pred(NevIRQueryId("p1", 1), "Doc1"), Pred(NevIRQueryId("p1", 2), "Doc2"),
      Pred(NevIRQueryId("p2", 1), "Doc1"), Pred(NevIRQueryId("p2", 2), "Doc1")};
  const EvalReport report = ScoreNevIR(half, gold);
  EXPECT_DOUBLE_EQ(report.Get("pairwise_accuracy").value, 50.0);
  EXPECT_DOUBLE_EQ(report.Get("query1_accuracy").value, 100.0);
  EXPECT_DOUBLE_EQ(report.Get("query2_accuracy").value, 50.0);

  std::vector<PredictionRecord> inverted = {
      Pred(NevIRQueryId("p1", 1), "Doc2"), Pred(NevIRQueryId("p1", 2), "Doc1"),
      Pred(NevIRQueryId("p2", 1), "Doc2"), Pred(NevIRQueryId("p2", 2), "Doc1")};
  EXPECT_DOUBLE_EQ(ScoreNevIR(inverted, gold).Get("pairwise_accuracy").value, 0.0);

  std::vector<PredictionRecord> partial = {Pred(NevIRQueryId("p1", 1), "Doc1")};
  const EvalReport missing = ScoreNevIR(partial, gold);
  EXPECT_EQ(missing.counts.at("missing"), 3u);
  EXPECT_DOUBLE_EQ(missing.Get("pairwise_accuracy").value, 0.0);
}

TEST(NevIRTest, MatchesOracleOnRandomFixtures) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + int(rng() % 30);
    std::vector<NevIRInstance> gold;
    std::vector<PredictionRecord> predictions;
    std::vector<bool> q1, q2;
    for (int i = 0; i < n; ++i) {
      const std::string id = "p" + std::to_string(i);
      gold.push_back(Pair(id));
      q1.push_back(rng() % 2);
      q2.push_back(rng() % 2);
      predictions.push_back(Pred(NevIRQueryId(id, 1), q1.back() ? "Doc1" : "Doc2"));
      predictions.push_back(Pred(NevIRQueryId(id, 2), q2.back() ? "Doc2" : "Doc1"));
    }
    std::shuffle(predictions.begin(), predictions.end(), rng);
    const auto want = oracle::PairwiseAccuracy(q1, q2);
    const EvalReport report = ScoreNevIR(predictions, gold);
    EXPECT_TRUE(oracle::RelClose(report.Get("pairwise_accuracy").value, 100 * want.pairwise));
    EXPECT_TRUE(oracle::RelClose(report.Get("query1_accuracy").value, 100 * want.query1));
    EXPECT_TRUE(oracle::RelClose(report.Get("query2_accuracy").value, 100 * want.query2));
    EXPECT_LE(report.Get("pairwise_accuracy").value,
              std::min(report.Get("query1_accuracy").value,
                       report.Get("query2_accuracy").value) + 1e-9);
  }
}

TEST(McNemarTest, SpecExamples) {
  const McNemarResult one_sided = McNemarFromCounts(10, 0);
  EXPECT_TRUE(one_sided.exact);
  EXPECT_NEAR(one_sided.p_value, 0.001953125, 1e-12);
  EXPECT_DOUBLE_EQ(McNemarFromCounts(5, 5).p_value, 1.0);
  EXPECT_DOUBLE_EQ(McNemarFromCounts(0, 0).p_value, 1.0);
  EXPECT_DOUBLE_EQ(McNemarFromCounts(0, 0).statistic, 0.0);
  EXPECT_EQ(McNemarFromCounts(12, 13).ToJson()["method"], "chi_square_cc");
  EXPECT_EQ(McNemarFromCounts(12, 12).ToJson()["method"], "exact_binomial");
}

TEST(McNemarTest, BranchesAgreeNearBoundary) {
  for (int b = 10; b <= 15; ++b) {
    const int c = 25 - b;
    const McNemarResult r = McNemarFromCounts(b, c);
    EXPECT_NEAR(r.exact_p_value, r.chi_square_p_value, 0.02) << b;
  }
}

TEST(McNemarTest, MatchesOracleAndIsSymmetric) {
  for (int b = 0; b <= 60; ++b) {
    for (int c = 0; c <= 60; c += 3) {
      const McNemarResult r = McNemarFromCounts(b, c);
      EXPECT_TRUE(oracle::RelClose(r.p_value, oracle::McNemarP(b, c))) << b << "," << c;
      EXPECT_TRUE(oracle::RelClose(r.exact_p_value, oracle::McNemarExact(b, c)));
      EXPECT_TRUE(oracle::RelClose(r.statistic, oracle::McNemarStatistic(b, c)));
      const McNemarResult s = McNemarFromCounts(c, b);
      EXPECT_EQ(r.p_value, s.p_value);
      EXPECT_GE(r.p_value, 0.0);
      EXPECT_LE(r.p_value, 1.0);
    }
  }
}

TEST(McNemarTest, PairedSets) {
  std::map<std::string, bool> a = {{"1", true}, {"2", false}, {"3", true}};
  EXPECT_DOUBLE_EQ(McNemar(a, a).p_value, 1.0);
  std::map<std::string, bool> b = {{"1", false}, {"2", false}, {"3", true}};
  const McNemarResult r = McNemar(a, b);
  EXPECT_EQ(r.b, 1u);
  EXPECT_EQ(r.c, 0u);
  std::map<std::string, bool> short_b = {{"1", true}};
  EXPECT_EQ(CodeOf([&] { McNemar(a, short_b); }), ErrorCode::kCoverageError);
}

TEST(CueTest, Categories) {
  EXPECT_EQ(CategorizeNegationCue("not"), CueCategory::kVerbal);
  EXPECT_EQ(CategorizeNegationCue("didn't"), CueCategory::kVerbal);
  EXPECT_EQ(CategorizeNegationCue("unmyelinated"), CueCategory::kAffixal);
  EXPECT_EQ(CategorizeNegationCue("careless"), CueCategory::kAffixal);
  EXPECT_EQ(CategorizeNegationCue("without"), CueCategory::kImplicit);
  EXPECT_EQ(CategorizeNegationCue("rarely"), CueCategory::kDiminisher);
  EXPECT_EQ(CategorizeNegationCue("xyzzy"), CueCategory::kOther);
  EXPECT_EQ(CategorizeNegationCue(""), CueCategory::kOther);
}

TEST(ReportTest, BaselineComparison) {
  std::vector<ClassificationInstance> gold = {Cls("1", "entailment"),
                                              Cls("2", "entailment")};
  std::vector<PredictionRecord> good = {Pred("1", "entailment"), Pred("2", "entailment")};
  std::vector<PredictionRecord> half = {Pred("1", "entailment"),
                                        Pred("2", "not_entailment")};
  EvalReport report = ScoreClassification(good, gold, kNli);
  const EvalReport baseline = ScoreClassification(half, gold, kNli);
  CompareWithBaseline(report, baseline);
  ASSERT_TRUE(report.delta_percent.at("accuracy").has_value());
  EXPECT_DOUBLE_EQ(*report.delta_percent.at("accuracy"), 100.0);
  ASSERT_TRUE(report.significance.has_value());
  EXPECT_EQ(report.significance->b, 1u);
  const Json json = report.ToJson();
  EXPECT_TRUE(json.contains("metrics"));
  EXPECT_FALSE(report.ToTable().empty());
  EXPECT_EQ(CodeOf([&] { report.Get("nope"); }), ErrorCode::kValidationError);
}

PromptAsset CondaPrompt() {
  return LoadPromptAsset(testing::PromptDir() / "condaqa.txt");
}

ClientOptions NoWait() {
  ClientOptions options;
  options.initial_backoff = std::chrono::milliseconds(0);
  options.max_retries = 0;
  return options;
}

TEST(InferenceTest, GoldAnsweringMockScoresFullMarks) {
  const auto gold = CondaGroups(2);
  MockChatBackend backend([](const ChatRequest&) {
    ChatResponse response;
    response.content = "[YES]";
    return response;
  });
  LlmClient client(backend, NoWait());
  TempDir dir;
  InferenceOptions options;
  options.shared_bindings["exemplars"] = "";
  const auto items = CondaQAItems(gold);
  const InferenceStats stats = RunInference(items, client, CondaPrompt(), CondaQAParser(),
                                            dir / "pred.jsonl", options);
  EXPECT_EQ(stats.completed, gold.size());
  const auto predictions = ReadPredictions(dir / "pred.jsonl");
  EXPECT_DOUBLE_EQ(ScoreCondaQA(predictions, gold).Get("accuracy").value, 100.0);
}

TEST(InferenceTest, ResumesAfterInterruption) {
  const auto gold = CondaGroups(3);  // 12 items
  const auto items = CondaQAItems(gold);
  const std::size_t k = 5;
  std::atomic<std::size_t> served{0};
  MockChatBackend flaky([&](const ChatRequest&) -> ChatResponse {
    if (served.load() >= k) throw TransientBackendError("down");
    ++served;
    ChatResponse response;
    response.content = "yes";
    return response;
  });
  TempDir dir;
  InferenceOptions options;
  options.shared_bindings["exemplars"] = "";
  options.batch_size = 1;
  ClientOptions client_options = NoWait();
  client_options.max_in_flight = 1;
  {
    LlmClient client(flaky, client_options);
    EXPECT_EQ(CodeOf([&] {
                RunInference(items, client, CondaPrompt(), CondaQAParser(),
                             dir / "pred.jsonl", options);
              }),
              ErrorCode::kBackendUnavailable);
  }
  EXPECT_EQ(ReadPredictions(dir / "pred.jsonl").size(), k);

  MockChatBackend healthy(MockChatBackend::Canned("yes"));
  LlmClient client(healthy, client_options);
  const InferenceStats stats = RunInference(items, client, CondaPrompt(), CondaQAParser(),
                                            dir / "pred.jsonl", options);
  EXPECT_EQ(stats.skipped, k);
  EXPECT_EQ(stats.completed, items.size() - k);
  EXPECT_EQ(healthy.calls(), items.size() - k);
  EXPECT_EQ(ReadPredictions(dir / "pred.jsonl").size(), items.size());
}

TEST(InferenceTest, Parsers) {
  const auto cls = ClassificationParser(kNli);
  EXPECT_EQ(cls("The answer is [Not Entailment]."), "not_entailment");
  EXPECT_EQ(cls("entailment"), "entailment");
  EXPECT_EQ(cls("no idea"), "");
  EXPECT_EQ(NevIRParser()("[Doc2]"), "Doc2");
  EXPECT_EQ(NevIRParser()("both"), "");
  EXPECT_EQ(CondaQAParser()("Yes\nbecause"), "yes");
}

}  // namespace
}  // namespace negkit
