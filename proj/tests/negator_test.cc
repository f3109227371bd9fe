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


#include "negkit/negator.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "negkit/error.h"
#include "negkit/llm_client.h"
#include "test_support.h"

namespace negkit {
namespace {

using testing::Anion;
using testing::Atomic;
using testing::CodeOf;

EventText Aff(const std::string& text) {
  return EventText::Make(text, Polarity::kAffirmative);
}

std::size_t CountToken(const std::vector<std::string>& tokens,
                       const std::string& token) {
  return static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), token));
}

TEST(NegateHeadTest, DoSupportThirdSingular) {
  const NegationResult r = NegateHead(Aff("the person takes a picture"));
  EXPECT_EQ(r.event.text, "the person does not take a picture");
  EXPECT_TRUE(r.event.negated());
  EXPECT_EQ(r.trace.rule_applied, NegationRule::kDoSupport);
  EXPECT_EQ(r.trace.result_tokens[r.trace.cue_position], "not");
}

TEST(NegateHeadTest, AuxInsert) {
  const NegationResult r = NegateHead(Aff("PersonX is hungry"));
  EXPECT_EQ(r.event.text, "PersonX is not hungry");
  EXPECT_EQ(r.trace.rule_applied, NegationRule::kAuxInsert);
  EXPECT_EQ(r.trace.cue_position, 2u);
}

TEST(NegateHeadTest, DoSupportPastWithAdverb) {
  const NegationResult r =
      NegateHead(Aff("PersonX unsuccessfully applied for a position in Physics"));
  EXPECT_EQ(r.event.text,
            "PersonX did not unsuccessfully apply for a position in Physics");
}

TEST(NegateHeadTest, ModalsAndPerfect) {
  EXPECT_EQ(NegateHead(Aff("PersonX can swim")).event.text,
            "PersonX can not swim");
  EXPECT_EQ(NegateHead(Aff("PersonX has eaten lunch")).event.text,
            "PersonX has not eaten lunch");
  EXPECT_EQ(NegateHead(Aff("PersonX has a dog")).event.text,
            "PersonX does not have a dog");
  EXPECT_EQ(NegateHead(Aff("PersonX pays PersonY a compliment")).event.text,
            "PersonX does not pay PersonY a compliment");
  EXPECT_EQ(NegateHead(Aff("PersonX tries to fly")).event.text,
            "PersonX does not try to fly");
}

TEST(NegateHeadTest, Errors) {
  EXPECT_EQ(CodeOf([] { NegateHead(Aff("PersonX")); }),
            ErrorCode::kUnnegatableEvent);
  EXPECT_EQ(CodeOf([] {
              NegateHead(EventText{"PersonX does not run", Polarity::kNegated});
            }),
            ErrorCode::kAlreadyNegated);
  EXPECT_EQ(CodeOf([] { NegateHead(Aff("PersonX does not run")); }),
            ErrorCode::kAlreadyNegated);
}

TEST(NegateHeadTest, RuleInvariantsOnToyHeads) {
  const auto toy =
      LoadAtomic(testing::DataDir() / "toy_atomic.csv", Split::kTrain).triples;
  std::size_t checked = 0;
  for (const auto& triple : toy) {
    NegationResult r;
    try {
      r = NegateHead(triple.head);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    const auto& before = r.trace.original_tokens;
    const auto& after = r.trace.result_tokens;
    EXPECT_EQ(CountToken(after, "not"), CountToken(before, "not") + 1)
        << triple.head.text;
    if (r.trace.rule_applied == NegationRule::kDoSupport) {
      EXPECT_EQ(after.size(), before.size() + 2) << triple.head.text;
      std::size_t support = 0;
      for (const char* aux : {"do", "does", "did"}) {
        support += CountToken(after, aux) - CountToken(before, aux);
      }
      EXPECT_EQ(support, 1u) << triple.head.text;
      // Exactly one token differs once the two inserted tokens are removed.
      std::vector<std::string> stripped = after;
      stripped.erase(stripped.begin() + r.trace.cue_position - 1,
                     stripped.begin() + r.trace.cue_position + 1);
      ASSERT_EQ(stripped.size(), before.size());
      std::size_t changed = 0;
      for (std::size_t i = 0; i < before.size(); ++i) changed += stripped[i] != before[i];
      EXPECT_LE(changed, 1u) << triple.head.text;
    } else {
      EXPECT_EQ(after.size(), before.size() + 1);
    }
    // Never negates twice silently.
    EXPECT_EQ(CodeOf([&] { NegateHead(r.event); }), ErrorCode::kAlreadyNegated);
  }
  EXPECT_GT(checked, 0u);
}

TEST(NegateTailTest, CuePrefix) {
  EXPECT_EQ(NegateTail(Aff("look at the picture")).event.text,
            "not look at the picture");
  EXPECT_EQ(NegateTail(Aff("excited")).event.text, "not excited");
  EXPECT_EQ(CodeOf([] { NegateTail(Aff("not happy")); }),
            ErrorCode::kAlreadyNegated);
}

TEST(NegateTailTest, LengthMonotoneAndPreservesTokens) {
  for (const char* text : {"to eat food", "weak", "stomach growls loudly"}) {
    const NegationResult r = NegateTail(Aff(text));
    EXPECT_EQ(r.trace.result_tokens.size(), r.trace.original_tokens.size() + 1);
    EXPECT_EQ(r.trace.rule_applied, NegationRule::kCuePrefix);
    EXPECT_TRUE(std::equal(r.trace.original_tokens.begin(),
                           r.trace.original_tokens.end(),
                           r.trace.result_tokens.begin() + 1));
    EXPECT_EQ(CodeOf([&] { NegateTail(r.event); }), ErrorCode::kAlreadyNegated);
  }
}

TEST(VerbAnalysisTest, Inflections) {
  EXPECT_EQ(AnalyzeVerb("takes").form, VerbForm::kThirdSingular);
  EXPECT_EQ(AnalyzeVerb("takes").lemma, "take");
  EXPECT_EQ(AnalyzeVerb("tries").lemma, "try");
  EXPECT_EQ(AnalyzeVerb("went").form, VerbForm::kPast);
  EXPECT_EQ(AnalyzeVerb("went").lemma, "go");
  EXPECT_EQ(AnalyzeVerb("applied").lemma, "apply");
  EXPECT_EQ(LemmatizeToken("Picture"), "picture");
}

TEST(GenerateVariantsTest, AtomicYieldsThree) {
  const Triple t = Atomic("PersonX takes a picture", Relation::kXWant,
                          "to look at the picture");
  const auto variants = GenerateVariants(t);
  ASSERT_EQ(variants.size(), 3u);
  EXPECT_EQ(variants[0].variant, Variant::kNegIf);
  EXPECT_EQ(variants[1].variant, Variant::kNegThen);
  EXPECT_EQ(variants[2].variant, Variant::kNegBoth);
  for (const auto& v : variants) {
    EXPECT_EQ(v.parent_id, t.id);
    EXPECT_EQ(v.relation, t.relation);
    EXPECT_EQ(v.source, t.source);
  }
  // The untouched slot is byte-identical to the parent.
  EXPECT_EQ(variants[0].tail, t.tail);
  EXPECT_TRUE(variants[0].head.negated());
  EXPECT_EQ(variants[1].head, t.head);
  EXPECT_TRUE(variants[1].tail.negated());
  EXPECT_EQ(variants[2].head.text, "PersonX does not take a picture");
  EXPECT_EQ(variants[2].tail.text, "not to look at the picture");
}

TEST(GenerateVariantsTest, AnionYieldsOne) {
  const Triple t = Anion("PersonX does not pay PersonY a compliment",
                         Relation::kOReact, "upset");
  const auto variants = GenerateVariants(t);
  ASSERT_EQ(variants.size(), 1u);
  EXPECT_EQ(variants[0].variant, Variant::kNegBoth);
  EXPECT_EQ(variants[0].head, t.head);
  EXPECT_EQ(variants[0].tail.text, "not upset");
}

TEST(GenerateVariantsTest, RejectsNonOriginal) {
  const Triple t = Atomic("PersonX is hungry", Relation::kXWant, "to eat");
  const Triple v = GenerateVariants(t)[0];
  EXPECT_EQ(CodeOf([&] { GenerateVariants(v); }), ErrorCode::kNotAnOriginal);
}

TEST(ContentOverlapTest, Fractions) {
  EXPECT_DOUBLE_EQ(ContentTokenOverlap("takes a picture", "does not take a picture"),
                   1.0);
  EXPECT_DOUBLE_EQ(ContentTokenOverlap("takes a picture", "sleeps"), 0.0);
  EXPECT_TRUE(ContainsNegationCue("does not take"));
  EXPECT_FALSE(ContainsNegationCue("nothing here"));
}

class GenerativeNegatorTest : public ::testing::Test {
 protected:
  PromptAsset exemplars_ = ParsePromptAsset(
      "negation_exemplars", ReadFile(testing::PromptDir() / "negation_exemplars.txt"));
  ClientOptions options_ = [] {
    ClientOptions o;
    o.initial_backoff = std::chrono::milliseconds(0);
    return o;
  }();
};

TEST_F(GenerativeNegatorTest, MockEqualToRuleEngineIsAccepted) {
  MockChatBackend backend(MockChatBackend::Canned("does not take a picture"));
  LlmClient client(backend, options_);
  GenerativeNegator negator(client, exemplars_, {});
  const auto out = negator.Negate(Aff("takes a picture"), EventSide::kHead);
  EXPECT_EQ(out.event.text, "does not take a picture");
  EXPECT_FALSE(out.fell_back);
  EXPECT_EQ(negator.fallback_count(), 0u);
}

TEST_F(GenerativeNegatorTest, MissingCueFallsBack) {
  MockChatBackend backend(MockChatBackend::Canned("PersonX takes a photo"));
  LlmClient client(backend, options_);
  GenerativeNegator negator(client, exemplars_, {});
  const auto out = negator.Negate(Aff("PersonX takes a picture"), EventSide::kHead);
  EXPECT_TRUE(out.fell_back);
  EXPECT_EQ(out.event.text, "PersonX does not take a picture");
  EXPECT_EQ(negator.fallback_count(), 1u);
}

TEST_F(GenerativeNegatorTest, RejectedWithoutFallback) {
  MockChatBackend backend(MockChatBackend::Canned("not a thing"));
  LlmClient client(backend, options_);
  GenerativeNegatorOptions options;
  options.fallback_to_rules = false;
  GenerativeNegator negator(client, exemplars_, options);
  EXPECT_EQ(CodeOf([&] {
              negator.Negate(Aff("PersonX takes a picture"), EventSide::kHead);
            }),
            ErrorCode::kRewriteRejected);
}

TEST_F(GenerativeNegatorTest, TimeoutsBecomeBackendUnavailable) {
  MockChatBackend backend([](const ChatRequest&) -> ChatResponse {
    throw TransientBackendError("timeout");
  });
  LlmClient client(backend, options_, [](std::chrono::milliseconds) {});
  GenerativeNegator negator(client, exemplars_, {});
  EXPECT_EQ(CodeOf([&] { negator.Negate(Aff("PersonX runs"), EventSide::kHead); }),
            ErrorCode::kBackendUnavailable);
  EXPECT_EQ(backend.calls(), 1u + static_cast<std::size_t>(options_.max_retries));
}

}  // namespace
}  // namespace negkit
