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


#include "negkit/corpus_model.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "negkit/error.h"
#include "test_support.h"

namespace negkit {
namespace {

using testing::Anion;
using testing::Atomic;
using testing::CodeOf;
using testing::TempDir;

TEST(RelationTest, NineCodesRoundTrip) {
  std::set<std::string_view> codes;
  for (Relation relation : kAllRelations) {
    codes.insert(RelationCode(relation));
    EXPECT_EQ(ParseRelation(RelationCode(relation)), relation);
  }
  EXPECT_EQ(codes.size(), 9u);
  EXPECT_FALSE(ParseRelation("isA").has_value());
  EXPECT_EQ(RelationTemplate(Relation::kXWant), "PersonX wants");
}

TEST(EventTextTest, TrimsAndRejectsEmpty) {
  EXPECT_EQ(EventText::Make("  PersonX runs ", Polarity::kAffirmative).text,
            "PersonX runs");
  EXPECT_EQ(CodeOf([] { EventText::Make("   ", Polarity::kAffirmative); }),
            ErrorCode::kMalformedInput);
  EXPECT_TRUE(EventText::Make("PersonX sees ___ in the water",
                              Polarity::kAffirmative)
                  .contains_blank());
}

TEST(TripleIdTest, ContentHashIsStableAndDiscriminating) {
  const Triple a = Atomic("PersonX is hungry", Relation::kXWant, "to eat food");
  const Triple b = Atomic("PersonX is hungry", Relation::kXWant, "to eat food");
  const Triple c = Atomic("PersonX is hungry", Relation::kXNeed, "to eat food");
  EXPECT_EQ(a.id, b.id);
  EXPECT_NE(a.id, c.id);
  EXPECT_EQ(a.id.size(), 16u);
  const Triple t = Atomic("PersonX is hungry", Relation::kXWant, "to eat food",
                          Split::kTest);
  EXPECT_NE(a.id, t.id);
}

TEST(LabelTest, ClosedSet) {
  EXPECT_EQ(ParseLabel("valid"), ValidityLabel::kValid);
  EXPECT_EQ(ParseLabel("INVALID"), ValidityLabel::kInvalid);
  EXPECT_EQ(ParseLabel("Ambiguous"), ValidityLabel::kAmbiguous);
  EXPECT_FALSE(ParseLabel("Maybe").has_value());
}

TEST(LabelSourceTest, RoundTrip) {
  for (const LabelSource& source :
       {LabelSource::Judge("m1"), LabelSource::Annotator("a1"),
        LabelSource::Synthetic(), LabelSource::Random(), LabelSource::Gold()}) {
    EXPECT_EQ(LabelSource::Parse(source.ToString()), source);
  }
  EXPECT_EQ(LabelSource::Judge("m1").ToString(), "judge:m1");
}

TEST(CanonicalJsonTest, KeyOrderIsFixed) {
  const Triple t = Atomic("PersonX is hungry", Relation::kXWant, "to eat food");
  const Json row = TripleToJson(t);
  std::vector<std::string> keys;
  for (const auto& [key, value] : row.items()) keys.push_back(key);
  const std::vector<std::string> expected = {
      "id",       "source", "split", "variant",      "parent_id",
      "relation", "head",   "tail",  "head_negated", "tail_negated"};
  EXPECT_EQ(keys, expected);
}

TEST(CanonicalJsonTest, RoundTripPreservesEveryField) {
  TempDir dir;
  std::vector<Triple> triples = {
      Atomic("PersonX takes a picture", Relation::kXWant,
             "to look at the picture"),
      Anion("PersonX does not pay PersonY a compliment", Relation::kOReact,
            "upset", Split::kTest),
  };
  triples.push_back(MakeTriple(Source::kAtomic, Split::kTrain,
                               EventText{"PersonX does not take a picture",
                                         Polarity::kNegated},
                               Relation::kXWant, triples[0].tail,
                               Variant::kNegIf, triples[0].id));
  WriteTriples(dir / "t.jsonl", triples);
  EXPECT_EQ(ReadTriples(dir / "t.jsonl"), triples);

  std::vector<LabeledTriple> labeled = {
      {triples[0], ValidityLabel::kValid, LabelSource::Judge("m")},
      {triples[2], ValidityLabel::kAmbiguous, LabelSource::Gold()}};
  WriteLabeled(dir / "l.jsonl", labeled);
  EXPECT_EQ(ReadLabeled(dir / "l.jsonl"), labeled);
}

TEST(LoadAtomicTest, ExplodesListCellsAndSkipsNone) {
  TempDir dir;
  WriteFile(dir / "a.csv",
            "event,xWant,xNeed,oReact,split\n"
            "PersonX is hungry,\"[\"\"to eat food\"\", \"\"to cook\"\"]\","
            "[],\"[\"\"none\"\"]\",trn\n"
            "PersonX is hungry,\"[\"\"to eat food\"\"]\",[],[],trn\n"
            "PersonX runs,\"[\"\"to rest\"\"]\",[],[],tst\n");
  const LoadResult result = LoadAtomic(dir / "a.csv", Split::kTrain);
  ASSERT_EQ(result.triples.size(), 2u);
  EXPECT_EQ(result.triples[0].head.text, "PersonX is hungry");
  EXPECT_EQ(result.triples[0].tail.text, "to eat food");
  EXPECT_EQ(result.triples[0].relation, Relation::kXWant);
  EXPECT_EQ(result.triples[0].source, Source::kAtomic);
  EXPECT_EQ(result.triples[0].variant, Variant::kOrig);
  EXPECT_EQ(result.triples[1].tail.text, "to cook");
  EXPECT_EQ(result.report.raw_triples, 3u);
  EXPECT_EQ(result.report.deduped_triples, 2u);
  EXPECT_EQ(result.report.skipped_none_tails, 1u);
  EXPECT_EQ(result.report.skipped_other_split, 1u);
}

TEST(LoadAtomicTest, UnknownRelationColumnIsNamed) {
  TempDir dir;
  WriteFile(dir / "a.csv", "event,isA\nPersonX runs,[]\n");
  try {
    LoadAtomic(dir / "a.csv", Split::kTrain);
    FAIL() << "expected an error";
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::kUnknownRelation);
    EXPECT_NE(std::string(error.what()).find("isA"), std::string::npos);
  }
}

TEST(LoadAtomicTest, MalformedRowNamesRowNumber) {
  TempDir dir;
  WriteFile(dir / "a.csv", "event,xWant\nPersonX runs,[\"broken\n");
  try {
    LoadAtomic(dir / "a.csv", Split::kTrain);
    FAIL() << "expected an error";
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::kMalformedInput);
    EXPECT_NE(std::string(error.what()).find("2"), std::string::npos);
  }
}

TEST(LoadAtomicTest, ToyCorpusHasFiftyTriples) {
  const LoadResult result =
      LoadAtomic(testing::DataDir() / "toy_atomic.csv", Split::kTrain);
  EXPECT_EQ(result.triples.size(), 50u);
  // Ingestion is deterministic.
  EXPECT_EQ(LoadAtomic(testing::DataDir() / "toy_atomic.csv", Split::kTrain)
                .triples,
            result.triples);
}

TEST(LoadAnionTest, LogicalRecordsOnly) {
  TempDir dir;
  WriteFile(dir / "n.jsonl",
            "{\"head\": \"PersonX does not pay PersonY a compliment\", "
            "\"relation\": \"oReact\", \"tail\": \"upset\", "
            "\"negation_type\": \"logical\"}\n"
            "{\"head\": \"PersonX rarely eats\", \"relation\": \"xWant\", "
            "\"tail\": \"to eat\", \"negation_type\": \"semi_logical\"}\n");
  const LoadResult result = LoadAnion(dir / "n.jsonl", Split::kTrain);
  ASSERT_EQ(result.triples.size(), 1u);
  EXPECT_TRUE(result.triples[0].head.negated());
  EXPECT_FALSE(result.triples[0].tail.negated());
  EXPECT_EQ(result.triples[0].source, Source::kAnion);
  EXPECT_EQ(result.report.skipped_other_negation, 1u);
}

TEST(LoadAnionTest, EmptyFileAndMissingField) {
  TempDir dir;
  WriteFile(dir / "empty.jsonl", "");
  EXPECT_TRUE(LoadAnion(dir / "empty.jsonl", Split::kTrain).triples.empty());
  WriteFile(dir / "bad.jsonl", "{\"head\": \"PersonX does not run\"}\n");
  EXPECT_EQ(CodeOf([&] { LoadAnion(dir / "bad.jsonl", Split::kTrain); }),
            ErrorCode::kMalformedInput);
}

TEST(FilterUnderspecifiedTest, DropsBlanks) {
  std::vector<Triple> triples = {
      Atomic("PersonX sees ___ in the water", Relation::kXWant, "to swim"),
      Atomic("PersonX sees a fish", Relation::kXWant, "to catch ___"),
      Atomic("PersonX sees a fish", Relation::kXWant, "to catch it"),
  };
  const FilterResult result = FilterUnderspecified(triples);
  ASSERT_EQ(result.kept.size(), 1u);
  EXPECT_EQ(result.dropped, 2u);
  for (const auto& t : result.kept) {
    EXPECT_EQ(t.head.text.find("___"), std::string::npos);
    EXPECT_EQ(t.tail.text.find("___"), std::string::npos);
  }
  EXPECT_EQ(FilterUnderspecified({}).dropped, 0u);
}

}  // namespace
}  // namespace negkit
