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

#ifndef NEGKIT_CORPUS_MODEL_H_
#define NEGKIT_CORPUS_MODEL_H_

// Data model for if-then commonsense triples and their ingestion from ATOMIC
// and ANION release files into the canonical JSONL interchange format.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negkit/util.h"

namespace negkit {

enum class Relation {
  kOEffect,
  kOReact,
  kOWant,
  kXAttr,
  kXEffect,
  kXIntent,
  kXNeed,
  kXReact,
  kXWant,
};

inline constexpr std::array<Relation, 9> kAllRelations = {
    Relation::kOEffect, Relation::kOReact,  Relation::kOWant,
    Relation::kXAttr,   Relation::kXEffect, Relation::kXIntent,
    Relation::kXNeed,   Relation::kXReact,  Relation::kXWant,
};

// "oEffect", "xWant", ...
std::string_view RelationCode(Relation relation);
std::optional<Relation> ParseRelation(std::string_view code);

// Verbalization fragment, e.g. "PersonX wants" or "{object} want". The
// o-relations carry an "{object}" slot filled from the if-event.
std::string_view RelationTemplate(Relation relation);
bool RelationTakesObject(Relation relation);

enum class Polarity { kAffirmative, kNegated };

struct EventText {
  std::string text;
  Polarity polarity = Polarity::kAffirmative;

  // Trims `text`; throws Error(kMalformedInput) if nothing is left.
  static EventText Make(std::string_view text, Polarity polarity);

  bool negated() const { return polarity == Polarity::kNegated; }
  // True when the event uses the underspecified "___" placeholder.
  bool contains_blank() const;

  bool operator==(const EventText&) const = default;
};

enum class Source { kAtomic, kAnion, kGenerated };
enum class Variant { kOrig, kNegIf, kNegThen, kNegBoth };
enum class Split { kTrain, kTest };

std::string_view SourceName(Source source);
std::string_view VariantName(Variant variant);
std::string_view SplitName(Split split);
std::optional<Source> ParseSource(std::string_view name);
std::optional<Variant> ParseVariant(std::string_view name);
std::optional<Split> ParseSplit(std::string_view name);

using TripleId = std::string;

struct Triple {
  TripleId id;
  Source source = Source::kAtomic;
  EventText head;
  Relation relation = Relation::kXWant;
  EventText tail;
  Variant variant = Variant::kOrig;
  std::optional<TripleId> parent_id;
  Split split = Split::kTrain;

  bool operator==(const Triple&) const = default;
};

// Content hash over (source, split, relation, head, tail, variant): 16 hex
// characters of SHA-256.
TripleId MakeTripleId(Source source, Split split, Relation relation,
                      std::string_view head, std::string_view tail,
                      Variant variant);

// Builds a triple and assigns its content-hash id.
Triple MakeTriple(Source source, Split split, EventText head,
                  Relation relation, EventText tail,
                  Variant variant = Variant::kOrig,
                  std::optional<TripleId> parent_id = std::nullopt);

enum class ValidityLabel { kValid, kInvalid, kAmbiguous };

inline constexpr std::array<ValidityLabel, 3> kAllLabels = {
    ValidityLabel::kValid, ValidityLabel::kInvalid, ValidityLabel::kAmbiguous};

std::string_view LabelName(ValidityLabel label);
// Accepts exactly "Valid", "Invalid" or "Ambiguous", ignoring case.
std::optional<ValidityLabel> ParseLabel(std::string_view name);

struct LabelSource {
  enum class Kind { kJudge, kAnnotator, kSynthetic, kRandom, kGold };
  Kind kind = Kind::kSynthetic;
  // Model id for kJudge, annotator id for kAnnotator; empty otherwise.
  std::string detail;

  static LabelSource Judge(std::string model_id) {
    return {Kind::kJudge, std::move(model_id)};
  }
  static LabelSource Annotator(std::string id) {
    return {Kind::kAnnotator, std::move(id)};
  }
  static LabelSource Synthetic() { return {Kind::kSynthetic, {}}; }
  static LabelSource Random() { return {Kind::kRandom, {}}; }
  static LabelSource Gold() { return {Kind::kGold, {}}; }

  // "judge:<model>", "annotator:<id>", "synthetic", "random", "gold".
  std::string ToString() const;
  static LabelSource Parse(std::string_view text);

  bool operator==(const LabelSource&) const = default;
};

struct LabeledTriple {
  Triple triple;
  ValidityLabel label = ValidityLabel::kValid;
  LabelSource label_source;

  bool operator==(const LabeledTriple&) const = default;
};

// Canonical JSON. Key order: id, source, split, variant, parent_id, relation,
// head, tail, head_negated, tail_negated (+ label, label_source).
Json TripleToJson(const Triple& triple);
Triple TripleFromJson(const Json& row);
Json LabeledTripleToJson(const LabeledTriple& labeled);
LabeledTriple LabeledTripleFromJson(const Json& row);

std::string TriplesToJsonl(std::span<const Triple> triples);
std::string LabeledToJsonl(std::span<const LabeledTriple> labeled);
void WriteTriples(const std::filesystem::path& path,
                  std::span<const Triple> triples);
void WriteLabeled(const std::filesystem::path& path,
                  std::span<const LabeledTriple> labeled);
std::vector<Triple> ReadTriples(const std::filesystem::path& path);
std::vector<LabeledTriple> ReadLabeled(const std::filesystem::path& path);

struct LoadReport {
  std::size_t rows = 0;             // records read from the file
  std::size_t raw_triples = 0;      // before deduplication
  std::size_t deduped_triples = 0;  // returned
  std::size_t skipped_other_split = 0;
  std::size_t skipped_none_tails = 0;       // ATOMIC "none" placeholders
  std::size_t skipped_other_negation = 0;   // ANION non-logical splits
};

struct LoadResult {
  std::vector<Triple> triples;
  LoadReport report;
};

// Reads the ATOMIC release layout (event column, one list-valued column per
// relation, optional prefix/split columns; comma-separated, or tab-separated
// for .tsv) or canonical JSONL. Tails in list cells are exploded, "none"
// placeholders skipped, and duplicates collapsed in first-seen order.
LoadResult LoadAtomic(const std::filesystem::path& path, Split split);

// Reads ANION logical-negation records: JSONL or delimited rows with head,
// relation, tail (event is accepted for head) and an optional negation_type.
// Records whose negation_type is not logical are skipped and counted. The
// ATOMIC wide layout and canonical JSONL are also accepted.
LoadResult LoadAnion(const std::filesystem::path& path, Split split);

struct FilterResult {
  std::vector<Triple> kept;
  std::size_t dropped = 0;
};

FilterResult FilterUnderspecified(std::span<const Triple> triples);

}  // namespace negkit

#endif  // NEGKIT_CORPUS_MODEL_H_
