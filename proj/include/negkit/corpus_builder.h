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

#ifndef NEGKIT_CORPUS_BUILDER_H_
#define NEGKIT_CORPUS_BUILDER_H_

// Labels generated corpora, reports their statistics, selects contrastive
// training groups, and assembles baseline, ablation and instruction-format
// training files.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "negkit/corpus_model.h"
#include "negkit/judge.h"

namespace negkit {

struct LabelingOptions {
  int attempts = 3;
  // LabelingAborted is thrown when more triples than this end up quarantined.
  std::size_t quarantine_threshold = std::numeric_limits<std::size_t>::max();
  std::size_t concurrency = 1;
};

struct QuarantinedTriple {
  Triple triple;
  std::string error;
};

struct LabelingResult {
  std::vector<LabeledTriple> labeled;
  std::vector<QuarantinedTriple> quarantined;
};

// Every triple ends up either labeled or quarantined, in input order.
LabelingResult LabelCorpus(std::span<const Triple> triples,
                           JudgeBackend& backend,
                           const LabelingOptions& options = {});

std::string QuarantineToJsonl(std::span<const QuarantinedTriple> quarantined);

// Label counts per variant: columns are variants, rows are labels.
struct CorpusStats {
  std::array<std::array<std::size_t, 3>, 4> counts{};  // [variant][label]

  std::size_t ColumnTotal(Variant variant) const;
  std::size_t RowTotal(ValidityLabel label) const;
  std::size_t Total() const;
  std::size_t Count(Variant variant, ValidityLabel label) const;
  // Share of the column, 0.0 for an empty column.
  double Percent(Variant variant, ValidityLabel label) const;
  double RowPercent(ValidityLabel label) const;

  std::string ToTsv() const;
  Json ToJson() const;
};

CorpusStats ComputeCorpusStats(std::span<const LabeledTriple> labeled);

struct VariantGroup {
  LabeledTriple orig;
  std::optional<LabeledTriple> neg_if;
  std::optional<LabeledTriple> neg_then;
  std::optional<LabeledTriple> neg_both;
};

// Groups labeled triples by lineage, in order of first original. Variants
// whose original is absent are left out.
std::vector<VariantGroup> GroupVariants(std::span<const LabeledTriple> labeled);

// True for the four (orig, neg_if, neg_then) label vectors that form a
// contrastive group: (V,I,V), (V,V,I), (I,V,I), (I,I,V).
bool IsContrastivePattern(ValidityLabel orig, ValidityLabel neg_if,
                          ValidityLabel neg_then);

// Keeps groups matching a contrastive pattern with neg_both removed. Throws
// kIncompleteGroup when neg_if or neg_then is missing.
std::vector<VariantGroup> SelectContrastiveAtomic(
    std::span<const VariantGroup> groups);

using TriplePair = std::pair<LabeledTriple, LabeledTriple>;

// (orig, neg_both) pairs from ANION groups that have a neg_both member.
std::vector<TriplePair> AnionPairs(std::span<const VariantGroup> groups);

// Pairs whose labels differ and are both Valid or Invalid.
std::vector<TriplePair> SelectContrastiveAnion(std::span<const TriplePair> pairs);

// A training corpus keeps its groups so that subsampling stays group-atomic.
struct CorpusGroup {
  Source source = Source::kAtomic;
  std::vector<LabeledTriple> members;
};

struct TrainingCorpus {
  std::vector<CorpusGroup> groups;

  std::size_t TripleCount() const;
  std::size_t TripleCount(Source source) const;
  std::size_t GroupCount(Source source) const;
  std::vector<LabeledTriple> Flatten() const;
  void Append(const TrainingCorpus& other);
};

TrainingCorpus CorpusFromAtomicGroups(std::span<const VariantGroup> groups);
TrainingCorpus CorpusFromAnionPairs(std::span<const TriplePair> pairs);

struct BaselineTargets {
  std::size_t atomic_valid = 0;
  std::size_t anion_valid = 0;
  std::size_t invalid = 0;

  std::size_t Total() const { return atomic_valid + anion_valid + invalid; }
};

// Mirrors the label/source mix of a contrastive corpus.
BaselineTargets BaselineTargetsFor(const TrainingCorpus& contrastive);

// Valid instances sampled from un-negated originals, Invalid instances from
// the synthetic pool; throws kShortfall when a pool is too small.
TrainingCorpus BuildBaseline(const SourceCorpora& originals,
                             std::span<const LabeledTriple> invalid_pool,
                             const BaselineTargets& targets,
                             std::uint64_t seed);

// Keeps originals plus the requested variant's members of every group.
TrainingCorpus SubsetByVariant(const TrainingCorpus& corpus, Variant variant);

// Seeded, group-atomic sample of about n triples per source (the group count
// whose triple total lands closest to n). Throws kShortfall if a source holds
// fewer than n triples.
TrainingCorpus SampleSubset(const TrainingCorpus& corpus,
                            std::size_t n_per_source, std::uint64_t seed);

// Replaces every label with a uniform draw from {Valid, Invalid}.
TrainingCorpus RandomizeLabels(const TrainingCorpus& corpus,
                               std::uint64_t seed);

struct TrainingRecord {
  TripleId triple_id;
  std::string instruction;
  std::string input;
  std::string output;
};

inline constexpr std::string_view kDefaultInstruction =
    "Determine whether the following if-then statement is Valid or Invalid "
    "according to commonsense knowledge.";

// Sorted by triple id; throws kExportRejected naming an Ambiguous record.
std::vector<TrainingRecord> BuildTrainingRecords(const TrainingCorpus& corpus,
                                                 std::string_view instruction);
std::string TrainingRecordsToJsonl(std::span<const TrainingRecord> records);
std::size_t ExportInstructionJsonl(const TrainingCorpus& corpus,
                                   std::string_view instruction,
                                   const std::filesystem::path& path);

}  // namespace negkit

#endif  // NEGKIT_CORPUS_BUILDER_H_
