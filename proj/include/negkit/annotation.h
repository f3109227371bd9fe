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

#ifndef NEGKIT_ANNOTATION_H_
#define NEGKIT_ANNOTATION_H_

// Human-evaluation benchmark sampling, multi-annotator labeling sessions,
// inter-annotator agreement and gold adjudication.

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negkit/corpus_model.h"

namespace negkit {

// Samples `per_relation` negatable ATOMIC originals per relation from the
// test split and appends each original's three variants. Output order is
// relation, then sample order, each original followed by NEG_IF, NEG_THEN
// and NEG_BOTH. Throws kShortfall naming the first short relation.
std::vector<Triple> SampleBenchmark(std::span<const Triple> test_corpus,
                                    std::size_t per_relation,
                                    std::uint64_t seed);

// Milliseconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

// "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string FormatTimestamp(Timestamp ms);
// Throws kValidationError for anything FormatTimestamp would not emit.
Timestamp ParseTimestamp(std::string_view text);
Timestamp NowTimestamp();

struct AnnotationRecord {
  std::string annotator_id;
  TripleId triple_id;
  ValidityLabel label = ValidityLabel::kValid;
  Timestamp timestamp = 0;

  bool operator==(const AnnotationRecord&) const = default;
};

Json RecordToJson(const AnnotationRecord& record);
// Throws kValidationError on a missing field or a label outside the set.
AnnotationRecord RecordFromJson(const Json& row);

using Confusion3 = std::array<std::array<std::size_t, 3>, 3>;  // [a][b]

struct AgreementReport {
  double kappa = 0.0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  Confusion3 confusion{};
  std::size_t n_items = 0;

  Json ToJson() const;
};

// Cohen's kappa from a confusion matrix; 1.0 when chance agreement is 1.
// Throws kEmptyOverlap on an all-zero matrix.
AgreementReport AgreementFromConfusion(const Confusion3& confusion);

using LabelMap = std::map<TripleId, ValidityLabel>;

// Agreement over the ids present in both maps; kEmptyOverlap if none.
AgreementReport ComputeAgreement(const LabelMap& a, const LabelMap& b);

enum class AdjudicationPolicy { kAgreeOnly, kThirdPass };

std::string_view PolicyName(AdjudicationPolicy policy);
std::optional<AdjudicationPolicy> ParsePolicy(std::string_view name);

struct AdjudicationResult {
  std::vector<LabeledTriple> gold;     // benchmark order
  std::vector<TripleId> quarantined;   // AGREE_ONLY disagreements
  std::vector<TripleId> pending;       // THIRD_PASS disputes awaiting a label

  Json ToJson() const;
};

struct AdjudicationInput {
  const std::vector<Triple>* benchmark = nullptr;
  const LabelMap* first = nullptr;
  const LabelMap* second = nullptr;
  const LabelMap* adjudicator = nullptr;  // THIRD_PASS only
  std::string adjudicator_id;
  // Strict adjudication requires both annotators to have labeled everything.
  bool strict = true;
};

// Agreed items become gold with label_source=gold. Disagreements are
// quarantined (AGREE_ONLY) or resolved by the adjudicator's label
// (THIRD_PASS). Throws kIncompleteAnnotation under strict mode.
AdjudicationResult Adjudicate(const AdjudicationInput& input,
                              AdjudicationPolicy policy);

struct SessionOptions {
  std::filesystem::path data_dir;
  // The two primary annotators whose disputes feed the adjudicator's queue.
  std::string first_annotator = "a1";
  std::string second_annotator = "a2";
  std::string adjudicator = "adjudicator";
  AdjudicationPolicy policy = AdjudicationPolicy::kAgreeOnly;
  bool strict = true;
  // When set, task order is a seeded permutation instead of ascending id.
  std::optional<std::uint64_t> order_seed;
};

struct Task {
  TripleId triple_id;
  std::string statement;
  std::size_t position = 0;  // 1-based index in the annotator's queue
  std::size_t total = 0;
};

struct ProgressReport {
  std::size_t total = 0;
  std::map<std::string, std::size_t> labeled;

  Json ToJson() const;
};

// A labeling session over a fixed benchmark. Submissions serialize through a
// single writer appending to labels.jsonl; readers work on an immutable
// snapshot. Reopening the data directory replays snapshot.jsonl and then the
// log, resolving each (annotator, triple) by last-write-wins on timestamp
// with arrival order breaking ties.
class AnnotationSession {
 public:
  // Creates the data directory, writes benchmark.jsonl and starts empty.
  static std::unique_ptr<AnnotationSession> Create(
      std::vector<Triple> benchmark, SessionOptions options);
  // Reopens an existing data directory.
  static std::unique_ptr<AnnotationSession> Open(SessionOptions options);

  // nullopt means Done. Throws kSessionError after Close().
  std::optional<Task> NextTask(const std::string& annotator_id) const;
  // Returns true when the record replaced an earlier label.
  bool Submit(const AnnotationRecord& record);
  ProgressReport Progress() const;
  AgreementReport Agreement(const std::string& a, const std::string& b) const;
  AdjudicationResult Adjudicate() const;
  LabelMap LabelsOf(const std::string& annotator_id) const;
  // Every resolved record, sorted by (annotator, triple id).
  std::vector<AnnotationRecord> Records() const;

  // Rewrites snapshot.jsonl from the resolved state and truncates the log.
  void Compact();
  void Close();

  const std::vector<Triple>& benchmark() const { return benchmark_; }
  const SessionOptions& options() const { return options_; }

 private:
  struct State {
    std::map<std::string, std::map<TripleId, AnnotationRecord>> labels;
  };

  AnnotationSession(std::vector<Triple> benchmark, SessionOptions options);
  std::shared_ptr<const State> Snapshot() const;
  void CheckOpen() const;
  static bool Apply(State& state, const AnnotationRecord& record);
  std::vector<std::size_t> QueueFor(const std::string& annotator_id,
                                    const State& state) const;

  std::vector<Triple> benchmark_;
  std::vector<std::size_t> order_;  // benchmark indices in task order
  std::map<TripleId, std::size_t> index_;
  SessionOptions options_;

  mutable std::mutex mutex_;  // guards state_ swaps and log appends
  std::shared_ptr<const State> state_;
  std::atomic<bool> closed_{false};
};

}  // namespace negkit

#endif  // NEGKIT_ANNOTATION_H_
