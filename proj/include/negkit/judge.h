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

#ifndef NEGKIT_JUDGE_H_
#define NEGKIT_JUDGE_H_

// Validity judging: training-set construction for a judge model, pluggable
// judge backends, and scoring of verdicts against a gold benchmark.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "negkit/corpus_model.h"
#include "negkit/llm_client.h"

namespace negkit {

struct JudgeVerdict {
  TripleId triple_id;
  ValidityLabel label = ValidityLabel::kValid;
  std::string raw_output;
  std::string backend_id;
};

Json VerdictToJson(const JudgeVerdict& verdict);
JudgeVerdict VerdictFromJson(const Json& row);

// Finds the earliest of the words valid / invalid / ambiguous (case-insensitive,
// brackets and punctuation ignored). Whole-word matching keeps "invalid" from
// being read as "valid". Throws Error(kUnparseableVerdict) carrying `raw`.
ValidityLabel ParseVerdict(std::string_view raw);

class JudgeBackend {
 public:
  virtual ~JudgeBackend() = default;
  virtual JudgeVerdict Label(const Triple& triple) = 0;
  virtual std::string id() const = 0;
};

// Deterministic offline judge. Labels are a pure function of the triple:
//   ORIG      hash(id) -> Valid 70% / Invalid 10% / Ambiguous 20%
//   NEG_THEN  parent Valid -> Invalid; parent Invalid -> Valid 80%, else
//             Invalid; parent Ambiguous -> Ambiguous
//   NEG_IF    parent Ambiguous -> Ambiguous; else keep 45% / flip 45% /
//             Ambiguous 10%
//   NEG_BOTH  parent Ambiguous -> Ambiguous; else keep 50% / flip 20% /
//             Ambiguous 30%
// where "parent" is the ORIG rule applied to parent_id. A gold table, when
// given, takes precedence.
class MockOracleJudge : public JudgeBackend {
 public:
  MockOracleJudge() = default;
  explicit MockOracleJudge(std::unordered_map<TripleId, ValidityLabel> gold)
      : gold_(std::move(gold)) {}

  JudgeVerdict Label(const Triple& triple) override;
  std::string id() const override { return "mock-oracle"; }

  static ValidityLabel OriginalLabel(const TripleId& id);

 private:
  std::unordered_map<TripleId, ValidityLabel> gold_;
};

// Sends the verbalized triple through a judge prompt ({statement}).
class RemoteJudge : public JudgeBackend {
 public:
  RemoteJudge(LlmClient& client, PromptAsset prompt, RequestOptions options);

  JudgeVerdict Label(const Triple& triple) override;
  std::string id() const override { return options_.model_name; }

 private:
  LlmClient& client_;
  PromptAsset prompt_;
  RequestOptions options_;
};

inline JudgeVerdict JudgeLabel(const Triple& triple, JudgeBackend& backend) {
  return backend.Label(triple);
}

struct JudgeTrainingSpec {
  bool use_atomic = true;
  bool use_anion = true;
  std::size_t per_relation_per_label = 200;
  std::uint64_t seed = 0;

  std::size_t total() const { return per_relation_per_label * 9 * 3; }
};

// Train-split originals the builders draw from.
struct SourceCorpora {
  std::vector<Triple> atomic;
  std::vector<Triple> anion;
};

// Valid triples sampled per relation: half of per_relation_per_label from each
// source when both are selected, all of it from the one source otherwise.
// Throws kShortfall naming the relation and the deficit.
std::vector<LabeledTriple> BuildValidSet(const SourceCorpora& corpora,
                                         const JudgeTrainingSpec& spec);

// Recombines an if-event from one triple with the relation and then-event of
// another, rejecting any combination already present in the corpora.
std::vector<LabeledTriple> BuildAmbiguousSet(const SourceCorpora& corpora,
                                             const JudgeTrainingSpec& spec);

struct InvalidGenerationOptions {
  PromptAsset prompt;  // placeholders {event} and {relation}
  RequestOptions request;
};

struct InvalidGenerationStats {
  std::size_t requests = 0;
  std::size_t rejected = 0;  // empty or duplicate generations, re-drawn
};

// Asks the generator for a then-event that conflicts with each sampled
// if-event. The resulting triples are sourced GENERATED and labeled Invalid.
std::vector<LabeledTriple> BuildInvalidSet(
    const SourceCorpora& corpora, const JudgeTrainingSpec& spec,
    LlmClient& client, const InvalidGenerationOptions& options,
    InvalidGenerationStats* stats = nullptr);

struct LabelMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;    // gold count
  std::size_t predicted = 0;  // predicted count
};

struct JudgeReport {
  std::size_t n = 0;
  double accuracy = 0;
  std::map<ValidityLabel, LabelMetrics> per_label;
  // Macro average over labels that occur in gold or predictions.
  LabelMetrics macro;
  std::map<Relation, double> per_relation_f1;
  std::map<Relation, double> per_relation_accuracy;
  // confusion[gold][predicted], indexed in kAllLabels order.
  std::array<std::array<std::size_t, 3>, 3> confusion{};

  Json ToJson() const;
  std::string ToTable() const;
};

// Throws kEmptyInput for no verdicts, kUnknownInstance for a verdict whose id
// is not in gold, kDuplicatePrediction for repeated ids.
JudgeReport EvaluateJudge(std::span<const JudgeVerdict> verdicts,
                          std::span<const LabeledTriple> gold);

// Per-label and macro metrics over paired label vectors.
struct ClassificationMetrics {
  std::map<ValidityLabel, LabelMetrics> per_label;
  LabelMetrics macro;
  double accuracy = 0;
};
ClassificationMetrics ComputeMetrics(std::span<const ValidityLabel> gold,
                                     std::span<const ValidityLabel> predicted);

}  // namespace negkit

#endif  // NEGKIT_JUDGE_H_
