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

#ifndef NEGKIT_EVAL_HARNESS_H_
#define NEGKIT_EVAL_HARNESS_H_

// Scoring of model predictions on negation benchmarks: classification
// accuracy, CondaQA group consistency, NevIR pairwise accuracy, McNemar's
// paired test and negation-cue breakdowns. All scorers are pure and
// independent of instance order.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "negkit/llm_client.h"
#include "negkit/util.h"

namespace negkit {

struct PredictionRecord {
  std::string instance_id;
  std::string prediction;
  std::optional<std::string> raw_output;
};

// Prediction rows {instance_id, prediction, raw_output?}. Throws
// kDuplicatePrediction on a repeated id and kMalformedInput on bad rows.
std::vector<PredictionRecord> PredictionsFromJson(std::span<const Json> rows);
std::vector<PredictionRecord> ReadPredictions(const std::filesystem::path& path);
Json PredictionToJson(const PredictionRecord& record);

// ---- Gold instances -------------------------------------------------------

struct ClassificationInstance {
  std::string instance_id;
  std::string gold;
  std::optional<std::string> cue;
  Json fields;  // every input column, used for prompt rendering
};

enum class EditType { kOriginal, kParaphrase, kScope, kAffirmative };
std::string_view EditTypeName(EditType edit);
std::optional<EditType> ParseEditType(std::string_view name);

struct CondaQAInstance {
  std::string instance_id;
  std::string question_id;
  std::string bundle_id;
  EditType edit_type = EditType::kOriginal;
  std::string gold_answer;
  std::optional<std::string> cue;
  Json fields;
};

// Gold alignment is fixed: query_1 -> Doc1 and query_2 -> Doc2.
struct NevIRInstance {
  std::string pair_id;
  std::string query_1;
  std::string query_2;
  std::string doc_1;
  std::string doc_2;
};

// Row readers throw kMalformedInput naming the 1-based row and missing field.
std::vector<ClassificationInstance> ClassificationGoldFromJson(
    std::span<const Json> rows);
// Also checks that every bundle holds exactly one ORIGINAL.
std::vector<CondaQAInstance> CondaQAGoldFromJson(std::span<const Json> rows);
std::vector<NevIRInstance> NevIRGoldFromJson(std::span<const Json> rows);

// Prediction ids for the two queries of a NevIR pair.
std::string NevIRQueryId(const std::string& pair_id, int query);

// ---- Normalization --------------------------------------------------------

// Case-folds, strips brackets, quotes and trailing punctuation, and maps
// internal spaces and hyphens to '_' ("[Not Entailment]" -> "not_entailment").
std::string NormalizeLabel(std::string_view text);

// Case-folds, drops punctuation and brackets, collapses whitespace, and
// canonicalizes the don't-know family ("dont know", "do not know",
// "don't know", "unknown", "idk") to "don't know".
std::string NormalizeAnswer(std::string_view text);

// 1 for Doc1, 2 for Doc2, 0 when the text names neither or both.
int ParseDocChoice(std::string_view text);

// ---- Negation cues --------------------------------------------------------

enum class CueCategory { kVerbal, kAffixal, kImplicit, kDiminisher, kOther };
std::string_view CueCategoryName(CueCategory category);

// Closed-lexicon lookup; affixes are tried only after the word lists.
CueCategory CategorizeNegationCue(std::string_view cue);

// ---- Reports --------------------------------------------------------------

struct McNemarResult {
  std::size_t b = 0;  // A correct, B wrong
  std::size_t c = 0;  // A wrong, B correct
  double statistic = 0.0;  // continuity-corrected chi-square statistic
  double p_value = 1.0;
  bool exact = true;          // which branch produced p_value
  double exact_p_value = 1.0;
  double chi_square_p_value = 1.0;

  Json ToJson() const;
};

// Below 25 discordant pairs the exact two-sided binomial p is used; at or
// above it the continuity-corrected statistic (|b-c|-1)^2/(b+c) with a
// one-degree-of-freedom chi-square tail. Both p-values are always filled in.
// b + c == 0 gives statistic 0 and p 1.
McNemarResult McNemarFromCounts(std::size_t b, std::size_t c);

// Per-unit correctness of two systems; throws kCoverageError unless both
// cover the same ids.
McNemarResult McNemar(const std::map<std::string, bool>& correct_a,
                      const std::map<std::string, bool>& correct_b);

// 2 * P(X >= k) for X ~ Binomial(n, 1/2), capped at 1.
double ExactBinomialTwoSided(std::size_t n, std::size_t k);
// Upper tail of the chi-square distribution with one degree of freedom.
double ChiSquare1Tail(double statistic);

struct Metric {
  std::string name;
  double value = 0.0;  // percent in [0, 100]
  std::size_t numerator = 0;
  std::size_t denominator = 0;
};

struct Breakdown {
  std::string name;
  std::vector<Metric> rows;
};

struct EvalReport {
  std::string task;
  std::size_t n = 0;
  std::vector<Metric> headline;
  std::vector<Breakdown> breakdowns;
  std::map<std::string, std::size_t> counts;  // invalid_output, missing, ...
  // Per scoring unit (instance, or pair for NevIR), for McNemar.
  std::map<std::string, bool> correct;

  // Percent change of each headline metric against a baseline report.
  std::map<std::string, std::optional<double>> delta_percent;
  std::optional<McNemarResult> significance;

  // Throws kValidationError when the metric is absent.
  const Metric& Get(std::string_view name) const;
  bool Has(std::string_view name) const;

  Json ToJson() const;
  std::string ToTable() const;
};

// Fills delta_percent (null where the baseline metric is 0) and the McNemar
// comparison of `report` (A) against `baseline` (B).
void CompareWithBaseline(EvalReport& report, const EvalReport& baseline);

// ---- Scorers --------------------------------------------------------------

// Accuracy after NormalizeLabel. Predictions outside `label_set` are wrong
// and tallied as invalid_output; absent predictions are wrong and tallied
// as missing. Throws kUnknownInstance for predictions without gold and
// kEmptyInput for empty gold.
EvalReport ScoreClassification(std::span<const PredictionRecord> predictions,
                               std::span<const ClassificationInstance> gold,
                               std::span<const std::string> label_set,
                               std::string task = "classification");

// Accuracy over instances plus Consistency-All (groups holding all four edit
// types) and Consistency-Paraphrase/Scope/Affirmative (groups holding the
// ORIGINAL and that edit). Groups without the required edits are left out
// of that denominator; a metric with an empty denominator is omitted.
EvalReport ScoreCondaQA(std::span<const PredictionRecord> predictions,
                        std::span<const CondaQAInstance> gold);

// Pairwise accuracy (both queries right) plus per-query accuracies.
// Prediction ids are NevIRQueryId(pair, 1|2).
EvalReport ScoreNevIR(std::span<const PredictionRecord> predictions,
                      std::span<const NevIRInstance> gold);

// ---- Inference ------------------------------------------------------------

struct InferenceItem {
  std::string instance_id;
  std::map<std::string, std::string> bindings;
};

// Prompt inputs per task: NLI {premise, hypothesis}, CondaQA
// {passage, question}, CommonsenseQA {question, choices}, NevIR
// {query, doc1, doc2} with one item per query.
std::vector<InferenceItem> ClassificationItems(
    std::span<const ClassificationInstance> gold);
std::vector<InferenceItem> CondaQAItems(std::span<const CondaQAInstance> gold);
std::vector<InferenceItem> NevIRItems(std::span<const NevIRInstance> gold);

using PredictionParser = std::function<std::string(std::string_view raw)>;

// Bracketed label if one is in `label_set`, else the whole normalized text
// if it is, else "".
PredictionParser ClassificationParser(std::vector<std::string> label_set);
// Bracketed answer if present, else the first line, normalized.
PredictionParser CondaQAParser();
// "Doc1", "Doc2" or "".
PredictionParser NevIRParser();

struct InferenceOptions {
  RequestOptions request;
  // Bindings shared by every item, e.g. {exemplars}.
  std::map<std::string, std::string> shared_bindings;
  std::size_t batch_size = 4;
};

struct InferenceStats {
  std::size_t skipped = 0;    // already present in the output
  std::size_t completed = 0;  // newly written
};

// Appends one prediction row per item not yet in `output`, in item order.
// Rows are written after each batch, so a BackendUnavailable error leaves
// every finished row in place for the next run to resume from.
InferenceStats RunInference(std::span<const InferenceItem> items,
                            LlmClient& client, const PromptAsset& prompt,
                            const PredictionParser& parser,
                            const std::filesystem::path& output,
                            const InferenceOptions& options);

}  // namespace negkit

#endif  // NEGKIT_EVAL_HARNESS_H_
