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

#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "negkit/error.h"
#include "negkit/verbalizer.h"

namespace negkit {
namespace {

std::size_t LabelIndex(ValidityLabel label) {
  return static_cast<std::size_t>(label);
}

std::uint64_t HashPercent(const std::string& id, std::string_view salt) {
  std::string digest = Sha256Hex(std::string(salt) + ":" + id);
  return std::stoull(digest.substr(0, 12), nullptr, 16) % 100;
}

ValidityLabel Flip(ValidityLabel label) {
  switch (label) {
    case ValidityLabel::kValid: return ValidityLabel::kInvalid;
    case ValidityLabel::kInvalid: return ValidityLabel::kValid;
    case ValidityLabel::kAmbiguous: return ValidityLabel::kAmbiguous;
  }
  return label;
}

std::string TripleKey(const std::string& head, Relation relation,
                      const std::string& tail) {
  return head + '\x1f' + std::string(RelationCode(relation)) + '\x1f' + tail;
}

std::vector<const Triple*> WithRelation(const std::vector<Triple>& triples,
                                        Relation relation) {
  std::vector<const Triple*> out;
  for (const auto& triple : triples) {
    if (triple.relation == relation && triple.variant == Variant::kOrig) {
      out.push_back(&triple);
    }
  }
  return out;
}

// (source, triples, quota) per selected source.
struct SourceQuota {
  Source source;
  const std::vector<Triple>* triples;
  std::size_t quota;
};

std::vector<SourceQuota> Quotas(const SourceCorpora& corpora,
                                const JudgeTrainingSpec& spec) {
  std::vector<SourceQuota> quotas;
  const std::size_t n = spec.per_relation_per_label;
  if (spec.use_atomic && spec.use_anion) {
    quotas.push_back({Source::kAtomic, &corpora.atomic, n - n / 2});
    quotas.push_back({Source::kAnion, &corpora.anion, n / 2});
  } else if (spec.use_atomic) {
    quotas.push_back({Source::kAtomic, &corpora.atomic, n});
  } else if (spec.use_anion) {
    quotas.push_back({Source::kAnion, &corpora.anion, n});
  } else {
    throw Error(ErrorCode::kConfigError, "judge training needs a source");
  }
  return quotas;
}

[[noreturn]] void ThrowShortfall(Source source, Relation relation,
                                 std::size_t have, std::size_t want) {
  throw Error(ErrorCode::kShortfall,
              std::string(SourceName(source)) + " relation " +
                  std::string(RelationCode(relation)) + ": need " +
                  std::to_string(want) + ", have " + std::to_string(have) +
                  " (deficit " + std::to_string(want - have) + ")");
}

std::string StreamName(std::string_view kind, Source source,
                       Relation relation) {
  return std::string(kind) + "/" + std::string(SourceName(source)) + "/" +
         std::string(RelationCode(relation));
}

std::string CleanGeneratedTail(std::string_view raw) {
  std::string text = Trim(raw);
  auto newline = text.find('\n');
  if (newline != std::string::npos) text = Trim(text.substr(0, newline));
  while (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') &&
         text.back() == text.front()) {
    text = Trim(text.substr(1, text.size() - 2));
  }
  while (!text.empty() && (text.back() == '.' || text.back() == '"')) {
    text.pop_back();
  }
  if (StartsWith(text, "...")) text = Trim(text.substr(3));
  return Trim(text);
}

double SafeRatio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

}  // namespace

Json VerdictToJson(const JudgeVerdict& verdict) {
  Json row;
  row["triple_id"] = verdict.triple_id;
  row["label"] = LabelName(verdict.label);
  row["raw_output"] = verdict.raw_output;
  row["backend_id"] = verdict.backend_id;
  return row;
}

JudgeVerdict VerdictFromJson(const Json& row) {
  JudgeVerdict verdict;
  verdict.triple_id = row.at("triple_id").get<std::string>();
  auto label = ParseLabel(row.at("label").get<std::string>());
  if (!label) {
    throw Error(ErrorCode::kMalformedInput,
                "verdict for " + verdict.triple_id + " has a bad label");
  }
  verdict.label = *label;
  verdict.raw_output = row.value("raw_output", "");
  verdict.backend_id = row.value("backend_id", "");
  return verdict;
}

ValidityLabel ParseVerdict(std::string_view raw) {
  std::string cleaned;
  cleaned.reserve(raw.size());
  for (char c : raw) {
    cleaned.push_back(std::isalpha(static_cast<unsigned char>(c))
                          ? static_cast<char>(
                                std::tolower(static_cast<unsigned char>(c)))
                          : ' ');
  }
  for (const auto& word : SplitTokens(cleaned)) {
    if (word == "invalid") return ValidityLabel::kInvalid;
    if (word == "valid") return ValidityLabel::kValid;
    if (word == "ambiguous") return ValidityLabel::kAmbiguous;
  }
  throw Error(ErrorCode::kUnparseableVerdict,
              "no label in judge output: '" + std::string(raw) + "'");
}

ValidityLabel MockOracleJudge::OriginalLabel(const TripleId& id) {
  std::uint64_t r = HashPercent(id, "orig");
  if (r < 70) return ValidityLabel::kValid;
  if (r < 80) return ValidityLabel::kInvalid;
  return ValidityLabel::kAmbiguous;
}

JudgeVerdict MockOracleJudge::Label(const Triple& triple) {
  ValidityLabel label;
  if (auto it = gold_.find(triple.id); it != gold_.end()) {
    label = it->second;
  } else if (triple.variant == Variant::kOrig || !triple.parent_id) {
    label = OriginalLabel(triple.id);
  } else {
    const ValidityLabel parent = OriginalLabel(*triple.parent_id);
    const std::uint64_t r = HashPercent(triple.id, "variant");
    if (parent == ValidityLabel::kAmbiguous) {
      label = ValidityLabel::kAmbiguous;
    } else if (triple.variant == Variant::kNegThen) {
      label = parent == ValidityLabel::kValid
                  ? ValidityLabel::kInvalid
                  : (r < 80 ? ValidityLabel::kValid : ValidityLabel::kInvalid);
    } else if (triple.variant == Variant::kNegIf) {
      label = r < 45 ? parent
                     : (r < 90 ? Flip(parent) : ValidityLabel::kAmbiguous);
    } else {
      label = r < 50 ? parent
                     : (r < 70 ? Flip(parent) : ValidityLabel::kAmbiguous);
    }
  }
  return JudgeVerdict{triple.id, label,
                      "[" + std::string(LabelName(label)) + "]", id()};
}

RemoteJudge::RemoteJudge(LlmClient& client, PromptAsset prompt,
                         RequestOptions options)
    : client_(client), prompt_(std::move(prompt)), options_(std::move(options)) {}

JudgeVerdict RemoteJudge::Label(const Triple& triple) {
  ChatRequest request =
      RenderTemplate(prompt_, {{"statement", Verbalize(triple).text}}, options_);
  ChatResponse response = client_.Complete(request);
  return JudgeVerdict{triple.id, ParseVerdict(response.content),
                      response.content, id()};
}

std::vector<LabeledTriple> BuildValidSet(const SourceCorpora& corpora,
                                         const JudgeTrainingSpec& spec) {
  const DeterministicRng root(spec.seed);
  std::vector<LabeledTriple> out;
  for (Relation relation : kAllRelations) {
    for (const auto& quota : Quotas(corpora, spec)) {
      auto candidates = WithRelation(*quota.triples, relation);
      if (candidates.size() < quota.quota) {
        ThrowShortfall(quota.source, relation, candidates.size(), quota.quota);
      }
      DeterministicRng rng = root.Fork(StreamName("valid", quota.source, relation));
      for (std::size_t index :
           rng.SampleIndices(candidates.size(), quota.quota)) {
        out.push_back(LabeledTriple{*candidates[index], ValidityLabel::kValid,
                                    LabelSource::Synthetic()});
      }
    }
  }
  return out;
}

std::vector<LabeledTriple> BuildAmbiguousSet(const SourceCorpora& corpora,
                                             const JudgeTrainingSpec& spec) {
  std::unordered_set<std::string> existing;
  for (const auto* triples : {&corpora.atomic, &corpora.anion}) {
    for (const auto& triple : *triples) {
      existing.insert(
          TripleKey(triple.head.text, triple.relation, triple.tail.text));
    }
  }
  const DeterministicRng root(spec.seed);
  std::vector<LabeledTriple> out;
  for (Relation relation : kAllRelations) {
    for (const auto& quota : Quotas(corpora, spec)) {
      auto donors = WithRelation(*quota.triples, relation);
      const auto& heads = *quota.triples;
      if (quota.quota == 0) continue;
      if (donors.empty() || heads.size() < 2) {
        ThrowShortfall(quota.source, relation, 0, quota.quota);
      }
      DeterministicRng rng =
          root.Fork(StreamName("ambiguous", quota.source, relation));
      const std::size_t max_attempts = std::max<std::size_t>(1000, 100 * quota.quota);
      std::size_t produced = 0;
      for (std::size_t attempt = 0;
           produced < quota.quota && attempt < max_attempts; ++attempt) {
        const Triple& donor = *donors[rng.Below(donors.size())];
        const Triple& head_source = heads[rng.Below(heads.size())];
        if (head_source.id == donor.id ||
            head_source.head.text == donor.head.text) {
          continue;
        }
        std::string key =
            TripleKey(head_source.head.text, relation, donor.tail.text);
        if (!existing.insert(key).second) continue;
        out.push_back(LabeledTriple{
            MakeTriple(quota.source, Split::kTrain, head_source.head, relation,
                       donor.tail),
            ValidityLabel::kAmbiguous, LabelSource::Synthetic()});
        ++produced;
      }
      if (produced < quota.quota) {
        throw Error(ErrorCode::kRecombinationExhausted,
                    StreamName("ambiguous", quota.source, relation) +
                        ": produced " + std::to_string(produced) + " of " +
                        std::to_string(quota.quota) +
                        " collision-free recombinations");
      }
    }
  }
  return out;
}

std::vector<LabeledTriple> BuildInvalidSet(
    const SourceCorpora& corpora, const JudgeTrainingSpec& spec,
    LlmClient& client, const InvalidGenerationOptions& options,
    InvalidGenerationStats* stats) {
  InvalidGenerationStats local;
  InvalidGenerationStats& counters = stats ? *stats : local;
  const DeterministicRng root(spec.seed);
  std::unordered_set<TripleId> seen;
  std::vector<LabeledTriple> out;
  auto request_for = [&](const Triple& source_triple, Relation relation) {
    return RenderTemplate(
        options.prompt,
        {{"event", source_triple.head.text},
         {"relation", RelationPhrase(relation, source_triple.head)}},
        options.request);
  };
  for (Relation relation : kAllRelations) {
    for (const auto& quota : Quotas(corpora, spec)) {
      auto candidates = WithRelation(*quota.triples, relation);
      if (candidates.size() < quota.quota) {
        ThrowShortfall(quota.source, relation, candidates.size(), quota.quota);
      }
      DeterministicRng rng =
          root.Fork(StreamName("invalid", quota.source, relation));
      std::vector<std::size_t> order =
          rng.SampleIndices(candidates.size(), candidates.size());
      // First pass: one request per needed if-event, batched.
      std::vector<ChatRequest> requests;
      for (std::size_t i = 0; i < quota.quota; ++i) {
        requests.push_back(request_for(*candidates[order[i]], relation));
      }
      counters.requests += requests.size();
      std::vector<ChatResponse> responses = client.CompleteAll(requests);
      std::size_t next_candidate = quota.quota;
      std::size_t produced = 0;
      auto accept = [&](const Triple& source_triple, const std::string& raw) {
        std::string tail = CleanGeneratedTail(raw);
        if (tail.empty()) return false;
        Triple generated =
            MakeTriple(Source::kGenerated, Split::kTrain, source_triple.head,
                       relation, EventText{tail, Polarity::kAffirmative});
        if (!seen.insert(generated.id).second) return false;
        out.push_back(LabeledTriple{std::move(generated),
                                    ValidityLabel::kInvalid,
                                    LabelSource::Synthetic()});
        ++produced;
        return true;
      };
      for (std::size_t i = 0; i < responses.size(); ++i) {
        if (accept(*candidates[order[i]], responses[i].content)) continue;
        // Rejected generation: redraw with the next unused if-event.
        ++counters.rejected;
        bool replaced = false;
        while (!replaced && next_candidate < order.size()) {
          const Triple& fresh = *candidates[order[next_candidate++]];
          ++counters.requests;
          replaced = accept(fresh, client.Complete(request_for(fresh, relation)).content);
          if (!replaced) ++counters.rejected;
        }
        if (!replaced) {
          ThrowShortfall(quota.source, relation, produced, quota.quota);
        }
      }
    }
  }
  return out;
}

ClassificationMetrics ComputeMetrics(std::span<const ValidityLabel> gold,
                                     std::span<const ValidityLabel> predicted) {
  ClassificationMetrics metrics;
  std::array<std::size_t, 3> tp{}, gold_count{}, predicted_count{};
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++gold_count[LabelIndex(gold[i])];
    ++predicted_count[LabelIndex(predicted[i])];
    if (gold[i] == predicted[i]) {
      ++tp[LabelIndex(gold[i])];
      ++correct;
    }
  }
  std::size_t present = 0;
  for (ValidityLabel label : kAllLabels) {
    const std::size_t k = LabelIndex(label);
    LabelMetrics m;
    m.support = gold_count[k];
    m.predicted = predicted_count[k];
    m.precision = SafeRatio(tp[k], predicted_count[k]);
    m.recall = SafeRatio(tp[k], gold_count[k]);
    m.f1 = m.precision + m.recall == 0
               ? 0.0
               : 2 * m.precision * m.recall / (m.precision + m.recall);
    metrics.per_label[label] = m;
    if (m.support > 0 || m.predicted > 0) {
      ++present;
      metrics.macro.precision += m.precision;
      metrics.macro.recall += m.recall;
      metrics.macro.f1 += m.f1;
    }
    metrics.macro.support += m.support;
    metrics.macro.predicted += m.predicted;
  }
  if (present > 0) {
    metrics.macro.precision /= static_cast<double>(present);
    metrics.macro.recall /= static_cast<double>(present);
    metrics.macro.f1 /= static_cast<double>(present);
  }
  metrics.accuracy = SafeRatio(correct, gold.size());
  return metrics;
}

JudgeReport EvaluateJudge(std::span<const JudgeVerdict> verdicts,
                          std::span<const LabeledTriple> gold) {
  if (verdicts.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no verdicts to evaluate");
  }
  std::unordered_map<TripleId, const LabeledTriple*> gold_by_id;
  for (const auto& item : gold) gold_by_id[item.triple.id] = &item;
  std::unordered_set<TripleId> seen;
  std::vector<ValidityLabel> gold_labels, predicted_labels;
  std::map<Relation, std::pair<std::vector<ValidityLabel>,
                               std::vector<ValidityLabel>>> by_relation;
  JudgeReport report;
  for (const auto& verdict : verdicts) {
    auto it = gold_by_id.find(verdict.triple_id);
    if (it == gold_by_id.end()) {
      throw Error(ErrorCode::kUnknownInstance,
                  "verdict for unknown triple " + verdict.triple_id);
    }
    if (!seen.insert(verdict.triple_id).second) {
      throw Error(ErrorCode::kDuplicatePrediction,
                  "duplicate verdict for " + verdict.triple_id);
    }
    const LabeledTriple& expected = *it->second;
    gold_labels.push_back(expected.label);
    predicted_labels.push_back(verdict.label);
    auto& [g, p] = by_relation[expected.triple.relation];
    g.push_back(expected.label);
    p.push_back(verdict.label);
    ++report.confusion[LabelIndex(expected.label)][LabelIndex(verdict.label)];
  }
  ClassificationMetrics overall = ComputeMetrics(gold_labels, predicted_labels);
  report.n = gold_labels.size();
  report.accuracy = overall.accuracy;
  report.per_label = overall.per_label;
  report.macro = overall.macro;
  for (const auto& [relation, pair] : by_relation) {
    ClassificationMetrics m = ComputeMetrics(pair.first, pair.second);
    report.per_relation_f1[relation] = m.macro.f1;
    report.per_relation_accuracy[relation] = m.accuracy;
  }
  return report;
}

Json JudgeReport::ToJson() const {
  Json out;
  out["n"] = n;
  out["accuracy"] = accuracy;
  Json labels;
  for (const auto& [label, m] : per_label) {
    labels[std::string(LabelName(label))] = Json{{"precision", m.precision},
                                                 {"recall", m.recall},
                                                 {"f1", m.f1},
                                                 {"support", m.support},
                                                 {"predicted", m.predicted}};
  }
  out["per_label"] = std::move(labels);
  out["overall"] = Json{{"precision", macro.precision},
                        {"recall", macro.recall},
                        {"f1", macro.f1}};
  Json relations;
  for (const auto& [relation, f1] : per_relation_f1) {
    relations[std::string(RelationCode(relation))] =
        Json{{"f1", f1}, {"accuracy", per_relation_accuracy.at(relation)}};
  }
  out["per_relation"] = std::move(relations);
  Json matrix = Json::array();
  for (const auto& row : confusion) matrix.push_back(row);
  out["confusion"] = std::move(matrix);
  return out;
}

std::string JudgeReport::ToTable() const {
  std::ostringstream out;
  out << "label\tP\tR\tF1\tsupport\n";
  for (const auto& [label, m] : per_label) {
    out << LabelName(label) << '\t' << Fixed(m.precision, 2) << '\t'
        << Fixed(m.recall, 2) << '\t' << Fixed(m.f1, 2) << '\t' << m.support
        << '\n';
  }
  out << "Overall\t" << Fixed(macro.precision, 2) << '\t'
      << Fixed(macro.recall, 2) << '\t' << Fixed(macro.f1, 2) << '\t' << n
      << '\n';
  out << "\nrelation\tF1\tAcc\n";
  for (const auto& [relation, f1] : per_relation_f1) {
    out << RelationCode(relation) << '\t' << Fixed(f1, 2) << '\t'
        << Fixed(per_relation_accuracy.at(relation), 2) << '\n';
  }
  out << "All\t" << Fixed(macro.f1, 2) << '\t' << Fixed(accuracy, 2) << '\n';
  return out.str();
}

}  // namespace negkit
