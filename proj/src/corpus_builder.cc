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

#include "negkit/corpus_builder.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include "negkit/error.h"
#include "negkit/verbalizer.h"

namespace negkit {
namespace {

constexpr std::array<Variant, 4> kAllVariants = {
    Variant::kOrig, Variant::kNegIf, Variant::kNegThen, Variant::kNegBoth};

std::size_t Index(Variant variant) { return static_cast<std::size_t>(variant); }
std::size_t Index(ValidityLabel label) { return static_cast<std::size_t>(label); }

bool IsRetryable(ErrorCode code) {
  return code == ErrorCode::kUnparseableVerdict ||
         code == ErrorCode::kBackendUnavailable ||
         code == ErrorCode::kProtocolError;
}

std::string Percent1(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", value);
  return buffer;
}

}  // namespace

LabelingResult LabelCorpus(std::span<const Triple> triples,
                           JudgeBackend& backend,
                           const LabelingOptions& options) {
  struct Slot {
    std::optional<JudgeVerdict> verdict;
    std::string error;
  };
  std::vector<Slot> slots(triples.size());
  ParallelFor(triples.size(), options.concurrency, [&](std::size_t i) {
    for (int attempt = 0; attempt < std::max(1, options.attempts); ++attempt) {
      try {
        slots[i].verdict = backend.Label(triples[i]);
        return;
      } catch (const Error& e) {
        if (!IsRetryable(e.code())) throw;
        slots[i].error = std::string(e.name()) + ": " + e.what();
      }
    }
  });
  LabelingResult result;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (slots[i].verdict) {
      result.labeled.push_back(LabeledTriple{
          triples[i], slots[i].verdict->label, LabelSource::Judge(backend.id())});
    } else {
      result.quarantined.push_back(QuarantinedTriple{triples[i], slots[i].error});
    }
  }
  if (result.quarantined.size() > options.quarantine_threshold) {
    throw Error(ErrorCode::kLabelingAborted,
                "labeling aborted: " + std::to_string(result.quarantined.size()) +
                    " quarantined, " + std::to_string(result.labeled.size()) +
                    " labeled, threshold " +
                    std::to_string(options.quarantine_threshold));
  }
  return result;
}

std::string QuarantineToJsonl(std::span<const QuarantinedTriple> quarantined) {
  std::string out;
  for (const auto& item : quarantined) {
    Json row = TripleToJson(item.triple);
    row["error"] = item.error;
    out += row.dump();
    out.push_back('\n');
  }
  return out;
}

std::size_t CorpusStats::ColumnTotal(Variant variant) const {
  const auto& column = counts[Index(variant)];
  return column[0] + column[1] + column[2];
}

std::size_t CorpusStats::RowTotal(ValidityLabel label) const {
  std::size_t total = 0;
  for (Variant variant : kAllVariants) total += Count(variant, label);
  return total;
}

std::size_t CorpusStats::Total() const {
  std::size_t total = 0;
  for (Variant variant : kAllVariants) total += ColumnTotal(variant);
  return total;
}

std::size_t CorpusStats::Count(Variant variant, ValidityLabel label) const {
  return counts[Index(variant)][Index(label)];
}

double CorpusStats::Percent(Variant variant, ValidityLabel label) const {
  std::size_t total = ColumnTotal(variant);
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(Count(variant, label)) /
                                static_cast<double>(total);
}

double CorpusStats::RowPercent(ValidityLabel label) const {
  std::size_t total = Total();
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(RowTotal(label)) /
                                static_cast<double>(total);
}

std::string CorpusStats::ToTsv() const {
  std::ostringstream out;
  out << "label\tTotal\t(%)";
  for (Variant variant : kAllVariants) out << '\t' << VariantName(variant) << "\t(%)";
  out << '\n';
  out << "All\t" << Total() << '\t' << (Total() == 0 ? "0.0" : "100.0");
  for (Variant variant : kAllVariants) {
    out << '\t' << ColumnTotal(variant) << '\t'
        << (ColumnTotal(variant) == 0 ? "0.0" : "100.0");
  }
  out << '\n';
  for (ValidityLabel label : kAllLabels) {
    out << LabelName(label) << '\t' << RowTotal(label) << '\t'
        << Percent1(RowPercent(label));
    for (Variant variant : kAllVariants) {
      out << '\t' << Count(variant, label) << '\t'
          << Percent1(Percent(variant, label));
    }
    out << '\n';
  }
  return out.str();
}

Json CorpusStats::ToJson() const {
  Json out;
  out["total"] = Total();
  Json columns;
  for (Variant variant : kAllVariants) {
    Json column;
    column["total"] = ColumnTotal(variant);
    for (ValidityLabel label : kAllLabels) {
      column[std::string(LabelName(label))] =
          Json{{"count", Count(variant, label)},
               {"percent", Percent(variant, label)}};
    }
    columns[std::string(VariantName(variant))] = std::move(column);
  }
  out["variants"] = std::move(columns);
  Json rows;
  for (ValidityLabel label : kAllLabels) {
    rows[std::string(LabelName(label))] =
        Json{{"count", RowTotal(label)}, {"percent", RowPercent(label)}};
  }
  out["labels"] = std::move(rows);
  return out;
}

CorpusStats ComputeCorpusStats(std::span<const LabeledTriple> labeled) {
  CorpusStats stats;
  for (const auto& item : labeled) {
    ++stats.counts[Index(item.triple.variant)][Index(item.label)];
  }
  return stats;
}

std::vector<VariantGroup> GroupVariants(std::span<const LabeledTriple> labeled) {
  std::vector<VariantGroup> groups;
  std::unordered_map<TripleId, std::size_t> by_orig;
  for (const auto& item : labeled) {
    if (item.triple.variant == Variant::kOrig) {
      if (by_orig.emplace(item.triple.id, groups.size()).second) {
        groups.push_back(VariantGroup{item, {}, {}, {}});
      }
    }
  }
  for (const auto& item : labeled) {
    if (item.triple.variant == Variant::kOrig || !item.triple.parent_id) continue;
    auto it = by_orig.find(*item.triple.parent_id);
    if (it == by_orig.end()) continue;
    VariantGroup& group = groups[it->second];
    switch (item.triple.variant) {
      case Variant::kNegIf: group.neg_if = item; break;
      case Variant::kNegThen: group.neg_then = item; break;
      case Variant::kNegBoth: group.neg_both = item; break;
      case Variant::kOrig: break;
    }
  }
  return groups;
}

bool IsContrastivePattern(ValidityLabel orig, ValidityLabel neg_if,
                          ValidityLabel neg_then) {
  using L = ValidityLabel;
  const std::array<std::array<L, 3>, 4> kPatterns = {{
      {L::kValid, L::kInvalid, L::kValid},
      {L::kValid, L::kValid, L::kInvalid},
      {L::kInvalid, L::kValid, L::kInvalid},
      {L::kInvalid, L::kInvalid, L::kValid},
  }};
  for (const auto& pattern : kPatterns) {
    if (pattern[0] == orig && pattern[1] == neg_if && pattern[2] == neg_then) {
      return true;
    }
  }
  return false;
}

std::vector<VariantGroup> SelectContrastiveAtomic(
    std::span<const VariantGroup> groups) {
  std::vector<VariantGroup> selected;
  for (const auto& group : groups) {
    if (!group.neg_if || !group.neg_then) {
      throw Error(ErrorCode::kIncompleteGroup,
                  "group " + group.orig.triple.id +
                      " lacks its NEG_IF or NEG_THEN member");
    }
    if (IsContrastivePattern(group.orig.label, group.neg_if->label,
                             group.neg_then->label)) {
      VariantGroup kept = group;
      kept.neg_both.reset();
      selected.push_back(std::move(kept));
    }
  }
  return selected;
}

std::vector<TriplePair> AnionPairs(std::span<const VariantGroup> groups) {
  std::vector<TriplePair> pairs;
  for (const auto& group : groups) {
    if (group.neg_both) pairs.emplace_back(group.orig, *group.neg_both);
  }
  return pairs;
}

std::vector<TriplePair> SelectContrastiveAnion(
    std::span<const TriplePair> pairs) {
  std::vector<TriplePair> selected;
  for (const auto& pair : pairs) {
    const ValidityLabel a = pair.first.label;
    const ValidityLabel b = pair.second.label;
    if (a != b && a != ValidityLabel::kAmbiguous &&
        b != ValidityLabel::kAmbiguous) {
      selected.push_back(pair);
    }
  }
  return selected;
}

std::size_t TrainingCorpus::TripleCount() const {
  std::size_t total = 0;
  for (const auto& group : groups) total += group.members.size();
  return total;
}

std::size_t TrainingCorpus::TripleCount(Source source) const {
  std::size_t total = 0;
  for (const auto& group : groups) {
    if (group.source == source) total += group.members.size();
  }
  return total;
}

std::size_t TrainingCorpus::GroupCount(Source source) const {
  return static_cast<std::size_t>(std::count_if(
      groups.begin(), groups.end(),
      [&](const CorpusGroup& group) { return group.source == source; }));
}

std::vector<LabeledTriple> TrainingCorpus::Flatten() const {
  std::vector<LabeledTriple> out;
  for (const auto& group : groups) {
    out.insert(out.end(), group.members.begin(), group.members.end());
  }
  return out;
}

void TrainingCorpus::Append(const TrainingCorpus& other) {
  groups.insert(groups.end(), other.groups.begin(), other.groups.end());
}

TrainingCorpus CorpusFromAtomicGroups(std::span<const VariantGroup> groups) {
  TrainingCorpus corpus;
  for (const auto& group : groups) {
    CorpusGroup out{group.orig.triple.source, {group.orig}};
    if (group.neg_if) out.members.push_back(*group.neg_if);
    if (group.neg_then) out.members.push_back(*group.neg_then);
    corpus.groups.push_back(std::move(out));
  }
  return corpus;
}

TrainingCorpus CorpusFromAnionPairs(std::span<const TriplePair> pairs) {
  TrainingCorpus corpus;
  for (const auto& [orig, neg_both] : pairs) {
    corpus.groups.push_back(CorpusGroup{orig.triple.source, {orig, neg_both}});
  }
  return corpus;
}

BaselineTargets BaselineTargetsFor(const TrainingCorpus& contrastive) {
  BaselineTargets targets;
  for (const auto& group : contrastive.groups) {
    for (const auto& member : group.members) {
      if (member.label == ValidityLabel::kValid) {
        if (group.source == Source::kAnion) {
          ++targets.anion_valid;
        } else {
          ++targets.atomic_valid;
        }
      } else {
        ++targets.invalid;
      }
    }
  }
  return targets;
}

TrainingCorpus BuildBaseline(const SourceCorpora& originals,
                             std::span<const LabeledTriple> invalid_pool,
                             const BaselineTargets& targets,
                             std::uint64_t seed) {
  const DeterministicRng root(seed);
  TrainingCorpus corpus;
  auto sample_valid = [&](const std::vector<Triple>& pool, Source source,
                          std::size_t want) {
    std::vector<const Triple*> candidates;
    for (const auto& triple : pool) {
      if (triple.variant == Variant::kOrig) candidates.push_back(&triple);
    }
    if (candidates.size() < want) {
      throw Error(ErrorCode::kShortfall,
                  std::string(SourceName(source)) + " baseline: need " +
                      std::to_string(want) + " originals, have " +
                      std::to_string(candidates.size()));
    }
    DeterministicRng rng = root.Fork("baseline/" + std::string(SourceName(source)));
    for (std::size_t index : rng.SampleIndices(candidates.size(), want)) {
      corpus.groups.push_back(CorpusGroup{
          source, {LabeledTriple{*candidates[index], ValidityLabel::kValid,
                                 LabelSource::Synthetic()}}});
    }
  };
  sample_valid(originals.atomic, Source::kAtomic, targets.atomic_valid);
  sample_valid(originals.anion, Source::kAnion, targets.anion_valid);
  if (invalid_pool.size() < targets.invalid) {
    throw Error(ErrorCode::kShortfall,
                "baseline: need " + std::to_string(targets.invalid) +
                    " Invalid triples, pool has " +
                    std::to_string(invalid_pool.size()));
  }
  DeterministicRng rng = root.Fork("baseline/invalid");
  for (std::size_t index :
       rng.SampleIndices(invalid_pool.size(), targets.invalid)) {
    LabeledTriple item = invalid_pool[index];
    item.label = ValidityLabel::kInvalid;
    corpus.groups.push_back(CorpusGroup{item.triple.source, {std::move(item)}});
  }
  return corpus;
}

TrainingCorpus SubsetByVariant(const TrainingCorpus& corpus, Variant variant) {
  TrainingCorpus out;
  for (const auto& group : corpus.groups) {
    CorpusGroup kept{group.source, {}};
    for (const auto& member : group.members) {
      if (member.triple.variant == Variant::kOrig ||
          member.triple.variant == variant) {
        kept.members.push_back(member);
      }
    }
    out.groups.push_back(std::move(kept));
  }
  return out;
}

TrainingCorpus SampleSubset(const TrainingCorpus& corpus,
                            std::size_t n_per_source, std::uint64_t seed) {
  const DeterministicRng root(seed);
  std::map<Source, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < corpus.groups.size(); ++i) {
    by_source[corpus.groups[i].source].push_back(i);
  }
  std::vector<std::size_t> chosen;
  for (auto& [source, indices] : by_source) {
    const std::size_t available = corpus.TripleCount(source);
    if (available < n_per_source) {
      throw Error(ErrorCode::kShortfall,
                  std::string(SourceName(source)) + " subset: need " +
                      std::to_string(n_per_source) + " triples, have " +
                      std::to_string(available));
    }
    if (available == n_per_source) {
      chosen.insert(chosen.end(), indices.begin(), indices.end());
      continue;
    }
    DeterministicRng rng = root.Fork("subset/" + std::string(SourceName(source)));
    rng.Shuffle(indices);
    std::size_t count = 0;
    for (std::size_t index : indices) {
      if (count >= n_per_source) break;
      const std::size_t size = corpus.groups[index].members.size();
      const std::size_t with = count + size;
      // Keep the group unless leaving it out lands closer to the target.
      if (with > n_per_source && with - n_per_source > n_per_source - count) {
        break;
      }
      chosen.push_back(index);
      count = with;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  TrainingCorpus out;
  for (std::size_t index : chosen) out.groups.push_back(corpus.groups[index]);
  return out;
}

TrainingCorpus RandomizeLabels(const TrainingCorpus& corpus,
                               std::uint64_t seed) {
  DeterministicRng rng = DeterministicRng(seed).Fork("random-labels");
  TrainingCorpus out = corpus;
  for (auto& group : out.groups) {
    for (auto& member : group.members) {
      member.label = rng.Coin() ? ValidityLabel::kValid : ValidityLabel::kInvalid;
      member.label_source = LabelSource::Random();
    }
  }
  return out;
}

std::vector<TrainingRecord> BuildTrainingRecords(const TrainingCorpus& corpus,
                                                 std::string_view instruction) {
  std::vector<TrainingRecord> records;
  for (const auto& group : corpus.groups) {
    for (const auto& member : group.members) {
      if (member.label == ValidityLabel::kAmbiguous) {
        throw Error(ErrorCode::kExportRejected,
                    "triple " + member.triple.id +
                        " is labeled Ambiguous and cannot be a training target");
      }
      records.push_back(TrainingRecord{member.triple.id, std::string(instruction),
                                       Verbalize(member.triple).text,
                                       std::string(LabelName(member.label))});
    }
  }
  std::sort(records.begin(), records.end(),
            [](const TrainingRecord& a, const TrainingRecord& b) {
              return a.triple_id < b.triple_id;
            });
  return records;
}

std::string TrainingRecordsToJsonl(std::span<const TrainingRecord> records) {
  std::string out;
  for (const auto& record : records) {
    Json row;
    row["instruction"] = record.instruction;
    row["input"] = record.input;
    row["output"] = record.output;
    out += row.dump();
    out.push_back('\n');
  }
  return out;
}

std::size_t ExportInstructionJsonl(const TrainingCorpus& corpus,
                                   std::string_view instruction,
                                   const std::filesystem::path& path) {
  auto records = BuildTrainingRecords(corpus, instruction);
  WriteFile(path, TrainingRecordsToJsonl(records));
  return records.size();
}

}  // namespace negkit
