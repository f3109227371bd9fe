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

#include "negkit/annotation.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numeric>

#include "negkit/error.h"
#include "negkit/negator.h"
#include "negkit/util.h"
#include "negkit/verbalizer.h"

namespace negkit {
namespace {

constexpr char kBenchmarkFile[] = "benchmark.jsonl";
constexpr char kLogFile[] = "labels.jsonl";
constexpr char kSnapshotFile[] = "snapshot.jsonl";

std::size_t Index(ValidityLabel label) { return static_cast<std::size_t>(label); }

}  // namespace

std::vector<Triple> SampleBenchmark(std::span<const Triple> test_corpus,
                                    std::size_t per_relation,
                                    std::uint64_t seed) {
  const DeterministicRng root(seed);
  std::vector<Triple> benchmark;
  for (Relation relation : kAllRelations) {
    std::vector<const Triple*> candidates;
    for (const auto& triple : test_corpus) {
      if (triple.relation == relation && triple.source == Source::kAtomic &&
          triple.variant == Variant::kOrig && triple.split == Split::kTest) {
        candidates.push_back(&triple);
      }
    }
    // Sorting first makes the sample independent of input order.
    std::sort(candidates.begin(), candidates.end(),
              [](const Triple* a, const Triple* b) { return a->id < b->id; });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Triple* a, const Triple* b) {
                                   return a->id == b->id;
                                 }),
                     candidates.end());
    DeterministicRng rng =
        root.Fork("benchmark/" + std::string(RelationCode(relation)));
    rng.Shuffle(candidates);
    std::size_t taken = 0;
    for (const Triple* candidate : candidates) {
      if (taken == per_relation) break;
      std::vector<Triple> variants;
      try {
        variants = GenerateVariants(*candidate);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kUnnegatableEvent ||
            e.code() == ErrorCode::kAlreadyNegated) {
          continue;
        }
        throw;
      }
      benchmark.push_back(*candidate);
      benchmark.insert(benchmark.end(), variants.begin(), variants.end());
      ++taken;
    }
    if (taken < per_relation) {
      throw Error(ErrorCode::kShortfall,
                  "benchmark relation " + std::string(RelationCode(relation)) +
                      ": need " + std::to_string(per_relation) +
                      " negatable originals, have " + std::to_string(taken) +
                      " (short by " + std::to_string(per_relation - taken) +
                      ")");
    }
  }
  return benchmark;
}

std::string FormatTimestamp(Timestamp ms) {
  std::int64_t seconds = ms / 1000;
  std::int64_t millis = ms % 1000;
  if (millis < 0) {
    millis += 1000;
    --seconds;
  }
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(millis));
  return buffer;
}

Timestamp ParseTimestamp(std::string_view text) {
  const std::string copy(text);
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0, millis = 0;
  char z = 0;
  int consumed = 0;
  const int fields =
      std::sscanf(copy.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3d%c%n", &year, &month,
                  &day, &hour, &minute, &second, &millis, &z, &consumed);
  if (fields != 8 || z != 'Z' || static_cast<std::size_t>(consumed) != copy.size()) {
    throw Error(ErrorCode::kValidationError, "malformed timestamp: " + copy);
  }
  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = minute;
  tm.tm_sec = second;
  const Timestamp ms =
      static_cast<Timestamp>(timegm(&tm)) * 1000 + static_cast<Timestamp>(millis);
  if (FormatTimestamp(ms) != copy) {
    throw Error(ErrorCode::kValidationError, "invalid timestamp: " + copy);
  }
  return ms;
}

Timestamp NowTimestamp() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

Json RecordToJson(const AnnotationRecord& record) {
  Json row;
  row["annotator_id"] = record.annotator_id;
  row["triple_id"] = record.triple_id;
  row["label"] = std::string(LabelName(record.label));
  row["timestamp"] = FormatTimestamp(record.timestamp);
  return row;
}

AnnotationRecord RecordFromJson(const Json& row) {
  if (!row.is_object()) {
    throw Error(ErrorCode::kValidationError, "label record must be an object");
  }
  auto text = [&](const char* key) -> std::string {
    auto it = row.find(key);
    if (it == row.end() || !it->is_string() || Trim(it->get<std::string>()).empty()) {
      throw Error(ErrorCode::kValidationError,
                  std::string("label record needs a non-empty string '") + key +
                      "'");
    }
    return Trim(it->get<std::string>());
  };
  AnnotationRecord record;
  record.annotator_id = text("annotator_id");
  record.triple_id = text("triple_id");
  const std::string label = text("label");
  auto parsed = ParseLabel(label);
  if (!parsed) {
    throw Error(ErrorCode::kValidationError,
                "label '" + label + "' is not one of Valid, Invalid, Ambiguous");
  }
  record.label = *parsed;
  record.timestamp = ParseTimestamp(text("timestamp"));
  return record;
}

Json AgreementReport::ToJson() const {
  Json out;
  out["kappa"] = kappa;
  out["observed_agreement"] = observed_agreement;
  out["expected_agreement"] = expected_agreement;
  out["n_items"] = n_items;
  Json labels = Json::array();
  for (ValidityLabel label : kAllLabels) labels.push_back(std::string(LabelName(label)));
  out["labels"] = std::move(labels);
  out["confusion"] = confusion;
  return out;
}

AgreementReport AgreementFromConfusion(const Confusion3& confusion) {
  AgreementReport report;
  report.confusion = confusion;
  std::array<double, 3> row{}, col{};
  double agree = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double count = static_cast<double>(confusion[i][j]);
      report.n_items += confusion[i][j];
      row[i] += count;
      col[j] += count;
      if (i == j) agree += count;
    }
  }
  if (report.n_items == 0) {
    throw Error(ErrorCode::kEmptyOverlap, "no co-labeled items");
  }
  const double n = static_cast<double>(report.n_items);
  report.observed_agreement = agree / n;
  double pe = 0.0;
  for (std::size_t k = 0; k < 3; ++k) pe += (row[k] / n) * (col[k] / n);
  report.expected_agreement = pe;
  // pe == 1 forces both annotators onto one shared label, hence po == 1.
  report.kappa = pe >= 1.0 ? 1.0
                           : (report.observed_agreement - pe) / (1.0 - pe);
  return report;
}

AgreementReport ComputeAgreement(const LabelMap& a, const LabelMap& b) {
  Confusion3 confusion{};
  for (const auto& [id, label] : a) {
    auto it = b.find(id);
    if (it != b.end()) ++confusion[Index(label)][Index(it->second)];
  }
  return AgreementFromConfusion(confusion);
}

std::string_view PolicyName(AdjudicationPolicy policy) {
  return policy == AdjudicationPolicy::kAgreeOnly ? "AGREE_ONLY" : "THIRD_PASS";
}

std::optional<AdjudicationPolicy> ParsePolicy(std::string_view name) {
  const std::string upper = [&] {
    std::string s(name);
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  if (upper == "AGREE_ONLY") return AdjudicationPolicy::kAgreeOnly;
  if (upper == "THIRD_PASS") return AdjudicationPolicy::kThirdPass;
  return std::nullopt;
}

Json AdjudicationResult::ToJson() const {
  Json out;
  Json rows = Json::array();
  for (const auto& item : gold) rows.push_back(LabeledTripleToJson(item));
  out["gold"] = std::move(rows);
  out["quarantined"] = quarantined;
  out["pending"] = pending;
  return out;
}

AdjudicationResult Adjudicate(const AdjudicationInput& input,
                              AdjudicationPolicy policy) {
  if (input.benchmark == nullptr || input.first == nullptr ||
      input.second == nullptr) {
    throw Error(ErrorCode::kValidationError,
                "adjudication needs a benchmark and two label sets");
  }
  AdjudicationResult result;
  std::size_t missing = 0;
  for (const auto& triple : *input.benchmark) {
    auto a = input.first->find(triple.id);
    auto b = input.second->find(triple.id);
    if (a == input.first->end() || b == input.second->end()) {
      ++missing;
      continue;
    }
    if (a->second == b->second) {
      result.gold.push_back(LabeledTriple{triple, a->second, LabelSource::Gold()});
      continue;
    }
    if (policy == AdjudicationPolicy::kAgreeOnly) {
      result.quarantined.push_back(triple.id);
      continue;
    }
    const LabelMap* third = input.adjudicator;
    auto c = third ? third->find(triple.id) : LabelMap::const_iterator{};
    if (third && c != third->end()) {
      result.gold.push_back(LabeledTriple{triple, c->second, LabelSource::Gold()});
    } else {
      result.pending.push_back(triple.id);
    }
  }
  if (input.strict && missing > 0) {
    throw Error(ErrorCode::kIncompleteAnnotation,
                std::to_string(missing) + " of " +
                    std::to_string(input.benchmark->size()) +
                    " triples lack a label from both annotators");
  }
  return result;
}

Json ProgressReport::ToJson() const {
  Json out;
  out["total"] = total;
  Json per = Json::object();
  for (const auto& [id, count] : labeled) per[id] = count;
  out["annotators"] = std::move(per);
  return out;
}

AnnotationSession::AnnotationSession(std::vector<Triple> benchmark,
                                     SessionOptions options)
    : benchmark_(std::move(benchmark)),
      options_(std::move(options)),
      state_(std::make_shared<State>()) {
  order_.resize(benchmark_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  for (std::size_t i = 0; i < benchmark_.size(); ++i) {
    if (!index_.emplace(benchmark_[i].id, i).second) {
      throw Error(ErrorCode::kMalformedInput,
                  "duplicate benchmark triple " + benchmark_[i].id);
    }
  }
  std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return benchmark_[a].id < benchmark_[b].id;
  });
  if (options_.order_seed) {
    DeterministicRng rng = DeterministicRng(*options_.order_seed).Fork("task-order");
    rng.Shuffle(order_);
  }
}

std::unique_ptr<AnnotationSession> AnnotationSession::Create(
    std::vector<Triple> benchmark, SessionOptions options) {
  std::filesystem::create_directories(options.data_dir);
  WriteTriples(options.data_dir / kBenchmarkFile, benchmark);
  WriteFile(options.data_dir / kLogFile, "");
  WriteFile(options.data_dir / kSnapshotFile, "");
  return std::unique_ptr<AnnotationSession>(
      new AnnotationSession(std::move(benchmark), std::move(options)));
}

std::unique_ptr<AnnotationSession> AnnotationSession::Open(
    SessionOptions options) {
  const auto dir = options.data_dir;
  if (!std::filesystem::exists(dir / kBenchmarkFile)) {
    throw Error(ErrorCode::kSessionError,
                "no annotation session in " + dir.string());
  }
  std::unique_ptr<AnnotationSession> session(
      new AnnotationSession(ReadTriples(dir / kBenchmarkFile), std::move(options)));
  auto state = std::make_shared<State>();
  for (const char* file : {kSnapshotFile, kLogFile}) {
    if (!std::filesystem::exists(dir / file)) continue;
    for (const Json& row : ReadJsonLines(dir / file)) {
      Apply(*state, RecordFromJson(row));
    }
  }
  session->state_ = std::move(state);
  return session;
}

std::shared_ptr<const AnnotationSession::State> AnnotationSession::Snapshot()
    const {
  std::lock_guard<std::mutex> lock(mutex_);
  return state_;
}

void AnnotationSession::CheckOpen() const {
  if (closed_) throw Error(ErrorCode::kSessionError, "annotation session is closed");
}

bool AnnotationSession::Apply(State& state, const AnnotationRecord& record) {
  auto& mine = state.labels[record.annotator_id];
  auto it = mine.find(record.triple_id);
  if (it == mine.end()) {
    mine.emplace(record.triple_id, record);
    return false;
  }
  // Ties go to the later arrival.
  if (record.timestamp >= it->second.timestamp) it->second = record;
  return true;
}

std::vector<std::size_t> AnnotationSession::QueueFor(
    const std::string& annotator_id, const State& state) const {
  const bool adjudicating = options_.policy == AdjudicationPolicy::kThirdPass &&
                            annotator_id == options_.adjudicator;
  if (!adjudicating) return order_;
  std::vector<std::size_t> queue;
  auto first = state.labels.find(options_.first_annotator);
  auto second = state.labels.find(options_.second_annotator);
  if (first == state.labels.end() || second == state.labels.end()) return queue;
  for (std::size_t index : order_) {
    const TripleId& id = benchmark_[index].id;
    auto a = first->second.find(id);
    auto b = second->second.find(id);
    if (a != first->second.end() && b != second->second.end() &&
        a->second.label != b->second.label) {
      queue.push_back(index);
    }
  }
  return queue;
}

std::optional<Task> AnnotationSession::NextTask(
    const std::string& annotator_id) const {
  CheckOpen();
  auto state = Snapshot();
  const auto queue = QueueFor(annotator_id, *state);
  auto mine = state->labels.find(annotator_id);
  for (std::size_t position = 0; position < queue.size(); ++position) {
    const Triple& triple = benchmark_[queue[position]];
    if (mine != state->labels.end() && mine->second.count(triple.id)) continue;
    return Task{triple.id, Verbalize(triple).text, position + 1, queue.size()};
  }
  return std::nullopt;
}

bool AnnotationSession::Submit(const AnnotationRecord& record) {
  CheckOpen();
  if (Trim(record.annotator_id).empty()) {
    throw Error(ErrorCode::kValidationError, "annotator_id must be non-empty");
  }
  if (!index_.count(record.triple_id)) {
    throw Error(ErrorCode::kUnknownInstance,
                "triple " + record.triple_id + " is not in the benchmark");
  }
  std::lock_guard<std::mutex> lock(mutex_);
  {
    std::ofstream log(options_.data_dir / kLogFile, std::ios::app | std::ios::binary);
    log << RecordToJson(record).dump() << '\n';
    log.flush();
    if (!log) {
      throw Error(ErrorCode::kIoError, "cannot append to the label log in " +
                                           options_.data_dir.string());
    }
  }
  auto next = std::make_shared<State>(*state_);
  const bool replaced = Apply(*next, record);
  state_ = std::move(next);
  return replaced;
}

ProgressReport AnnotationSession::Progress() const {
  CheckOpen();
  auto state = Snapshot();
  ProgressReport report;
  report.total = benchmark_.size();
  for (const auto& [annotator, labels] : state->labels) {
    report.labeled[annotator] = labels.size();
  }
  return report;
}

LabelMap AnnotationSession::LabelsOf(const std::string& annotator_id) const {
  auto state = Snapshot();
  LabelMap out;
  auto it = state->labels.find(annotator_id);
  if (it == state->labels.end()) return out;
  for (const auto& [id, record] : it->second) out.emplace(id, record.label);
  return out;
}

AgreementReport AnnotationSession::Agreement(const std::string& a,
                                             const std::string& b) const {
  CheckOpen();
  return ComputeAgreement(LabelsOf(a), LabelsOf(b));
}

AdjudicationResult AnnotationSession::Adjudicate() const {
  CheckOpen();
  const LabelMap first = LabelsOf(options_.first_annotator);
  const LabelMap second = LabelsOf(options_.second_annotator);
  const LabelMap third = LabelsOf(options_.adjudicator);
  AdjudicationInput input;
  input.benchmark = &benchmark_;
  input.first = &first;
  input.second = &second;
  input.adjudicator = &third;
  input.adjudicator_id = options_.adjudicator;
  input.strict = options_.strict;
  return negkit::Adjudicate(input, options_.policy);
}

std::vector<AnnotationRecord> AnnotationSession::Records() const {
  auto state = Snapshot();
  std::vector<AnnotationRecord> out;
  for (const auto& [annotator, labels] : state->labels) {
    for (const auto& [id, record] : labels) out.push_back(record);
  }
  return out;
}

void AnnotationSession::Compact() {
  CheckOpen();
  std::lock_guard<std::mutex> lock(mutex_);
  std::string body;
  for (const auto& [annotator, labels] : state_->labels) {
    for (const auto& [id, record] : labels) {
      body += RecordToJson(record).dump();
      body.push_back('\n');
    }
  }
  const auto tmp = options_.data_dir / (std::string(kSnapshotFile) + ".tmp");
  WriteFile(tmp, body);
  std::filesystem::rename(tmp, options_.data_dir / kSnapshotFile);
  WriteFile(options_.data_dir / kLogFile, "");
}

void AnnotationSession::Close() { closed_ = true; }

}  // namespace negkit
