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

#include "negkit/eval_harness.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "negkit/error.h"

namespace negkit {
namespace {

std::string RowContext(std::size_t index) {
  return "row " + std::to_string(index + 1);
}

std::string RequiredString(const Json& row, std::size_t index,
                           std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = row.find(key);
    if (it == row.end() || it->is_null()) continue;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    if (it->is_boolean()) return it->get<bool>() ? "yes" : "no";
  }
  throw Error(ErrorCode::kMalformedInput,
              RowContext(index) + ": missing field '" + *keys.begin() + "'");
}

std::optional<std::string> OptionalString(const Json& row, const char* key) {
  auto it = row.find(key);
  if (it == row.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

void RequireObject(const Json& row, std::size_t index) {
  if (!row.is_object()) {
    throw Error(ErrorCode::kMalformedInput, RowContext(index) + ": not an object");
  }
}

double Percent(std::size_t numerator, std::size_t denominator) {
  return denominator == 0 ? 0.0
                          : 100.0 * static_cast<double>(numerator) /
                                static_cast<double>(denominator);
}

Metric MakeMetric(std::string name, std::size_t numerator,
                  std::size_t denominator) {
  return Metric{std::move(name), Percent(numerator, denominator), numerator,
                denominator};
}

// Index of predictions by id; rejects duplicates and ids outside `known`.
std::unordered_map<std::string, const PredictionRecord*> IndexPredictions(
    std::span<const PredictionRecord> predictions,
    const std::unordered_set<std::string>& known) {
  std::unordered_map<std::string, const PredictionRecord*> index;
  for (const auto& record : predictions) {
    if (!known.count(record.instance_id)) {
      throw Error(ErrorCode::kUnknownInstance,
                  "prediction for unknown instance " + record.instance_id);
    }
    if (!index.emplace(record.instance_id, &record).second) {
      throw Error(ErrorCode::kDuplicatePrediction,
                  "duplicate prediction for " + record.instance_id);
    }
  }
  return index;
}

bool IsStripped(char c) {
  switch (c) {
    case '[': case ']': case '(': case ')': case '{': case '}':
    case '<': case '>': case '"': case '\'': case '`':
      return true;
    default:
      return false;
  }
}

std::string CollapseSpaces(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::string ReplaceAll(std::string text, std::string_view from,
                       std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

// Content of the first [...] span, if any.
std::optional<std::string> Bracketed(std::string_view raw) {
  const auto open = raw.find('[');
  if (open == std::string_view::npos) return std::nullopt;
  const auto close = raw.find(']', open + 1);
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(raw.substr(open + 1, close - open - 1));
}

void AddCueBreakdown(EvalReport& report,
                     const std::map<std::string, std::optional<std::string>>& cues,
                     const std::map<std::string, bool>& correct) {
  std::map<CueCategory, std::pair<std::size_t, std::size_t>> tally;
  bool any = false;
  for (const auto& [id, cue] : cues) {
    if (!cue) continue;
    any = true;
    auto& [right, total] = tally[CategorizeNegationCue(*cue)];
    ++total;
    if (correct.at(id)) ++right;
  }
  if (!any) return;
  Breakdown breakdown{"cue_category", {}};
  for (const auto& [category, counts] : tally) {
    breakdown.rows.push_back(MakeMetric(std::string(CueCategoryName(category)),
                                        counts.first, counts.second));
  }
  report.breakdowns.push_back(std::move(breakdown));
}

std::string FormatNumber(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

}  // namespace

std::vector<PredictionRecord> PredictionsFromJson(std::span<const Json> rows) {
  std::vector<PredictionRecord> out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RequireObject(rows[i], i);
    PredictionRecord record;
    record.instance_id = RequiredString(rows[i], i, {"instance_id", "id"});
    auto prediction = rows[i].find("prediction");
    if (prediction == rows[i].end() || !prediction->is_string()) {
      throw Error(ErrorCode::kMalformedInput,
                  RowContext(i) + ": missing field 'prediction'");
    }
    record.prediction = prediction->get<std::string>();
    record.raw_output = OptionalString(rows[i], "raw_output");
    if (!seen.insert(record.instance_id).second) {
      throw Error(ErrorCode::kDuplicatePrediction,
                  RowContext(i) + ": duplicate prediction for " +
                      record.instance_id);
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<PredictionRecord> ReadPredictions(const std::filesystem::path& path) {
  const auto rows = ReadJsonLines(path);
  return PredictionsFromJson(rows);
}

Json PredictionToJson(const PredictionRecord& record) {
  Json row;
  row["instance_id"] = record.instance_id;
  row["prediction"] = record.prediction;
  if (record.raw_output) row["raw_output"] = *record.raw_output;
  return row;
}

std::string_view EditTypeName(EditType edit) {
  switch (edit) {
    case EditType::kOriginal: return "ORIGINAL";
    case EditType::kParaphrase: return "PARAPHRASE";
    case EditType::kScope: return "SCOPE";
    case EditType::kAffirmative: return "AFFIRMATIVE";
  }
  return "ORIGINAL";
}

std::optional<EditType> ParseEditType(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "original") return EditType::kOriginal;
  if (lower == "paraphrase" || lower == "paraphrase edit") return EditType::kParaphrase;
  if (lower == "scope" || lower == "scope edit") return EditType::kScope;
  if (lower == "affirmative" || lower == "affirmative edit") {
    return EditType::kAffirmative;
  }
  return std::nullopt;
}

std::vector<ClassificationInstance> ClassificationGoldFromJson(
    std::span<const Json> rows) {
  std::vector<ClassificationInstance> out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RequireObject(rows[i], i);
    ClassificationInstance instance;
    instance.instance_id = RequiredString(rows[i], i, {"instance_id", "id"});
    instance.gold = RequiredString(rows[i], i, {"gold", "label", "answer"});
    instance.cue = OptionalString(rows[i], "cue");
    instance.fields = rows[i];
    if (!seen.insert(instance.instance_id).second) {
      throw Error(ErrorCode::kMalformedInput,
                  RowContext(i) + ": duplicate gold id " + instance.instance_id);
    }
    out.push_back(std::move(instance));
  }
  return out;
}

std::vector<CondaQAInstance> CondaQAGoldFromJson(std::span<const Json> rows) {
  std::vector<CondaQAInstance> out;
  std::unordered_set<std::string> seen;
  std::map<std::pair<std::string, std::string>, std::size_t> originals;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RequireObject(rows[i], i);
    CondaQAInstance instance;
    instance.instance_id = RequiredString(rows[i], i, {"instance_id", "id"});
    instance.question_id = RequiredString(rows[i], i, {"question_id"});
    instance.bundle_id = RequiredString(rows[i], i, {"bundle_id"});
    const std::string edit = RequiredString(rows[i], i, {"edit_type"});
    auto parsed = ParseEditType(edit);
    if (!parsed) {
      throw Error(ErrorCode::kMalformedInput,
                  RowContext(i) + ": unknown edit_type '" + edit + "'");
    }
    instance.edit_type = *parsed;
    instance.gold_answer = RequiredString(rows[i], i, {"gold_answer", "answer", "gold"});
    instance.cue = OptionalString(rows[i], "cue");
    instance.fields = rows[i];
    if (!seen.insert(instance.instance_id).second) {
      throw Error(ErrorCode::kMalformedInput,
                  RowContext(i) + ": duplicate gold id " + instance.instance_id);
    }
    auto& count = originals[{instance.question_id, instance.bundle_id}];
    if (instance.edit_type == EditType::kOriginal) ++count;
    out.push_back(std::move(instance));
  }
  for (const auto& [group, count] : originals) {
    if (count != 1) {
      throw Error(ErrorCode::kMalformedInput,
                  "group (" + group.first + ", " + group.second + ") has " +
                      std::to_string(count) + " ORIGINAL instances, expected 1");
    }
  }
  return out;
}

std::vector<NevIRInstance> NevIRGoldFromJson(std::span<const Json> rows) {
  std::vector<NevIRInstance> out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RequireObject(rows[i], i);
    NevIRInstance instance;
    instance.pair_id = RequiredString(rows[i], i, {"pair_id", "id"});
    instance.query_1 = RequiredString(rows[i], i, {"query_1", "q1"});
    instance.query_2 = RequiredString(rows[i], i, {"query_2", "q2"});
    instance.doc_1 = RequiredString(rows[i], i, {"doc_1", "doc1"});
    instance.doc_2 = RequiredString(rows[i], i, {"doc_2", "doc2"});
    if (!seen.insert(instance.pair_id).second) {
      throw Error(ErrorCode::kMalformedInput,
                  RowContext(i) + ": duplicate pair id " + instance.pair_id);
    }
    out.push_back(std::move(instance));
  }
  return out;
}

std::string NevIRQueryId(const std::string& pair_id, int query) {
  return pair_id + "/q" + std::to_string(query);
}

std::string NormalizeLabel(std::string_view text) {
  std::string kept;
  for (char c : ToLower(text)) {
    if (!IsStripped(c)) kept.push_back(c);
  }
  std::string out = CollapseSpaces(kept);
  while (!out.empty() && std::string_view(".,;:!?").find(out.back()) !=
                             std::string_view::npos) {
    out.pop_back();
  }
  out = Trim(out);
  for (char& c : out) {
    if (c == ' ' || c == '-') c = '_';
  }
  return out;
}

std::string NormalizeAnswer(std::string_view text) {
  // Curly apostrophes fold to ASCII before punctuation is dropped.
  std::string folded = ReplaceAll(ToLower(text), "\xE2\x80\x99", "'");
  std::string kept;
  for (char c : folded) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '\'') continue;
    kept.push_back(std::isalnum(u) || std::isspace(u) || u >= 0x80 ? c : ' ');
  }
  std::string out = CollapseSpaces(kept);
  static const std::set<std::string> kDontKnow = {
      "dont know", "do not know", "i dont know", "i do not know", "unknown",
      "idk"};
  if (kDontKnow.count(out)) return "don't know";
  return out;
}

int ParseDocChoice(std::string_view text) {
  std::string compact;
  for (char c : ToLower(text)) {
    if (std::isalnum(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact == "1") return 1;
  if (compact == "2") return 2;
  const bool one = compact.find("doc1") != std::string::npos ||
                   compact.find("document1") != std::string::npos;
  const bool two = compact.find("doc2") != std::string::npos ||
                   compact.find("document2") != std::string::npos;
  if (one == two) return 0;
  return one ? 1 : 2;
}

std::string_view CueCategoryName(CueCategory category) {
  switch (category) {
    case CueCategory::kVerbal: return "VERBAL";
    case CueCategory::kAffixal: return "AFFIXAL";
    case CueCategory::kImplicit: return "IMPLICIT";
    case CueCategory::kDiminisher: return "DIMINISHER";
    case CueCategory::kOther: return "OTHER";
  }
  return "OTHER";
}

CueCategory CategorizeNegationCue(std::string_view cue) {
  static const std::set<std::string> kVerbal = {
      "not", "n't", "never", "no", "none", "nothing", "nobody", "nowhere",
      "neither", "nor", "cannot", "noone", "no one", "nope"};
  static const std::set<std::string> kImplicit = {
      "lack", "lacks", "lacked", "lacking", "without", "prevent", "prevents",
      "prevented", "fail", "fails", "failed", "failure", "absent", "absence",
      "refuse", "refused", "refuses", "deny", "denied", "denies", "avoid",
      "avoided", "avoids", "neglect", "neglected", "instead", "rather than",
      "exclude", "excluded", "excluding", "except", "unable", "stop",
      "stopped", "cease", "ceased", "reject", "rejected", "omit", "omitted"};
  static const std::set<std::string> kDiminisher = {
      "rarely", "barely", "hardly", "few", "little", "seldom", "scarcely",
      "less", "least", "fewer", "minimal", "minimally", "slightly"};
  static const std::array<std::string_view, 10> kPrefixes = {
      "non", "un", "in", "im", "il", "ir", "dis", "anti", "mis", "a"};
  static const std::array<std::string_view, 3> kSuffixes = {"lessness", "lessly",
                                                            "less"};
  std::string word = ReplaceAll(CollapseSpaces(ToLower(cue)), "\xE2\x80\x99", "'");
  while (!word.empty() && !std::isalpha(static_cast<unsigned char>(word.back()))) {
    word.pop_back();
  }
  while (!word.empty() && !std::isalpha(static_cast<unsigned char>(word.front())) &&
         word.front() != '\'') {
    word.erase(word.begin());
  }
  if (word.empty()) return CueCategory::kOther;
  if (kVerbal.count(word) || EndsWith(word, "n't")) return CueCategory::kVerbal;
  if (kImplicit.count(word)) return CueCategory::kImplicit;
  if (kDiminisher.count(word)) return CueCategory::kDiminisher;
  if (word.find(' ') != std::string::npos) return CueCategory::kOther;
  constexpr std::size_t kMinStem = 3;
  for (std::string_view prefix : kPrefixes) {
    // A bare "a-" needs a longer stem to avoid matching ordinary words.
    const std::size_t min_stem = prefix == "a" ? 5 : kMinStem;
    if (StartsWith(word, prefix) && word.size() >= prefix.size() + min_stem) {
      return CueCategory::kAffixal;
    }
  }
  for (std::string_view suffix : kSuffixes) {
    if (EndsWith(word, suffix) && word.size() >= suffix.size() + kMinStem) {
      return CueCategory::kAffixal;
    }
  }
  return CueCategory::kOther;
}

double ExactBinomialTwoSided(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) return 1.0;
  if (k > n) return 0.0;
  long double tail = 0.0L;
  if (n <= 16000) {
    // term_i = C(n, i) / 2^n, built by the ratio recurrence from i = 0.
    long double term = std::ldexp(1.0L, -static_cast<int>(n));
    for (std::size_t i = 0; i < n + 1; ++i) {
      if (i >= k) tail += term;
      term = term * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    }
  } else {
    const long double log_half = std::log(0.5L) * static_cast<long double>(n);
    for (std::size_t i = k; i <= n; ++i) {
      tail += std::exp(std::lgamma(static_cast<long double>(n) + 1) -
                       std::lgamma(static_cast<long double>(i) + 1) -
                       std::lgamma(static_cast<long double>(n - i) + 1) + log_half);
    }
  }
  return static_cast<double>(std::min(1.0L, 2.0L * tail));
}

double ChiSquare1Tail(double statistic) {
  if (statistic <= 0.0) return 1.0;
  return std::erfc(std::sqrt(statistic / 2.0));
}

Json McNemarResult::ToJson() const {
  Json out;
  out["b"] = b;
  out["c"] = c;
  out["statistic"] = statistic;
  out["p_value"] = p_value;
  out["method"] = exact ? "exact_binomial" : "chi_square_cc";
  out["exact_p_value"] = exact_p_value;
  out["chi_square_p_value"] = chi_square_p_value;
  return out;
}

McNemarResult McNemarFromCounts(std::size_t b, std::size_t c) {
  McNemarResult result;
  result.b = b;
  result.c = c;
  const std::size_t n = b + c;
  if (n == 0) return result;
  const double diff = std::fabs(static_cast<double>(b) - static_cast<double>(c)) - 1.0;
  const double chi = diff * diff / static_cast<double>(n);
  result.exact_p_value = ExactBinomialTwoSided(n, std::max(b, c));
  result.chi_square_p_value = ChiSquare1Tail(chi);
  result.exact = n < 25;
  result.statistic = chi;
  result.p_value = result.exact ? result.exact_p_value : result.chi_square_p_value;
  return result;
}

McNemarResult McNemar(const std::map<std::string, bool>& correct_a,
                      const std::map<std::string, bool>& correct_b) {
  std::size_t only_a = 0, only_b = 0;
  for (const auto& [id, _] : correct_a) {
    if (!correct_b.count(id)) ++only_a;
  }
  for (const auto& [id, _] : correct_b) {
    if (!correct_a.count(id)) ++only_b;
  }
  if (only_a != 0 || only_b != 0) {
    throw Error(ErrorCode::kCoverageError,
                "prediction sets cover different ids: " + std::to_string(only_a) +
                    " only in A, " + std::to_string(only_b) + " only in B");
  }
  std::size_t b = 0, c = 0;
  for (const auto& [id, a_right] : correct_a) {
    const bool b_right = correct_b.at(id);
    if (a_right && !b_right) ++b;
    if (!a_right && b_right) ++c;
  }
  return McNemarFromCounts(b, c);
}

const Metric& EvalReport::Get(std::string_view name) const {
  for (const auto& metric : headline) {
    if (metric.name == name) return metric;
  }
  throw Error(ErrorCode::kValidationError,
              "report has no metric '" + std::string(name) + "'");
}

bool EvalReport::Has(std::string_view name) const {
  return std::any_of(headline.begin(), headline.end(),
                     [&](const Metric& m) { return m.name == name; });
}

Json EvalReport::ToJson() const {
  auto metric_json = [](const Metric& metric) {
    Json out;
    out["value"] = metric.value;
    out["numerator"] = metric.numerator;
    out["denominator"] = metric.denominator;
    return out;
  };
  Json out;
  out["task"] = task;
  out["n"] = n;
  Json head = Json::object();
  for (const auto& metric : headline) head[metric.name] = metric_json(metric);
  out["metrics"] = std::move(head);
  Json parts = Json::object();
  for (const auto& breakdown : breakdowns) {
    Json rows = Json::object();
    for (const auto& metric : breakdown.rows) rows[metric.name] = metric_json(metric);
    parts[breakdown.name] = std::move(rows);
  }
  out["breakdowns"] = std::move(parts);
  out["counts"] = counts;
  if (!delta_percent.empty()) {
    Json deltas = Json::object();
    for (const auto& [name, value] : delta_percent) {
      deltas[name] = value ? Json(*value) : Json(nullptr);
    }
    out["delta_percent"] = std::move(deltas);
  }
  if (significance) out["mcnemar"] = significance->ToJson();
  return out;
}

std::string EvalReport::ToTable() const {
  std::ostringstream out;
  out << "task " << task << "  n=" << n << '\n';
  char line[160];
  const bool deltas = !delta_percent.empty();
  std::snprintf(line, sizeof(line), "%-28s %10s %12s%s\n", "metric", "value",
                "count", deltas ? "      delta%" : "");
  out << line;
  for (const auto& metric : headline) {
    const std::string count =
        std::to_string(metric.numerator) + "/" + std::to_string(metric.denominator);
    std::string delta;
    if (deltas) {
      auto it = delta_percent.find(metric.name);
      delta = (it == delta_percent.end() || !it->second)
                  ? "         n/a"
                  : [&] {
                      char buffer[32];
                      std::snprintf(buffer, sizeof(buffer), " %+11.2f", *it->second);
                      return std::string(buffer);
                    }();
    }
    std::snprintf(line, sizeof(line), "%-28s %10s %12s%s\n", metric.name.c_str(),
                  FormatNumber(metric.value).c_str(), count.c_str(), delta.c_str());
    out << line;
  }
  for (const auto& breakdown : breakdowns) {
    out << '\n' << breakdown.name << '\n';
    for (const auto& metric : breakdown.rows) {
      const std::string count =
          std::to_string(metric.numerator) + "/" + std::to_string(metric.denominator);
      std::snprintf(line, sizeof(line), "  %-26s %10s %12s\n", metric.name.c_str(),
                    FormatNumber(metric.value).c_str(), count.c_str());
      out << line;
    }
  }
  if (!counts.empty()) {
    out << '\n';
    for (const auto& [name, value] : counts) out << name << ' ' << value << '\n';
  }
  if (significance) {
    std::snprintf(line, sizeof(line),
                  "\nmcnemar b=%zu c=%zu statistic=%.4f p=%.6g (%s)\n",
                  significance->b, significance->c, significance->statistic,
                  significance->p_value,
                  significance->exact ? "exact binomial" : "chi-square");
    out << line;
  }
  return out.str();
}

void CompareWithBaseline(EvalReport& report, const EvalReport& baseline) {
  report.delta_percent.clear();
  for (const auto& metric : report.headline) {
    if (!baseline.Has(metric.name)) continue;
    const double base = baseline.Get(metric.name).value;
    report.delta_percent[metric.name] =
        base == 0.0 ? std::nullopt
                    : std::optional<double>(100.0 * (metric.value - base) / base);
  }
  report.significance = McNemar(report.correct, baseline.correct);
}

EvalReport ScoreClassification(std::span<const PredictionRecord> predictions,
                               std::span<const ClassificationInstance> gold,
                               std::span<const std::string> label_set,
                               std::string task) {
  if (gold.empty()) throw Error(ErrorCode::kEmptyInput, "gold set is empty");
  std::unordered_set<std::string> known;
  for (const auto& instance : gold) known.insert(instance.instance_id);
  const auto index = IndexPredictions(predictions, known);
  std::set<std::string> labels;
  for (const auto& label : label_set) labels.insert(NormalizeLabel(label));

  EvalReport report;
  report.task = std::move(task);
  report.n = gold.size();
  report.counts["invalid_output"] = 0;
  report.counts["missing"] = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_gold;
  std::map<std::string, std::optional<std::string>> cues;
  std::size_t right = 0;
  for (const auto& instance : gold) {
    const std::string expected = NormalizeLabel(instance.gold);
    bool ok = false;
    auto it = index.find(instance.instance_id);
    if (it == index.end()) {
      ++report.counts["missing"];
    } else {
      const std::string predicted = NormalizeLabel(it->second->prediction);
      if (!labels.empty() && !labels.count(predicted)) {
        ++report.counts["invalid_output"];
      } else {
        ok = predicted == expected;
      }
    }
    report.correct[instance.instance_id] = ok;
    cues[instance.instance_id] = instance.cue;
    auto& [label_right, label_total] = per_gold[expected];
    ++label_total;
    if (ok) {
      ++right;
      ++label_right;
    }
  }
  report.headline.push_back(MakeMetric("accuracy", right, gold.size()));
  Breakdown by_label{"gold_label", {}};
  for (const auto& [label, counts] : per_gold) {
    by_label.rows.push_back(MakeMetric(label, counts.first, counts.second));
  }
  report.breakdowns.push_back(std::move(by_label));
  AddCueBreakdown(report, cues, report.correct);
  return report;
}

EvalReport ScoreCondaQA(std::span<const PredictionRecord> predictions,
                        std::span<const CondaQAInstance> gold) {
  if (gold.empty()) throw Error(ErrorCode::kEmptyInput, "gold set is empty");
  std::unordered_set<std::string> known;
  for (const auto& instance : gold) known.insert(instance.instance_id);
  const auto index = IndexPredictions(predictions, known);

  EvalReport report;
  report.task = "condaqa";
  report.n = gold.size();
  report.counts["missing"] = 0;
  report.counts["empty_prediction"] = 0;

  struct GroupState {
    std::array<bool, 4> present{};
    std::array<bool, 4> all_right{true, true, true, true};
  };
  std::map<std::pair<std::string, std::string>, GroupState> groups;
  std::map<std::string, std::optional<std::string>> cues;
  std::array<std::pair<std::size_t, std::size_t>, 4> per_edit{};
  std::size_t right = 0;
  for (const auto& instance : gold) {
    bool ok = false;
    auto it = index.find(instance.instance_id);
    if (it == index.end()) {
      ++report.counts["missing"];
    } else {
      const std::string predicted = NormalizeAnswer(it->second->prediction);
      if (predicted.empty()) ++report.counts["empty_prediction"];
      ok = !predicted.empty() && predicted == NormalizeAnswer(instance.gold_answer);
    }
    report.correct[instance.instance_id] = ok;
    cues[instance.instance_id] = instance.cue;
    const auto edit = static_cast<std::size_t>(instance.edit_type);
    GroupState& group = groups[{instance.question_id, instance.bundle_id}];
    group.present[edit] = true;
    group.all_right[edit] = group.all_right[edit] && ok;
    ++per_edit[edit].second;
    if (ok) {
      ++right;
      ++per_edit[edit].first;
    }
  }
  report.headline.push_back(MakeMetric("accuracy", right, gold.size()));

  const auto original = static_cast<std::size_t>(EditType::kOriginal);
  std::size_t all_right = 0, all_total = 0;
  std::array<std::size_t, 4> pair_right{}, pair_total{};
  for (const auto& [key, group] : groups) {
    if (std::all_of(group.present.begin(), group.present.end(),
                    [](bool p) { return p; })) {
      ++all_total;
      if (std::all_of(group.all_right.begin(), group.all_right.end(),
                      [](bool r) { return r; })) {
        ++all_right;
      }
    }
    for (std::size_t edit = 1; edit < 4; ++edit) {
      if (group.present[original] && group.present[edit]) {
        ++pair_total[edit];
        if (group.all_right[original] && group.all_right[edit]) ++pair_right[edit];
      }
    }
  }
  report.counts["groups"] = groups.size();
  report.counts["groups_complete"] = all_total;
  if (all_total > 0) {
    report.headline.push_back(MakeMetric("consistency_all", all_right, all_total));
  }
  const std::array<const char*, 4> kNames = {"", "consistency_paraphrase",
                                             "consistency_scope",
                                             "consistency_affirmative"};
  for (std::size_t edit = 1; edit < 4; ++edit) {
    if (pair_total[edit] > 0) {
      report.headline.push_back(
          MakeMetric(kNames[edit], pair_right[edit], pair_total[edit]));
    }
  }
  Breakdown by_edit{"edit_type", {}};
  for (std::size_t edit = 0; edit < 4; ++edit) {
    if (per_edit[edit].second == 0) continue;
    by_edit.rows.push_back(
        MakeMetric(std::string(EditTypeName(static_cast<EditType>(edit))),
                   per_edit[edit].first, per_edit[edit].second));
  }
  report.breakdowns.push_back(std::move(by_edit));
  AddCueBreakdown(report, cues, report.correct);
  return report;
}

EvalReport ScoreNevIR(std::span<const PredictionRecord> predictions,
                      std::span<const NevIRInstance> gold) {
  if (gold.empty()) throw Error(ErrorCode::kEmptyInput, "gold set is empty");
  std::unordered_set<std::string> known;
  for (const auto& pair : gold) {
    known.insert(NevIRQueryId(pair.pair_id, 1));
    known.insert(NevIRQueryId(pair.pair_id, 2));
  }
  const auto index = IndexPredictions(predictions, known);

  EvalReport report;
  report.task = "nevir";
  report.n = gold.size();
  report.counts["missing"] = 0;
  report.counts["invalid_output"] = 0;
  std::size_t pairs_right = 0;
  std::array<std::size_t, 3> query_right{};
  for (const auto& pair : gold) {
    bool both = true;
    for (int query = 1; query <= 2; ++query) {
      bool ok = false;
      auto it = index.find(NevIRQueryId(pair.pair_id, query));
      if (it == index.end()) {
        ++report.counts["missing"];
      } else {
        const int choice = ParseDocChoice(it->second->prediction);
        if (choice == 0) ++report.counts["invalid_output"];
        ok = choice == query;
      }
      if (ok) ++query_right[static_cast<std::size_t>(query)];
      both = both && ok;
    }
    report.correct[pair.pair_id] = both;
    if (both) ++pairs_right;
  }
  report.headline.push_back(MakeMetric("pairwise_accuracy", pairs_right, gold.size()));
  report.headline.push_back(MakeMetric("query1_accuracy", query_right[1], gold.size()));
  report.headline.push_back(MakeMetric("query2_accuracy", query_right[2], gold.size()));
  return report;
}

std::vector<InferenceItem> ClassificationItems(
    std::span<const ClassificationInstance> gold) {
  std::vector<InferenceItem> items;
  for (const auto& instance : gold) {
    InferenceItem item{instance.instance_id, {}};
    for (const auto& [key, value] : instance.fields.items()) {
      if (value.is_string()) {
        item.bindings[key] = value.get<std::string>();
      } else if (value.is_array()) {
        // Choice lists render one per line.
        std::string joined;
        for (const auto& entry : value) {
          if (!joined.empty()) joined.push_back('\n');
          joined += entry.is_string() ? entry.get<std::string>() : entry.dump();
        }
        item.bindings[key] = joined;
      } else {
        item.bindings[key] = value.dump();
      }
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<InferenceItem> CondaQAItems(std::span<const CondaQAInstance> gold) {
  std::vector<InferenceItem> items;
  for (const auto& instance : gold) {
    InferenceItem item{instance.instance_id, {}};
    for (const auto& [key, value] : instance.fields.items()) {
      item.bindings[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<InferenceItem> NevIRItems(std::span<const NevIRInstance> gold) {
  std::vector<InferenceItem> items;
  for (const auto& pair : gold) {
    for (int query = 1; query <= 2; ++query) {
      items.push_back(InferenceItem{
          NevIRQueryId(pair.pair_id, query),
          {{"query", query == 1 ? pair.query_1 : pair.query_2},
           {"doc1", pair.doc_1},
           {"doc2", pair.doc_2}}});
    }
  }
  return items;
}

PredictionParser ClassificationParser(std::vector<std::string> label_set) {
  std::set<std::string> labels;
  for (const auto& label : label_set) labels.insert(NormalizeLabel(label));
  return [labels](std::string_view raw) -> std::string {
    if (auto inner = Bracketed(raw)) {
      const std::string label = NormalizeLabel(*inner);
      if (labels.count(label)) return label;
    }
    const std::string whole = NormalizeLabel(raw);
    return labels.count(whole) ? whole : std::string();
  };
}

PredictionParser CondaQAParser() {
  return [](std::string_view raw) -> std::string {
    if (auto inner = Bracketed(raw)) return NormalizeAnswer(*inner);
    const auto newline = raw.find('\n');
    return NormalizeAnswer(raw.substr(0, newline));
  };
}

PredictionParser NevIRParser() {
  return [](std::string_view raw) -> std::string {
    switch (ParseDocChoice(Bracketed(raw).value_or(std::string(raw)))) {
      case 1: return "Doc1";
      case 2: return "Doc2";
      default: return "";
    }
  };
}

InferenceStats RunInference(std::span<const InferenceItem> items,
                            LlmClient& client, const PromptAsset& prompt,
                            const PredictionParser& parser,
                            const std::filesystem::path& output,
                            const InferenceOptions& options) {
  std::unordered_set<std::string> done;
  if (std::filesystem::exists(output)) {
    std::string text = ReadFile(output);
    // A torn final line from an interrupted write is dropped.
    const auto last = text.rfind('\n');
    const std::string complete = last == std::string::npos ? "" : text.substr(0, last + 1);
    if (complete.size() != text.size()) WriteFile(output, complete);
    std::istringstream lines(complete);
    std::string line;
    while (std::getline(lines, line)) {
      if (Trim(line).empty()) continue;
      const Json row = Json::parse(line);
      if (row.contains("instance_id")) done.insert(row["instance_id"].get<std::string>());
    }
  } else {
    WriteFile(output, "");
  }

  InferenceStats stats;
  std::vector<const InferenceItem*> pending;
  for (const auto& item : items) {
    if (done.count(item.instance_id)) {
      ++stats.skipped;
    } else {
      pending.push_back(&item);
    }
  }
  const std::size_t batch = std::max<std::size_t>(1, options.batch_size);
  for (std::size_t start = 0; start < pending.size(); start += batch) {
    const std::size_t end = std::min(pending.size(), start + batch);
    std::vector<std::optional<ChatResponse>> responses(end - start);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    ParallelFor(end - start, client.options().max_in_flight, [&](std::size_t i) {
      std::map<std::string, std::string> bindings = options.shared_bindings;
      for (const auto& [key, value] : pending[start + i]->bindings) {
        bindings[key] = value;
      }
      try {
        responses[i] = client.Complete(RenderTemplate(prompt, bindings, options.request));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
    std::string rows;
    for (std::size_t i = 0; i < responses.size(); ++i) {
      if (!responses[i]) continue;
      PredictionRecord record{pending[start + i]->instance_id,
                              parser(responses[i]->content), responses[i]->content};
      rows += PredictionToJson(record).dump();
      rows.push_back('\n');
      ++stats.completed;
    }
    std::ofstream out(output, std::ios::app | std::ios::binary);
    out << rows;
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "cannot append to " + output.string());
    if (failure) std::rethrow_exception(failure);
  }
  return stats;
}

}  // namespace negkit
