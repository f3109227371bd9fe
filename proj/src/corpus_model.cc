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

#include <unordered_set>
#include <utility>

#include "negkit/error.h"

namespace negkit {
namespace {

struct RelationInfo {
  Relation relation;
  std::string_view code;
  std::string_view verbalization;
};

constexpr std::array<RelationInfo, 9> kRelationTable = {{
    {Relation::kOEffect, "oEffect", "the effect of {object} is"},
    {Relation::kOReact, "oReact", "the reaction of {object} is"},
    {Relation::kOWant, "oWant", "{object} want"},
    {Relation::kXAttr, "xAttr", "the attribute of PersonX is"},
    {Relation::kXEffect, "xEffect", "the effect of PersonX is"},
    {Relation::kXIntent, "xIntent", "the intention of PersonX is"},
    {Relation::kXNeed, "xNeed", "PersonX needs"},
    {Relation::kXReact, "xReact", "the reaction of PersonX is"},
    {Relation::kXWant, "xWant", "PersonX wants"},
}};

const RelationInfo& Info(Relation relation) {
  return kRelationTable[static_cast<std::size_t>(relation)];
}

// A parsed delimited record and the 1-based line it starts on.
struct DelimitedRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

// RFC 4180 style reader: quoted cells may contain delimiters, doubled quotes
// and newlines.
std::vector<DelimitedRow> ParseDelimited(std::string_view text,
                                         char delimiter,
                                         const std::string& path) {
  std::vector<DelimitedRow> rows;
  DelimitedRow row;
  std::string cell;
  bool in_quotes = false;
  bool row_has_content = false;
  std::size_t line = 1;
  row.line = 1;
  auto finish_cell = [&] {
    row.cells.push_back(std::move(cell));
    cell.clear();
  };
  auto finish_row = [&] {
    finish_cell();
    if (row_has_content) rows.push_back(std::move(row));
    row = DelimitedRow{};
    row.line = line;
    row_has_content = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      row_has_content = true;
    } else if (c == delimiter) {
      row_has_content = true;
      finish_cell();
    } else if (c == '\n') {
      ++line;
      finish_row();
    } else if (c != '\r') {
      row_has_content = true;
      cell.push_back(c);
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kMalformedInput,
                path + ": row starting at line " + std::to_string(row.line) +
                    ": unterminated quoted cell");
  }
  if (row_has_content || !cell.empty()) finish_row();
  return rows;
}

bool LooksLikeJsonl(const std::filesystem::path& path,
                    std::string_view contents) {
  if (path.extension() == ".jsonl" || path.extension() == ".json") return true;
  for (char c : contents) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    return c == '{';
  }
  return false;
}

char DelimiterFor(const std::filesystem::path& path) {
  return path.extension() == ".tsv" ? '\t' : ',';
}

// Maps a release split tag onto the requested split; nullopt means the row
// belongs to neither (e.g. dev).
std::optional<Split> SplitFromTag(std::string_view tag) {
  std::string lowered = ToLower(Trim(tag));
  if (lowered == "trn" || lowered == "train") return Split::kTrain;
  if (lowered == "tst" || lowered == "test") return Split::kTest;
  return std::nullopt;
}

std::string RowError(const std::string& path, std::size_t row,
                     const std::string& what) {
  return path + ": row " + std::to_string(row) + ": " + what;
}

// Parses an ATOMIC list cell such as ["to eat food", "none"]. An empty cell
// is an empty list; a bare string is a single tail.
std::vector<std::string> ParseListCell(const std::string& cell,
                                       const std::string& path,
                                       std::size_t row) {
  std::string trimmed = Trim(cell);
  if (trimmed.empty()) return {};
  if (trimmed.front() != '[') return {trimmed};
  Json parsed;
  try {
    parsed = Json::parse(trimmed);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorCode::kMalformedInput,
                RowError(path, row, "list cell is not a JSON array"));
  }
  if (!parsed.is_array()) {
    throw Error(ErrorCode::kMalformedInput,
                RowError(path, row, "list cell is not a JSON array"));
  }
  std::vector<std::string> out;
  for (const auto& item : parsed) {
    if (!item.is_string()) {
      throw Error(ErrorCode::kMalformedInput,
                  RowError(path, row, "list cell holds a non-string item"));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool IsNoneTail(std::string_view tail) { return ToLower(Trim(tail)) == "none"; }

class TripleCollector {
 public:
  explicit TripleCollector(LoadReport& report) : report_(report) {}

  void Add(Triple triple) {
    ++report_.raw_triples;
    if (seen_.insert(triple.id).second) triples_.push_back(std::move(triple));
  }

  LoadResult Finish() {
    report_.deduped_triples = triples_.size();
    return LoadResult{std::move(triples_), report_};
  }

 private:
  LoadReport& report_;
  std::unordered_set<TripleId> seen_;
  std::vector<Triple> triples_;
};

bool IsLogicalNegation(std::string_view tag) {
  std::string lowered = ToLower(Trim(tag));
  return lowered.empty() || lowered == "logical" || lowered == "logical_neg" ||
         lowered == "logical negation" || lowered == "logical_negation";
}

// Shared reader for the wide ATOMIC layout: an event column, one list-valued
// column per relation, and optional bookkeeping columns.
LoadResult LoadWideLayout(const std::vector<DelimitedRow>& rows, Source source,
                          Split split, const std::string& path) {
  LoadReport report;
  TripleCollector collector(report);
  if (rows.empty()) return collector.Finish();
  const auto& header = rows.front().cells;
  std::optional<std::size_t> event_col, split_col, negation_col;
  std::vector<std::pair<std::size_t, Relation>> relation_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string name = Trim(header[c]);
    if (name == "event" || name == "head") {
      event_col = c;
    } else if (name == "split") {
      split_col = c;
    } else if (name == "negation_type") {
      negation_col = c;
    } else if (name == "prefix" || name == "annotation" || name.empty()) {
      // Auxiliary release columns carry nothing the toolkit uses.
    } else if (auto relation = ParseRelation(name)) {
      relation_cols.emplace_back(c, *relation);
    } else {
      throw Error(ErrorCode::kUnknownRelation,
                  path + ": unknown relation column '" + name + "'");
    }
  }
  if (!event_col) {
    throw Error(ErrorCode::kMalformedInput,
                path + ": header has no event column");
  }
  const Polarity head_polarity =
      source == Source::kAnion ? Polarity::kNegated : Polarity::kAffirmative;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t row_number = r + 1;
    if (row.cells.size() != header.size()) {
      throw Error(ErrorCode::kMalformedInput,
                  RowError(path, row_number,
                           "expected " + std::to_string(header.size()) +
                               " columns, found " +
                               std::to_string(row.cells.size())));
    }
    ++report.rows;
    if (split_col) {
      auto tagged = SplitFromTag(row.cells[*split_col]);
      if (!tagged || *tagged != split) {
        ++report.skipped_other_split;
        continue;
      }
    }
    if (negation_col && !IsLogicalNegation(row.cells[*negation_col])) {
      ++report.skipped_other_negation;
      continue;
    }
    std::string event = Trim(row.cells[*event_col]);
    if (event.empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  RowError(path, row_number, "empty event"));
    }
    for (const auto& [col, relation] : relation_cols) {
      for (const auto& tail : ParseListCell(row.cells[col], path, row_number)) {
        if (Trim(tail).empty()) continue;
        if (IsNoneTail(tail)) {
          ++report.skipped_none_tails;
          continue;
        }
        collector.Add(MakeTriple(source, split,
                                 EventText::Make(event, head_polarity),
                                 relation,
                                 EventText::Make(tail, Polarity::kAffirmative)));
      }
    }
  }
  return collector.Finish();
}

bool IsCanonicalRow(const Json& row) {
  return row.is_object() && row.contains("id") && row.contains("variant");
}

LoadResult LoadCanonical(const std::vector<Json>& rows, Split split) {
  LoadReport report;
  TripleCollector collector(report);
  for (const auto& row : rows) {
    ++report.rows;
    Triple triple = TripleFromJson(row);
    if (triple.split != split) {
      ++report.skipped_other_split;
      continue;
    }
    collector.Add(std::move(triple));
  }
  return collector.Finish();
}

std::string StringField(const Json& row, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = row.find(key);
    if (it != row.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

// One ANION record: head, relation, tail plus optional negation/split tags.
struct AnionRecord {
  std::string head;
  std::string relation;
  std::string tail;
  std::string negation_type;
  std::string split;
};

LoadResult LoadAnionRecords(const std::vector<AnionRecord>& records,
                            Split split, const std::string& path) {
  LoadReport report;
  TripleCollector collector(report);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    const std::size_t index = i + 1;
    ++report.rows;
    if (Trim(record.head).empty() || Trim(record.relation).empty() ||
        Trim(record.tail).empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  path + ": record " + std::to_string(index) +
                      ": missing head, relation or tail");
    }
    if (!record.split.empty()) {
      auto tagged = SplitFromTag(record.split);
      if (!tagged || *tagged != split) {
        ++report.skipped_other_split;
        continue;
      }
    }
    if (!IsLogicalNegation(record.negation_type)) {
      ++report.skipped_other_negation;
      continue;
    }
    auto relation = ParseRelation(Trim(record.relation));
    if (!relation) {
      throw Error(ErrorCode::kUnknownRelation,
                  path + ": record " + std::to_string(index) +
                      ": unknown relation '" + record.relation + "'");
    }
    if (IsNoneTail(record.tail)) {
      ++report.skipped_none_tails;
      continue;
    }
    collector.Add(MakeTriple(
        Source::kAnion, split, EventText::Make(record.head, Polarity::kNegated),
        *relation, EventText::Make(record.tail, Polarity::kAffirmative)));
  }
  return collector.Finish();
}

}  // namespace

std::string_view RelationCode(Relation relation) { return Info(relation).code; }

std::optional<Relation> ParseRelation(std::string_view code) {
  for (const auto& info : kRelationTable) {
    if (info.code == code) return info.relation;
  }
  return std::nullopt;
}

std::string_view RelationTemplate(Relation relation) {
  return Info(relation).verbalization;
}

bool RelationTakesObject(Relation relation) {
  return relation == Relation::kOEffect || relation == Relation::kOReact ||
         relation == Relation::kOWant;
}

EventText EventText::Make(std::string_view text, Polarity polarity) {
  std::string trimmed = Trim(text);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kMalformedInput, "event text is empty");
  }
  return EventText{std::move(trimmed), polarity};
}

bool EventText::contains_blank() const {
  return text.find("___") != std::string::npos;
}

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kAtomic: return "ATOMIC";
    case Source::kAnion: return "ANION";
    case Source::kGenerated: return "GENERATED";
  }
  return "";
}

std::string_view VariantName(Variant variant) {
  switch (variant) {
    case Variant::kOrig: return "ORIG";
    case Variant::kNegIf: return "NEG_IF";
    case Variant::kNegThen: return "NEG_THEN";
    case Variant::kNegBoth: return "NEG_BOTH";
  }
  return "";
}

std::string_view SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

std::optional<Source> ParseSource(std::string_view name) {
  for (Source s : {Source::kAtomic, Source::kAnion, Source::kGenerated}) {
    if (SourceName(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<Variant> ParseVariant(std::string_view name) {
  for (Variant v : {Variant::kOrig, Variant::kNegIf, Variant::kNegThen,
                    Variant::kNegBoth}) {
    if (VariantName(v) == name) return v;
  }
  return std::nullopt;
}

std::optional<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

TripleId MakeTripleId(Source source, Split split, Relation relation,
                      std::string_view head, std::string_view tail,
                      Variant variant) {
  std::string key;
  key += SourceName(source);
  key += '\x1f';
  key += SplitName(split);
  key += '\x1f';
  key += RelationCode(relation);
  key += '\x1f';
  key += head;
  key += '\x1f';
  key += tail;
  key += '\x1f';
  key += VariantName(variant);
  return Sha256Hex(key).substr(0, 16);
}

Triple MakeTriple(Source source, Split split, EventText head,
                  Relation relation, EventText tail, Variant variant,
                  std::optional<TripleId> parent_id) {
  Triple triple;
  triple.id = MakeTripleId(source, split, relation, head.text, tail.text,
                           variant);
  triple.source = source;
  triple.head = std::move(head);
  triple.relation = relation;
  triple.tail = std::move(tail);
  triple.variant = variant;
  triple.parent_id = std::move(parent_id);
  triple.split = split;
  return triple;
}

std::string_view LabelName(ValidityLabel label) {
  switch (label) {
    case ValidityLabel::kValid: return "Valid";
    case ValidityLabel::kInvalid: return "Invalid";
    case ValidityLabel::kAmbiguous: return "Ambiguous";
  }
  return "";
}

std::optional<ValidityLabel> ParseLabel(std::string_view name) {
  std::string lowered = ToLower(name);
  if (lowered == "valid") return ValidityLabel::kValid;
  if (lowered == "invalid") return ValidityLabel::kInvalid;
  if (lowered == "ambiguous") return ValidityLabel::kAmbiguous;
  return std::nullopt;
}

std::string LabelSource::ToString() const {
  switch (kind) {
    case Kind::kJudge: return "judge:" + detail;
    case Kind::kAnnotator: return "annotator:" + detail;
    case Kind::kSynthetic: return "synthetic";
    case Kind::kRandom: return "random";
    case Kind::kGold: return "gold";
  }
  return "";
}

LabelSource LabelSource::Parse(std::string_view text) {
  if (text == "synthetic") return Synthetic();
  if (text == "random") return Random();
  if (text == "gold") return Gold();
  if (StartsWith(text, "judge:")) return Judge(std::string(text.substr(6)));
  if (StartsWith(text, "annotator:")) {
    return Annotator(std::string(text.substr(10)));
  }
  throw Error(ErrorCode::kMalformedInput,
              "unknown label source '" + std::string(text) + "'");
}

Json TripleToJson(const Triple& triple) {
  Json row;
  row["id"] = triple.id;
  row["source"] = SourceName(triple.source);
  row["split"] = SplitName(triple.split);
  row["variant"] = VariantName(triple.variant);
  row["parent_id"] =
      triple.parent_id ? Json(*triple.parent_id) : Json(nullptr);
  row["relation"] = RelationCode(triple.relation);
  row["head"] = triple.head.text;
  row["tail"] = triple.tail.text;
  row["head_negated"] = triple.head.negated();
  row["tail_negated"] = triple.tail.negated();
  return row;
}

Triple TripleFromJson(const Json& row) {
  auto field = [&](const char* key) -> const Json& {
    auto it = row.find(key);
    if (it == row.end()) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string("triple record missing '") + key + "'");
    }
    return *it;
  };
  auto text = [&](const char* key) {
    const Json& value = field(key);
    if (!value.is_string()) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string("triple field '") + key + "' is not a string");
    }
    return value.get<std::string>();
  };
  auto flag = [&](const char* key) {
    auto it = row.find(key);
    return it != row.end() && it->is_boolean() && it->get<bool>();
  };
  Triple triple;
  triple.id = text("id");
  auto source = ParseSource(text("source"));
  auto split = ParseSplit(text("split"));
  auto variant = ParseVariant(text("variant"));
  auto relation = ParseRelation(text("relation"));
  if (!source || !split || !variant) {
    throw Error(ErrorCode::kMalformedInput,
                "triple " + triple.id + ": bad source, split or variant");
  }
  if (!relation) {
    throw Error(ErrorCode::kUnknownRelation,
                "triple " + triple.id + ": unknown relation '" +
                    text("relation") + "'");
  }
  triple.source = *source;
  triple.split = *split;
  triple.variant = *variant;
  triple.relation = *relation;
  const Json& parent = field("parent_id");
  if (!parent.is_null()) triple.parent_id = parent.get<std::string>();
  triple.head = EventText::Make(
      text("head"),
      flag("head_negated") ? Polarity::kNegated : Polarity::kAffirmative);
  triple.tail = EventText::Make(
      text("tail"),
      flag("tail_negated") ? Polarity::kNegated : Polarity::kAffirmative);
  if ((triple.variant == Variant::kOrig) == triple.parent_id.has_value()) {
    throw Error(ErrorCode::kMalformedInput,
                "triple " + triple.id +
                    ": parent_id must be set exactly for negated variants");
  }
  return triple;
}

Json LabeledTripleToJson(const LabeledTriple& labeled) {
  Json row = TripleToJson(labeled.triple);
  row["label"] = LabelName(labeled.label);
  row["label_source"] = labeled.label_source.ToString();
  return row;
}

LabeledTriple LabeledTripleFromJson(const Json& row) {
  LabeledTriple labeled;
  labeled.triple = TripleFromJson(row);
  auto label_it = row.find("label");
  std::optional<ValidityLabel> label;
  if (label_it != row.end() && label_it->is_string()) {
    label = ParseLabel(label_it->get<std::string>());
  }
  if (!label) {
    throw Error(ErrorCode::kMalformedInput,
                "triple " + labeled.triple.id + ": missing or bad label");
  }
  labeled.label = *label;
  auto source_it = row.find("label_source");
  labeled.label_source =
      source_it != row.end() && source_it->is_string()
          ? LabelSource::Parse(source_it->get<std::string>())
          : LabelSource::Synthetic();
  return labeled;
}

std::string TriplesToJsonl(std::span<const Triple> triples) {
  std::string out;
  for (const auto& triple : triples) {
    out += TripleToJson(triple).dump();
    out.push_back('\n');
  }
  return out;
}

std::string LabeledToJsonl(std::span<const LabeledTriple> labeled) {
  std::string out;
  for (const auto& item : labeled) {
    out += LabeledTripleToJson(item).dump();
    out.push_back('\n');
  }
  return out;
}

void WriteTriples(const std::filesystem::path& path,
                  std::span<const Triple> triples) {
  WriteFile(path, TriplesToJsonl(triples));
}

void WriteLabeled(const std::filesystem::path& path,
                  std::span<const LabeledTriple> labeled) {
  WriteFile(path, LabeledToJsonl(labeled));
}

std::vector<Triple> ReadTriples(const std::filesystem::path& path) {
  std::vector<Triple> triples;
  for (const auto& row : ReadJsonLines(path)) {
    triples.push_back(TripleFromJson(row));
  }
  return triples;
}

std::vector<LabeledTriple> ReadLabeled(const std::filesystem::path& path) {
  std::vector<LabeledTriple> labeled;
  for (const auto& row : ReadJsonLines(path)) {
    labeled.push_back(LabeledTripleFromJson(row));
  }
  return labeled;
}

LoadResult LoadAtomic(const std::filesystem::path& path, Split split) {
  std::string contents = ReadFile(path);
  if (LooksLikeJsonl(path, contents)) {
    return LoadCanonical(ReadJsonLines(path), split);
  }
  auto rows = ParseDelimited(contents, DelimiterFor(path), path.string());
  return LoadWideLayout(rows, Source::kAtomic, split, path.string());
}

LoadResult LoadAnion(const std::filesystem::path& path, Split split) {
  std::string contents = ReadFile(path);
  if (Trim(contents).empty()) return LoadResult{};
  std::vector<AnionRecord> records;
  if (LooksLikeJsonl(path, contents)) {
    auto rows = ReadJsonLines(path);
    if (!rows.empty() && IsCanonicalRow(rows.front())) {
      return LoadCanonical(rows, split);
    }
    for (const auto& row : rows) {
      records.push_back(AnionRecord{
          StringField(row, {"head", "event"}), StringField(row, {"relation"}),
          StringField(row, {"tail"}), StringField(row, {"negation_type"}),
          StringField(row, {"split"})});
    }
    return LoadAnionRecords(records, split, path.string());
  }
  auto rows = ParseDelimited(contents, DelimiterFor(path), path.string());
  if (rows.empty()) return LoadResult{};
  const auto& header = rows.front().cells;
  std::optional<std::size_t> head_col, relation_col, tail_col, negation_col,
      split_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string name = Trim(header[c]);
    if (name == "head" || name == "event") head_col = c;
    if (name == "relation") relation_col = c;
    if (name == "tail") tail_col = c;
    if (name == "negation_type") negation_col = c;
    if (name == "split") split_col = c;
  }
  if (!relation_col || !tail_col) {
    return LoadWideLayout(rows, Source::kAnion, split, path.string());
  }
  if (!head_col) {
    throw Error(ErrorCode::kMalformedInput,
                path.string() + ": header has no head column");
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r].cells;
    auto cell = [&](std::optional<std::size_t> col) {
      return col && *col < cells.size() ? cells[*col] : std::string();
    };
    records.push_back(AnionRecord{cell(head_col), cell(relation_col),
                                  cell(tail_col), cell(negation_col),
                                  cell(split_col)});
  }
  return LoadAnionRecords(records, split, path.string());
}

FilterResult FilterUnderspecified(std::span<const Triple> triples) {
  FilterResult result;
  for (const auto& triple : triples) {
    if (triple.head.contains_blank() || triple.tail.contains_blank()) {
      ++result.dropped;
    } else {
      result.kept.push_back(triple);
    }
  }
  return result;
}

}  // namespace negkit
