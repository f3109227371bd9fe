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

// negkit: command-line entry point for the negation-augmentation pipeline.
//
// Every subcommand reads one flat configuration file (see --help and the
// README for the key set), applies --set overrides, and writes its artifacts
// plus a manifest.json under <output.dir>/<stage>/. Failures print a single
// JSON line on stderr and exit 1 (usage/config), 2 (data) or 3 (backend).

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "negkit/annotation.h"
#include "negkit/annotation_server.h"
#include "negkit/config.h"
#include "negkit/corpus_builder.h"
#include "negkit/corpus_model.h"
#include "negkit/error.h"
#include "negkit/eval_harness.h"
#include "negkit/judge.h"
#include "negkit/llm_client.h"
#include "negkit/negator.h"
#include "negkit/util.h"
#include "negkit/verbalizer.h"

#ifndef NEGKIT_PROMPT_DIR
#define NEGKIT_PROMPT_DIR "assets/prompts"
#endif

namespace negkit {
namespace {

namespace fs = std::filesystem;

constexpr char kToolVersion[] = "negkit 1.0.0";

// Manifest of one stage: enough to re-derive every artifact exactly.
class Manifest {
 public:
  Manifest(std::string stage, const Config& config)
      : stage_(std::move(stage)), config_(config) {}

  void Input(const std::string& role, const fs::path& path) {
    Json entry;
    entry["role"] = role;
    entry["file"] = path.filename().string();
    entry["sha256"] = Sha256Hex(ReadFile(path));
    inputs_.push_back(std::move(entry));
  }

  void Output(const fs::path& path) {
    Json entry;
    entry["file"] = path.filename().string();
    entry["sha256"] = Sha256Hex(ReadFile(path));
    outputs_.push_back(std::move(entry));
  }

  void Seed(const std::string& key) { seeds_[key] = config_.GetSeed(key); }

  void Write(const fs::path& dir) const {
    Json out;
    out["stage"] = stage_;
    out["tool"] = kToolVersion;
    out["config_sha256"] = config_.Hash();
    out["config"] = config_.values();
    out["seeds"] = seeds_;
    out["inputs"] = inputs_;
    out["outputs"] = outputs_;
    WriteFile(dir / "manifest.json", out.dump(2) + "\n");
  }

 private:
  std::string stage_;
  const Config& config_;
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
  Json seeds_ = Json::object();
};

struct Context {
  Config config;
  fs::path out;

  fs::path StageDir(const std::string& stage) const {
    fs::path dir = out / stage;
    fs::create_directories(dir);
    return dir;
  }

  fs::path PromptDir() const {
    return config.GetPath("prompts.dir").value_or(fs::path(NEGKIT_PROMPT_DIR));
  }

  PromptAsset Prompt(const std::string& file) const {
    const fs::path path = PromptDir() / file;
    if (!fs::exists(path)) {
      throw Error(ErrorCode::kConfigError, "prompt asset not found: " + path.string());
    }
    return LoadPromptAsset(path);
  }

  // Configured path, else `fallback`; throws when neither exists.
  fs::path InputOr(const std::string& key, const fs::path& fallback,
                   const std::string& hint) const {
    fs::path path = config.GetPath(key).value_or(fallback);
    if (!fs::exists(path)) {
      throw Error(ErrorCode::kMalformedInput,
                  "missing input " + path.string() + " (" + hint + ")");
    }
    return path;
  }
};

void WriteTracked(Manifest& manifest, const fs::path& path, const std::string& body) {
  WriteFile(path, body);
  manifest.Output(path);
}

// ---- Mock chat backend ----------------------------------------------------

const std::vector<std::string>& AbsurdTails() {
  static const std::vector<std::string> kTails = {
      "to eat the moon",        "to swim through concrete",
      "to forget how to breathe", "to marry a toaster",
      "to become a cloud",      "to fold the ocean",
      "to sleep inside a teapot", "to paint with thunder",
      "to grow wings overnight", "to sell the sun",
      "to speak only in colors", "to walk on the ceiling",
  };
  return kTails;
}

std::size_t HashIndex(const std::string& text, std::size_t modulo) {
  return static_cast<std::size_t>(std::stoull(Sha256Hex(text).substr(0, 12), nullptr, 16) %
                                  modulo);
}

// Deterministic offline responder. Negation prompts get the rule-based
// rewrite, Invalid-generation prompts get a fixed absurd then-event, and any
// prompt listing bracketed answer options gets one of them by content hash.
ChatResponse MockRespond(const ChatRequest& request) {
  ChatResponse response;
  const std::string& user = request.messages.back().content;
  std::string system;
  for (const auto& message : request.messages) {
    if (message.role == ChatRole::kSystem) system += message.content;
  }
  if (StartsWith(user, "Input: ") && EndsWith(user, "Output:")) {
    const std::string event = Trim(user.substr(7, user.size() - 7 - 7));
    const bool tail = system.find("then event") != std::string::npos;
    try {
      const EventText input = EventText::Make(event, Polarity::kAffirmative);
      response.content = tail ? NegateTail(input).event.text : NegateHead(input).event.text;
    } catch (const Error&) {
      response.content = "";
    }
    return response;
  }
  std::string all = system + "\n" + user;
  if (all.find("Statement: If ") != std::string::npos) {
    response.content = AbsurdTails()[HashIndex(all, AbsurdTails().size())];
    return response;
  }
  std::vector<std::string> options;
  for (std::size_t open = all.find('['); open != std::string::npos;
       open = all.find('[', open + 1)) {
    const auto close = all.find(']', open);
    if (close == std::string::npos || close - open > 40) continue;
    std::string option = all.substr(open, close - open + 1);
    if (std::find(options.begin(), options.end(), option) == options.end()) {
      options.push_back(option);
    }
  }
  if (!options.empty()) response.content = options[HashIndex(all, options.size())];
  return response;
}

// Owns the chat backend and client configured by backend.*.
class Backend {
 public:
  explicit Backend(const Config& config) : config_(config) {
    const std::string mode = config.GetString("backend.mode");
    if (mode == "mock") {
      chat_ = std::make_unique<MockChatBackend>(MockRespond);
    } else if (mode == "http") {
      HttpBackendConfig http;
      http.base_url = config.GetString("backend.base_url");
      if (http.base_url.empty()) {
        throw Error(ErrorCode::kConfigError, "backend.base_url is required in http mode");
      }
      const std::string env = config.GetString("backend.api_key_env");
      if (const char* key = env.empty() ? nullptr : std::getenv(env.c_str())) {
        http.api_key = key;
      }
      http.timeout_seconds = static_cast<int>(config.GetInt("backend.timeout_seconds"));
      chat_ = std::make_unique<HttpChatBackend>(http);
    } else {
      throw Error(ErrorCode::kConfigError,
                  "backend.mode must be mock or http, got '" + mode + "'");
    }
    ClientOptions options;
    options.max_retries = static_cast<int>(config.GetInt("backend.max_retries"));
    options.max_in_flight = static_cast<std::size_t>(
        std::max<std::int64_t>(1, config.GetInt("backend.concurrency")));
    options.cache_path = config.GetPath("backend.cache_path");
    client_ = std::make_unique<LlmClient>(*chat_, options);
  }

  bool mock() const { return config_.GetString("backend.mode") == "mock"; }
  LlmClient& client() { return *client_; }

  RequestOptions Request(bool judge = false) const {
    RequestOptions options;
    options.model_name = config_.GetString("backend.model");
    if (judge && !config_.GetString("backend.judge_model").empty()) {
      options.model_name = config_.GetString("backend.judge_model");
    }
    options.temperature = config_.GetDouble("backend.temperature");
    return options;
  }

  std::unique_ptr<JudgeBackend> Judge(const Context& ctx) {
    if (mock()) return std::make_unique<MockOracleJudge>();
    return std::make_unique<RemoteJudge>(*client_, ctx.Prompt("judge.txt"), Request(true));
  }

 private:
  const Config& config_;
  std::unique_ptr<ChatBackend> chat_;
  std::unique_ptr<LlmClient> client_;
};

// ---- Stages ---------------------------------------------------------------

Split ConfiguredSplit(const Config& config) {
  auto split = ParseSplit(config.GetString("input.split"));
  if (!split) throw Error(ErrorCode::kConfigError, "input.split must be train or test");
  return *split;
}

Json ReportJson(const LoadReport& report, std::size_t dropped) {
  Json out;
  out["rows"] = report.rows;
  out["raw_triples"] = report.raw_triples;
  out["deduped_triples"] = report.deduped_triples;
  out["skipped_other_split"] = report.skipped_other_split;
  out["skipped_none_tails"] = report.skipped_none_tails;
  out["skipped_other_negation"] = report.skipped_other_negation;
  out["dropped_underspecified"] = dropped;
  return out;
}

int RunIngest(Context& ctx) {
  const Config& config = ctx.config;
  const Split split = ConfiguredSplit(config);
  const fs::path dir = ctx.StageDir("ingest");
  Manifest manifest("ingest", config);
  Json report = Json::object();
  bool any = false;
  for (const auto& [key, name] : {std::pair<std::string, std::string>{"input.atomic", "atomic"},
                                  {"input.anion", "anion"}}) {
    auto path = config.GetPath(key);
    if (!path) continue;
    any = true;
    manifest.Input(key, *path);
    LoadResult loaded = name == "atomic" ? LoadAtomic(*path, split) : LoadAnion(*path, split);
    FilterResult filtered = FilterUnderspecified(loaded.triples);
    WriteTracked(manifest, dir / (name + ".jsonl"), TriplesToJsonl(filtered.kept));
    report[name] = ReportJson(loaded.report, filtered.dropped);
    report[name]["kept"] = filtered.kept.size();
  }
  if (!any) {
    throw Error(ErrorCode::kConfigError, "ingest needs input.atomic or input.anion");
  }
  WriteTracked(manifest, dir / "ingest_report.json", report.dump(2) + "\n");
  manifest.Write(dir);
  std::cout << report.dump(2) << "\n";
  return 0;
}

std::vector<Triple> IngestedOrEmpty(const Context& ctx, const std::string& name,
                                    Manifest& manifest) {
  const fs::path path = ctx.out / "ingest" / (name + ".jsonl");
  if (!fs::exists(path)) return {};
  manifest.Input("ingest/" + name, path);
  return ReadTriples(path);
}

int RunNegate(Context& ctx, const std::vector<std::string>& inputs) {
  const Config& config = ctx.config;
  const fs::path dir = ctx.StageDir("negate");
  Manifest manifest("negate", config);
  std::vector<Triple> originals;
  if (inputs.empty()) {
    for (const char* name : {"atomic", "anion"}) {
      auto part = IngestedOrEmpty(ctx, name, manifest);
      originals.insert(originals.end(), part.begin(), part.end());
    }
    if (originals.empty()) {
      throw Error(ErrorCode::kMalformedInput, "nothing to negate: run ingest or pass --input");
    }
  } else {
    for (const auto& input : inputs) {
      manifest.Input("input", input);
      auto part = ReadTriples(input);
      originals.insert(originals.end(), part.begin(), part.end());
    }
  }

  const std::string mode = config.GetString("negate.mode");
  std::unique_ptr<Backend> backend;
  std::unique_ptr<PromptAsset> exemplars;
  std::unique_ptr<GenerativeNegator> generative;
  if (mode == "generative") {
    backend = std::make_unique<Backend>(config);
    exemplars = std::make_unique<PromptAsset>(ctx.Prompt("negation_exemplars.txt"));
    GenerativeNegatorOptions options;
    options.model_name = backend->Request().model_name;
    options.temperature = backend->Request().temperature;
    options.min_overlap = config.GetDouble("negate.min_overlap");
    options.fallback_to_rules = config.GetBool("negate.fallback_to_rules");
    generative = std::make_unique<GenerativeNegator>(backend->client(), *exemplars, options);
  } else if (mode != "rules") {
    throw Error(ErrorCode::kConfigError, "negate.mode must be rules or generative");
  }

  std::vector<Triple> out;
  Json skipped = Json::array();
  std::size_t variants = 0;
  for (const auto& triple : originals) {
    if (triple.variant != Variant::kOrig) continue;
    std::vector<Triple> generated;
    try {
      if (generative) {
        generated = GenerateVariants(
            triple,
            [&](const EventText& e) { return generative->Negate(e, EventSide::kHead).event; },
            [&](const EventText& e) { return generative->Negate(e, EventSide::kTail).event; });
      } else {
        generated = GenerateVariants(triple);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnnegatableEvent && e.code() != ErrorCode::kAlreadyNegated &&
          e.code() != ErrorCode::kRewriteRejected) {
        throw;
      }
      Json entry;
      entry["id"] = triple.id;
      entry["error"] = std::string(e.name());
      entry["message"] = e.what();
      skipped.push_back(std::move(entry));
      continue;
    }
    out.push_back(triple);
    out.insert(out.end(), generated.begin(), generated.end());
    variants += generated.size();
  }
  WriteTracked(manifest, dir / "triples.jsonl", TriplesToJsonl(out));
  WriteTracked(manifest, dir / "statements.jsonl", StatementsToJsonl(out));
  Json report;
  report["originals"] = out.size() - variants;
  report["variants"] = variants;
  report["skipped"] = skipped;
  if (generative) report["generative_fallbacks"] = generative->fallback_count();
  WriteTracked(manifest, dir / "negate_report.json", report.dump(2) + "\n");
  manifest.Write(dir);
  std::cout << "negated " << report["originals"] << " originals into " << out.size()
            << " triples (" << skipped.size() << " skipped)\n";
  return 0;
}

JudgeTrainingSpec TrainingSpec(const Config& config) {
  JudgeTrainingSpec spec;
  const auto sources = config.GetList("judge.sources");
  spec.use_atomic = std::find(sources.begin(), sources.end(), "atomic") != sources.end();
  spec.use_anion = std::find(sources.begin(), sources.end(), "anion") != sources.end();
  if (!spec.use_atomic && !spec.use_anion) {
    throw Error(ErrorCode::kConfigError, "judge.sources must name atomic and/or anion");
  }
  spec.per_relation_per_label =
      static_cast<std::size_t>(std::max<std::int64_t>(0, config.GetInt("judge.per_relation_per_label")));
  spec.seed = config.GetSeed("seeds.judge_data");
  return spec;
}

int RunJudgeBuild(Context& ctx) {
  const Config& config = ctx.config;
  const fs::path dir = ctx.StageDir("judge");
  Manifest manifest("judge-build", config);
  manifest.Seed("seeds.judge_data");
  SourceCorpora corpora;
  corpora.atomic = IngestedOrEmpty(ctx, "atomic", manifest);
  corpora.anion = IngestedOrEmpty(ctx, "anion", manifest);
  const JudgeTrainingSpec spec = TrainingSpec(config);

  Backend backend(config);
  InvalidGenerationOptions invalid_options{ctx.Prompt("invalid_generation.txt"),
                                           backend.Request()};
  InvalidGenerationStats stats;
  std::vector<LabeledTriple> valid = BuildValidSet(corpora, spec);
  std::vector<LabeledTriple> invalid =
      BuildInvalidSet(corpora, spec, backend.client(), invalid_options, &stats);
  std::vector<LabeledTriple> ambiguous = BuildAmbiguousSet(corpora, spec);

  std::vector<LabeledTriple> all = valid;
  all.insert(all.end(), invalid.begin(), invalid.end());
  all.insert(all.end(), ambiguous.begin(), ambiguous.end());
  WriteTracked(manifest, dir / "train.jsonl", LabeledToJsonl(all));
  WriteTracked(manifest, dir / "invalid_pool.jsonl", LabeledToJsonl(invalid));

  // Instruction rows carry all three labels, so they bypass the two-label
  // training export.
  std::string rows;
  for (const auto& item : all) {
    Json row;
    row["instruction"] =
        "Determine whether the following if-then statement is Valid, Invalid or "
        "Ambiguous according to commonsense knowledge.";
    row["input"] = Verbalize(item.triple).text;
    row["output"] = std::string(LabelName(item.label));
    rows += row.dump() + "\n";
  }
  WriteTracked(manifest, dir / "train_instructions.jsonl", rows);
  Json report;
  report["total"] = all.size();
  report["valid"] = valid.size();
  report["invalid"] = invalid.size();
  report["ambiguous"] = ambiguous.size();
  report["generation_requests"] = stats.requests;
  report["generation_rejected"] = stats.rejected;
  WriteTracked(manifest, dir / "judge_build_report.json", report.dump(2) + "\n");
  manifest.Write(dir);
  std::cout << report.dump(2) << "\n";
  return 0;
}

int RunJudgeEval(Context& ctx) {
  const Config& config = ctx.config;
  const fs::path dir = ctx.StageDir("judge_eval");
  Manifest manifest("judge-eval", config);
  const fs::path gold_path = ctx.InputOr("judge.gold", "", "set judge.gold");
  manifest.Input("judge.gold", gold_path);
  const std::vector<LabeledTriple> gold = ReadLabeled(gold_path);
  std::vector<JudgeVerdict> verdicts;
  if (auto path = config.GetPath("judge.predictions")) {
    manifest.Input("judge.predictions", *path);
    for (const Json& row : ReadJsonLines(*path)) verdicts.push_back(VerdictFromJson(row));
  } else {
    Backend backend(config);
    auto judge = backend.Judge(ctx);
    std::string rows;
    for (const auto& item : gold) {
      verdicts.push_back(judge->Label(item.triple));
      rows += VerdictToJson(verdicts.back()).dump() + "\n";
    }
    WriteTracked(manifest, dir / "verdicts.jsonl", rows);
  }
  const JudgeReport report = EvaluateJudge(verdicts, gold);
  WriteTracked(manifest, dir / "judge_report.json", report.ToJson().dump(2) + "\n");
  WriteTracked(manifest, dir / "judge_report.txt", report.ToTable());
  manifest.Write(dir);
  std::cout << report.ToTable();
  return 0;
}

fs::path LabeledInput(const Context& ctx, const std::string& key) {
  return ctx.InputOr(key, ctx.out / "label" / "labeled.jsonl", "run label or set " + key);
}

int RunLabel(Context& ctx) {
  const Config& config = ctx.config;
  const fs::path dir = ctx.StageDir("label");
  Manifest manifest("label", config);
  const fs::path input =
      ctx.InputOr("label.input", ctx.out / "negate" / "triples.jsonl", "run negate or set label.input");
  manifest.Input("triples", input);
  const std::vector<Triple> triples = ReadTriples(input);
  Backend backend(config);
  auto judge = backend.Judge(ctx);
  LabelingOptions options;
  options.attempts = static_cast<int>(config.GetInt("label.attempts"));
  if (!config.GetString("label.quarantine_threshold").empty()) {
    options.quarantine_threshold =
        static_cast<std::size_t>(config.GetInt("label.quarantine_threshold"));
  }
  options.concurrency = backend.client().options().max_in_flight;
  const LabelingResult result = LabelCorpus(triples, *judge, options);
  WriteTracked(manifest, dir / "labeled.jsonl", LabeledToJsonl(result.labeled));
  WriteTracked(manifest, dir / "quarantine.jsonl", QuarantineToJsonl(result.quarantined));
  manifest.Write(dir);
  std::cout << "labeled " << result.labeled.size() << ", quarantined "
            << result.quarantined.size() << "\n";
  return 0;
}

int RunStats(Context& ctx) {
  const fs::path dir = ctx.StageDir("stats");
  Manifest manifest("stats", ctx.config);
  const fs::path input = LabeledInput(ctx, "stats.input");
  manifest.Input("labeled", input);
  const auto labeled = ReadLabeled(input);
  Json out;
  std::string tsv;
  for (Source source : {Source::kAtomic, Source::kAnion}) {
    std::vector<LabeledTriple> part;
    for (const auto& item : labeled) {
      if (item.triple.source == source) part.push_back(item);
    }
    if (part.empty()) continue;
    const CorpusStats stats = ComputeCorpusStats(part);
    out[std::string(SourceName(source))] = stats.ToJson();
    tsv += "# " + std::string(SourceName(source)) + "\n" + stats.ToTsv();
  }
  WriteTracked(manifest, dir / "stats.tsv", tsv);
  WriteTracked(manifest, dir / "stats.json", out.dump(2) + "\n");
  manifest.Write(dir);
  std::cout << tsv;
  return 0;
}

std::string Instruction(const Config& config) {
  const std::string text = config.GetString("build.instruction");
  return text.empty() ? std::string(kDefaultInstruction) : text;
}

int RunBuild(Context& ctx) {
  const Config& config = ctx.config;
  const fs::path dir = ctx.StageDir("build");
  Manifest manifest("build", config);
  manifest.Seed("seeds.baseline");
  manifest.Seed("seeds.subset");
  manifest.Seed("seeds.random_labels");
  const fs::path input = LabeledInput(ctx, "build.input");
  manifest.Input("labeled", input);
  const auto labeled = ReadLabeled(input);
  const std::string instruction = Instruction(config);

  std::vector<LabeledTriple> atomic_items, anion_items;
  for (const auto& item : labeled) {
    (item.triple.source == Source::kAnion ? anion_items : atomic_items).push_back(item);
  }
  const auto atomic_groups = SelectContrastiveAtomic(GroupVariants(atomic_items));
  const auto anion_groups = GroupVariants(anion_items);
  const auto anion_pairs = SelectContrastiveAnion(AnionPairs(anion_groups));
  const TrainingCorpus atomic = CorpusFromAtomicGroups(atomic_groups);
  const TrainingCorpus anion = CorpusFromAnionPairs(anion_pairs);
  TrainingCorpus contrastive = atomic;
  contrastive.Append(anion);

  Json report;
  auto emit = [&](const std::string& name, const TrainingCorpus& corpus) {
    const auto flat = corpus.Flatten();
    WriteTracked(manifest, dir / (name + ".jsonl"), LabeledToJsonl(flat));
    const auto records = BuildTrainingRecords(corpus, instruction);
    WriteTracked(manifest, dir / (name + "_train.jsonl"), TrainingRecordsToJsonl(records));
    report["corpora"][name] = records.size();
  };
  emit("contrastive_atomic", atomic);
  emit("contrastive_anion", anion);
  emit("contrastive", contrastive);

  // Baseline: same size and label/source mix, drawn from originals and the
  // synthetic Invalid pool.
  SourceCorpora originals;
  originals.atomic = IngestedOrEmpty(ctx, "atomic", manifest);
  originals.anion = IngestedOrEmpty(ctx, "anion", manifest);
  const fs::path pool_path = ctx.InputOr("build.invalid_pool", ctx.out / "judge" / "invalid_pool.jsonl",
                                         "run judge-build or set build.invalid_pool");
  manifest.Input("invalid_pool", pool_path);
  const auto pool = ReadLabeled(pool_path);
  const BaselineTargets targets = BaselineTargetsFor(contrastive);
  emit("baseline", BuildBaseline(originals, pool, targets, config.GetSeed("seeds.baseline")));

  if (config.GetBool("build.variant_ablation")) {
    emit("ablation_neg_if", SubsetByVariant(atomic, Variant::kNegIf));
    emit("ablation_neg_then", SubsetByVariant(atomic, Variant::kNegThen));
  }
  Json skipped = Json::array();
  for (const auto& size_text : config.GetList("build.subset_sizes")) {
    const std::size_t n = static_cast<std::size_t>(std::stoull(size_text));
    try {
      emit("subset_" + size_text, SampleSubset(contrastive, n, config.GetSeed("seeds.subset")));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kShortfall) throw;
      skipped.push_back(Json{{"subset", n}, {"reason", e.what()}});
    }
  }
  if (config.GetBool("build.random_labels")) {
    emit("random_labels", RandomizeLabels(contrastive, config.GetSeed("seeds.random_labels")));
  }
  report["skipped_subsets"] = skipped;
  report["groups"]["atomic"] = atomic.groups.size();
  report["groups"]["anion"] = anion.groups.size();
  WriteTracked(manifest, dir / "build_report.json", report.dump(2) + "\n");
  manifest.Write(dir);
  std::cout << report.dump(2) << "\n";
  return 0;
}

int RunBenchSample(Context& ctx) {
  const Config& config = ctx.config;
  const fs::path dir = ctx.StageDir("bench");
  Manifest manifest("bench-sample", config);
  manifest.Seed("seeds.benchmark");
  const fs::path input = ctx.InputOr("input.test_atomic", "", "set input.test_atomic");
  manifest.Input("input.test_atomic", input);
  const LoadResult loaded = LoadAtomic(input, Split::kTest);
  const FilterResult filtered = FilterUnderspecified(loaded.triples);
  const auto benchmark =
      SampleBenchmark(filtered.kept, static_cast<std::size_t>(config.GetInt("bench.per_relation")),
                      config.GetSeed("seeds.benchmark"));
  WriteTracked(manifest, dir / "benchmark.jsonl", TriplesToJsonl(benchmark));
  WriteTracked(manifest, dir / "statements.jsonl", StatementsToJsonl(benchmark));
  manifest.Write(dir);
  std::cout << "sampled " << benchmark.size() << " benchmark triples\n";
  return 0;
}

SessionOptions AnnotationOptions(const Context& ctx) {
  const Config& config = ctx.config;
  SessionOptions options;
  options.data_dir = config.GetPath("annotate.data_dir").value_or(ctx.out / "annotation");
  const auto annotators = config.GetList("annotate.annotators");
  if (annotators.size() != 2) {
    throw Error(ErrorCode::kConfigError, "annotate.annotators must list exactly two ids");
  }
  options.first_annotator = annotators[0];
  options.second_annotator = annotators[1];
  options.adjudicator = config.GetString("annotate.adjudicator");
  auto policy = ParsePolicy(config.GetString("annotate.policy"));
  if (!policy) throw Error(ErrorCode::kConfigError, "annotate.policy must be AGREE_ONLY or THIRD_PASS");
  options.policy = *policy;
  options.strict = config.GetBool("annotate.strict");
  if (!config.GetString("seeds.task_order").empty()) {
    options.order_seed = config.GetSeed("seeds.task_order");
  }
  return options;
}

int RunAnnotateServe(Context& ctx, bool export_only) {
  SessionOptions options = AnnotationOptions(ctx);
  std::unique_ptr<AnnotationSession> session;
  if (fs::exists(options.data_dir / "benchmark.jsonl")) {
    session = AnnotationSession::Open(options);
  } else {
    const fs::path bench = ctx.out / "bench" / "benchmark.jsonl";
    if (!fs::exists(bench)) {
      throw Error(ErrorCode::kMalformedInput, "no benchmark: run bench-sample first");
    }
    session = AnnotationSession::Create(ReadTriples(bench), options);
  }
  if (export_only) {
    Json body = session->Adjudicate().ToJson();
    body["policy"] = std::string(PolicyName(options.policy));
    std::cout << body.dump(2) << "\n";
    return 0;
  }
  AnnotationServer server(*session);
  const std::string host = ctx.config.GetString("annotate.host");
  const int port = static_cast<int>(ctx.config.GetInt("annotate.port"));
  std::cerr << "serving " << session->benchmark().size() << " triples on " << host << ":"
            << port << "\n";
  server.Run(host, port);
  return 0;
}

std::vector<std::string> DefaultLabelSet(const std::string& task) {
  if (task == "rte") return {"entailment", "not_entailment"};
  if (task == "snli" || task == "mnli") return {"entailment", "contradiction", "neutral"};
  if (task == "csqa") return {"a", "b", "c", "d", "e"};
  return {};
}

std::string DefaultPrompt(const std::string& task) {
  if (task == "rte") return "rte.txt";
  if (task == "snli" || task == "mnli") return "nli.txt";
  if (task == "csqa") return "csqa.txt";
  if (task == "condaqa") return "condaqa.txt";
  if (task == "nevir") return "nevir.txt";
  throw Error(ErrorCode::kConfigError,
              "eval.task must be condaqa, nevir, rte, snli, mnli or csqa, got '" + task + "'");
}

std::vector<std::string> LabelSet(const Config& config, const std::string& task) {
  auto labels = config.GetList("eval.label_set");
  return labels.empty() ? DefaultLabelSet(task) : labels;
}

EvalReport Score(const std::string& task, const std::vector<Json>& gold_rows,
                 const std::vector<PredictionRecord>& predictions, const Config& config) {
  if (task == "condaqa") return ScoreCondaQA(predictions, CondaQAGoldFromJson(gold_rows));
  if (task == "nevir") return ScoreNevIR(predictions, NevIRGoldFromJson(gold_rows));
  DefaultPrompt(task);  // validates the task name
  const auto labels = LabelSet(config, task);
  return ScoreClassification(predictions, ClassificationGoldFromJson(gold_rows), labels, task);
}

// Runs inference into <stage dir>/predictions.jsonl, resuming if present.
fs::path Infer(Context& ctx, const std::string& task, const std::vector<Json>& gold_rows,
               const fs::path& dir) {
  const Config& config = ctx.config;
  Backend backend(config);
  const PromptAsset prompt = config.GetPath("eval.prompt")
                                 ? LoadPromptAsset(*config.GetPath("eval.prompt"))
                                 : ctx.Prompt(DefaultPrompt(task));
  std::vector<InferenceItem> items;
  PredictionParser parser;
  if (task == "condaqa") {
    items = CondaQAItems(CondaQAGoldFromJson(gold_rows));
    parser = CondaQAParser();
  } else if (task == "nevir") {
    items = NevIRItems(NevIRGoldFromJson(gold_rows));
    parser = NevIRParser();
  } else {
    items = ClassificationItems(ClassificationGoldFromJson(gold_rows));
    parser = ClassificationParser(LabelSet(config, task));
  }
  InferenceOptions options;
  options.request = backend.Request();
  options.batch_size = backend.client().options().max_in_flight;
  options.shared_bindings["exemplars"] =
      config.GetPath("eval.exemplars") ? ReadFile(*config.GetPath("eval.exemplars")) : "";
  const fs::path output = dir / "predictions.jsonl";
  const InferenceStats stats = RunInference(items, backend.client(), prompt, parser, output, options);
  std::cerr << "inference: " << stats.completed << " new, " << stats.skipped << " resumed\n";
  return output;
}

int RunEval(Context& ctx) {
  const Config& config = ctx.config;
  const std::string task = config.GetString("eval.task");
  DefaultPrompt(task);
  const fs::path dir = ctx.StageDir("eval");
  Manifest manifest("eval", config);
  const fs::path gold_path = ctx.InputOr("eval.gold", "", "set eval.gold");
  manifest.Input("eval.gold", gold_path);
  const auto gold_rows = ReadJsonLines(gold_path);
  fs::path predictions_path;
  if (auto path = config.GetPath("eval.predictions")) {
    predictions_path = *path;
    manifest.Input("eval.predictions", predictions_path);
  } else {
    predictions_path = Infer(ctx, task, gold_rows, dir);
    manifest.Output(predictions_path);
  }
  EvalReport report = Score(task, gold_rows, ReadPredictions(predictions_path), config);
  if (auto baseline_path = config.GetPath("eval.baseline")) {
    manifest.Input("eval.baseline", *baseline_path);
    const EvalReport baseline = Score(task, gold_rows, ReadPredictions(*baseline_path), config);
    CompareWithBaseline(report, baseline);
  }
  WriteTracked(manifest, dir / "report.json", report.ToJson().dump(2) + "\n");
  WriteTracked(manifest, dir / "report.txt", report.ToTable());
  manifest.Write(dir);
  std::cout << report.ToTable();
  return 0;
}

int RunSignificance(Context& ctx) {
  const Config& config = ctx.config;
  const std::string task = config.GetString("eval.task");
  const fs::path dir = ctx.StageDir("significance");
  Manifest manifest("significance", config);
  const fs::path gold_path = ctx.InputOr("eval.gold", "", "set eval.gold");
  const fs::path a_path = ctx.InputOr("eval.predictions", "", "set eval.predictions");
  const fs::path b_path = ctx.InputOr("eval.baseline", "", "set eval.baseline");
  manifest.Input("eval.gold", gold_path);
  manifest.Input("eval.predictions", a_path);
  manifest.Input("eval.baseline", b_path);
  const auto gold_rows = ReadJsonLines(gold_path);
  const EvalReport a = Score(task, gold_rows, ReadPredictions(a_path), config);
  const EvalReport b = Score(task, gold_rows, ReadPredictions(b_path), config);
  const McNemarResult result = McNemar(a.correct, b.correct);
  Json out = result.ToJson();
  out["task"] = task;
  WriteTracked(manifest, dir / "mcnemar.json", out.dump(2) + "\n");
  manifest.Write(dir);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int RunPipeline(Context& ctx) {
  RunIngest(ctx);
  RunNegate(ctx, {});
  RunJudgeBuild(ctx);
  RunLabel(ctx);
  RunStats(ctx);
  RunBuild(ctx);
  if (ctx.config.GetPath("input.test_atomic")) RunBenchSample(ctx);
  return 0;
}

void PrintError(const std::string& name, const std::string& message, int status) {
  Json line;
  line["error"] = name;
  line["message"] = message;
  line["exit"] = status;
  std::cerr << line.dump() << std::endl;
}

int Main(int argc, char** argv) {
  CLI::App app{"negkit: negation augmentation, judging, corpus building and evaluation"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  std::vector<std::string> negate_inputs;
  std::map<std::string, std::string> flags;
  bool export_only = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file");
    sub->add_option("--set", overrides, "override a config key (key=value), repeatable");
    sub->add_option("-o,--output", output, "output directory (output.dir)");
  };
  auto flag = [&](CLI::App* sub, const std::string& name, const std::string& key) {
    sub->add_option_function<std::string>(
        name, [&flags, key](const std::string& value) { flags[key] = value; },
        "sets " + key);
  };

  auto* ingest = app.add_subcommand("ingest", "load ATOMIC/ANION into canonical JSONL");
  common(ingest);
  flag(ingest, "--atomic", "input.atomic");
  flag(ingest, "--anion", "input.anion");
  flag(ingest, "--split", "input.split");

  auto* negate = app.add_subcommand("negate", "generate NEG_IF/NEG_THEN/NEG_BOTH variants");
  common(negate);
  negate->add_option("-i,--input", negate_inputs, "canonical triple JSONL (default: ingest output)");
  flag(negate, "--mode", "negate.mode");

  auto* judge_build = app.add_subcommand("judge-build", "build the judge training set");
  common(judge_build);
  flag(judge_build, "--per-relation-per-label", "judge.per_relation_per_label");
  flag(judge_build, "--sources", "judge.sources");

  auto* judge_eval = app.add_subcommand("judge-eval", "score judge verdicts against gold labels");
  common(judge_eval);
  flag(judge_eval, "--gold", "judge.gold");
  flag(judge_eval, "--predictions", "judge.predictions");

  auto* label = app.add_subcommand("label", "label triples with the configured judge");
  common(label);
  flag(label, "--input", "label.input");

  auto* stats = app.add_subcommand("stats", "label counts per variant");
  common(stats);
  flag(stats, "--input", "stats.input");

  auto* build = app.add_subcommand("build", "contrastive, baseline and ablation corpora");
  common(build);
  flag(build, "--input", "build.input");
  flag(build, "--invalid-pool", "build.invalid_pool");

  auto* bench = app.add_subcommand("bench-sample", "sample the human-evaluation benchmark");
  common(bench);
  flag(bench, "--input", "input.test_atomic");
  flag(bench, "--per-relation", "bench.per_relation");

  auto* serve = app.add_subcommand("annotate-serve", "serve the annotation HTTP API");
  common(serve);
  flag(serve, "--host", "annotate.host");
  flag(serve, "--port", "annotate.port");
  flag(serve, "--data-dir", "annotate.data_dir");
  flag(serve, "--policy", "annotate.policy");
  serve->add_flag("--export", export_only, "print the adjudicated export and exit");

  auto* eval = app.add_subcommand("eval", "score predictions (runs inference if none given)");
  common(eval);
  flag(eval, "--task", "eval.task");
  flag(eval, "--gold", "eval.gold");
  flag(eval, "--predictions", "eval.predictions");
  flag(eval, "--baseline", "eval.baseline");

  auto* significance = app.add_subcommand("significance", "McNemar test of two prediction files");
  common(significance);
  flag(significance, "--task", "eval.task");
  flag(significance, "--gold", "eval.gold");
  flag(significance, "--predictions", "eval.predictions");
  flag(significance, "--baseline", "eval.baseline");

  auto* pipeline = app.add_subcommand("pipeline", "ingest through build in one run");
  common(pipeline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("UsageError", e.what(), 1);
    return 1;
  }

  try {
    Context ctx{config_path.empty() ? Config(".") : Config::Load(config_path), {}};
    for (const auto& assignment : overrides) ctx.config.ApplyOverride(assignment);
    for (const auto& [key, value] : flags) ctx.config.Set(key, value);
    if (!output.empty()) ctx.config.Set("output.dir", output);
    ctx.config.ValidateInputs();
    ctx.out = ctx.config.GetPath("output.dir").value_or("out");

    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "ingest") return RunIngest(ctx);
    if (name == "negate") return RunNegate(ctx, negate_inputs);
    if (name == "judge-build") return RunJudgeBuild(ctx);
    if (name == "judge-eval") return RunJudgeEval(ctx);
    if (name == "label") return RunLabel(ctx);
    if (name == "stats") return RunStats(ctx);
    if (name == "build") return RunBuild(ctx);
    if (name == "bench-sample") return RunBenchSample(ctx);
    if (name == "annotate-serve") return RunAnnotateServe(ctx, export_only);
    if (name == "eval") return RunEval(ctx);
    if (name == "significance") return RunSignificance(ctx);
    if (name == "pipeline") return RunPipeline(ctx);
    PrintError("UsageError", "unknown subcommand " + name, 1);
    return 1;
  } catch (const Error& e) {
    const int status = ExitStatusFor(e.code());
    PrintError(std::string(e.name()), e.what(), status);
    return status;
  } catch (const std::exception& e) {
    PrintError("IoError", e.what(), 2);
    return 2;
  }
}

}  // namespace
}  // namespace negkit

int main(int argc, char** argv) { return negkit::Main(argc, argv); }
