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

#include "negkit/negator.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "negkit/error.h"
#include "negkit/llm_client.h"
#include "verb_lexicon.h"

namespace negkit {
namespace {

constexpr std::string_view kCue = "not";

const std::unordered_set<std::string_view>& SimpleSubjects() {
  static const auto* table = new std::unordered_set<std::string_view>{
      "personx", "persony", "personz", "he",       "she",       "it",
      "they",    "i",       "we",      "you",      "someone",   "somebody",
      "everyone", "everybody", "people", "anyone", "anybody",
  };
  return *table;
}

const std::unordered_set<std::string_view>& Determiners() {
  static const auto* table = new std::unordered_set<std::string_view>{
      "the", "a", "an", "his", "her", "their", "my", "your", "our", "its",
      "this", "that", "these", "those", "some", "every", "each", "one",
  };
  return *table;
}

// Auxiliaries and modals that host "not" directly.
const std::unordered_set<std::string_view>& HostAuxiliaries() {
  static const auto* table = new std::unordered_set<std::string_view>{
      "am",    "is",    "are",   "was",  "were",   "be",     "been",
      "being", "can",   "could", "will", "would",  "may",    "might",
      "must",  "should", "shall",
  };
  return *table;
}

const std::unordered_set<std::string_view>& Adverbs() {
  static const auto* table = new std::unordered_set<std::string_view>{
      "always", "often", "also", "just",  "still", "already", "even",
      "almost", "soon",  "again", "sometimes", "seldom", "rarely", "finally",
  };
  return *table;
}

const std::unordered_set<std::string_view>& StopWords() {
  static const auto* table = new std::unordered_set<std::string_view>{
      "a",    "an",   "the",  "to",   "of",   "in",   "on",   "at",  "for",
      "with", "and",  "or",   "be",   "do",   "not",  "by",   "from", "as",
      "that", "this", "it",   "its",  "is",   "are",  "was",  "were", "does",
      "did",  "am",   "n't",
  };
  return *table;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsAlphaWord(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '-';
  });
}

bool IsAdverb(std::string_view lowered) {
  return Adverbs().contains(lowered) ||
         (lowered.size() > 4 && EndsWith(lowered, "ly") &&
          !EndsWith(lowered, "ply") && lowered != "rely" && lowered != "fly" &&
          lowered != "bully");
}

bool InLexicon(std::string_view lemma) {
  return lexicon::BaseVerbs().contains(lemma);
}

// First candidate found in the lexicon wins; otherwise `fallback`.
std::string PickLemma(std::initializer_list<std::string> candidates,
                      std::string fallback) {
  for (const auto& candidate : candidates) {
    if (!candidate.empty() && InLexicon(candidate)) return candidate;
  }
  return fallback;
}

std::string PastLemma(const std::string& token) {
  if (EndsWith(token, "ied") && token.size() > 4) {
    return token.substr(0, token.size() - 3) + "y";
  }
  std::string plain = token.substr(0, token.size() - 2);
  std::string with_e = token.substr(0, token.size() - 1);
  std::string undoubled;
  if (plain.size() >= 3 && plain[plain.size() - 1] == plain[plain.size() - 2]) {
    undoubled = plain.substr(0, plain.size() - 1);
  }
  if (InLexicon(with_e)) return with_e;
  if (InLexicon(plain)) return plain;
  if (!undoubled.empty() && InLexicon(undoubled)) return undoubled;
  // Suffix heuristics for verbs outside the table.
  if (!undoubled.empty() && std::string_view("bdgmnprt").find(plain.back()) !=
                                std::string_view::npos &&
      plain.size() >= 3 && IsVowel(plain[plain.size() - 3])) {
    return undoubled;
  }
  char last = plain.empty() ? '\0' : plain.back();
  char before = plain.size() >= 2 ? plain[plain.size() - 2] : '\0';
  if (last == 'v' || last == 'c' || last == 'u' ||
      (last == 'z' && before != 'z') || (last == 'g' && before == 'd') ||
      (last == 'l' && before != '\0' && !IsVowel(before) && before != 'l' &&
       before != 'r') ||
      (last == 't' && before == 'a' && plain.size() >= 3 &&
       !IsVowel(plain[plain.size() - 3]))) {
    return with_e;
  }
  return plain;
}

std::string ThirdSingularLemma(const std::string& token) {
  if (EndsWith(token, "ies") && token.size() > 4) {
    return token.substr(0, token.size() - 3) + "y";
  }
  std::string strip_s = token.substr(0, token.size() - 1);
  if (EndsWith(token, "es")) {
    std::string strip_es = token.substr(0, token.size() - 2);
    std::string lemma = PickLemma({strip_s, strip_es}, "");
    if (!lemma.empty()) return lemma;
    for (std::string_view suffix : {"sses", "shes", "ches", "xes", "zes",
                                    "oes"}) {
      if (EndsWith(token, suffix)) return strip_es;
    }
  }
  return strip_s;
}

bool LooksThirdSingular(std::string_view token) {
  return token.size() > 2 && token.back() == 's' && !EndsWith(token, "ss") &&
         !EndsWith(token, "us") && !EndsWith(token, "is") &&
         !EndsWith(token, "'s");
}

bool IsParticiple(std::string_view lowered) {
  return lexicon::IrregularParticiples().contains(lowered) ||
         (lowered.size() > 3 && (EndsWith(lowered, "ed") ||
                                 EndsWith(lowered, "en")));
}

// Index where the verb phrase starts (first token after the subject), or
// nullopt when the clause has no recognizable subject/verb split.
std::optional<std::size_t> VerbPhraseStart(
    const std::vector<std::string>& lowered) {
  if (lowered.size() < 2) return std::nullopt;
  if (SimpleSubjects().contains(lowered[0])) return 1;
  // Noun-phrase subject: the verb phrase starts at the first token, after the
  // leading word, that is an auxiliary or an inflected verb.
  for (std::size_t i = 1; i < lowered.size(); ++i) {
    const auto& token = lowered[i];
    if (Determiners().contains(token)) continue;
    if (IsAdverb(token)) {
      // Adverb right before the verb belongs to the verb phrase.
      std::size_t j = i;
      while (j < lowered.size() && IsAdverb(lowered[j])) ++j;
      if (j < lowered.size()) {
        VerbAnalysis next = AnalyzeVerb(lowered[j]);
        if (HostAuxiliaries().contains(lowered[j]) ||
            next.form == VerbForm::kThirdSingular ||
            next.form == VerbForm::kPast) {
          return i;
        }
      }
      continue;
    }
    if (HostAuxiliaries().contains(token)) return i;
    VerbAnalysis analysis = AnalyzeVerb(token);
    if (analysis.form == VerbForm::kThirdSingular ||
        analysis.form == VerbForm::kPast) {
      return i;
    }
  }
  return std::nullopt;
}

[[noreturn]] void ThrowUnnegatable(const EventText& event) {
  throw Error(ErrorCode::kUnnegatableEvent,
              "no verb found in '" + event.text + "'");
}

std::string StripPunctuation(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-') {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> ContentLemmas(std::string_view text) {
  std::vector<std::string> lemmas;
  for (const auto& token : SplitTokens(text)) {
    std::string cleaned = ToLower(StripPunctuation(token));
    if (cleaned.empty() || StopWords().contains(cleaned)) continue;
    lemmas.push_back(LemmatizeToken(cleaned));
  }
  return lemmas;
}

// Normalizes a raw generation: first line, surrounding quotes, "Output:".
std::string CleanGeneration(std::string_view raw) {
  std::string text = Trim(raw);
  auto newline = text.find('\n');
  if (newline != std::string::npos) text = Trim(text.substr(0, newline));
  for (std::string_view prefix : {"Output:", "output:"}) {
    if (StartsWith(text, prefix)) text = Trim(text.substr(prefix.size()));
  }
  while (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') &&
         text.back() == text.front()) {
    text = Trim(text.substr(1, text.size() - 2));
  }
  return text;
}

}  // namespace

std::string_view NegationRuleName(NegationRule rule) {
  switch (rule) {
    case NegationRule::kAuxInsert: return "AUX_INSERT";
    case NegationRule::kDoSupport: return "DO_SUPPORT";
    case NegationRule::kCuePrefix: return "CUE_PREFIX";
  }
  return "";
}

VerbAnalysis AnalyzeVerb(std::string_view token) {
  std::string lowered = ToLower(token);
  if (!IsAlphaWord(lowered)) return {};
  if (auto it = lexicon::IrregularThirdSingular().find(lowered);
      it != lexicon::IrregularThirdSingular().end()) {
    return {VerbForm::kThirdSingular, std::string(it->second)};
  }
  if (auto it = lexicon::IrregularPast().find(lowered);
      it != lexicon::IrregularPast().end()) {
    return {VerbForm::kPast, std::string(it->second)};
  }
  if (InLexicon(lowered)) return {VerbForm::kBase, lowered};
  if (lowered.size() > 3 && EndsWith(lowered, "ed")) {
    return {VerbForm::kPast, PastLemma(lowered)};
  }
  if (LooksThirdSingular(lowered)) {
    return {VerbForm::kThirdSingular, ThirdSingularLemma(lowered)};
  }
  return {};
}

std::string LemmatizeToken(std::string_view token) {
  VerbAnalysis analysis = AnalyzeVerb(token);
  if (analysis.form == VerbForm::kUnknown) return ToLower(token);
  return analysis.lemma;
}

NegationResult NegateHead(const EventText& event) {
  if (event.negated()) {
    throw Error(ErrorCode::kAlreadyNegated,
                "event is already negated: '" + event.text + "'");
  }
  std::vector<std::string> tokens = SplitTokens(event.text);
  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (const auto& token : tokens) lowered.push_back(ToLower(token));

  auto start = VerbPhraseStart(lowered);
  if (!start) ThrowUnnegatable(event);
  std::size_t verb = *start;
  while (verb < lowered.size() && IsAdverb(lowered[verb])) ++verb;
  if (verb >= lowered.size()) ThrowUnnegatable(event);
  for (std::size_t i = *start; i <= verb; ++i) {
    if (lowered[i] == kCue || lowered[i] == "never" ||
        EndsWith(lowered[i], "n't")) {
      throw Error(ErrorCode::kAlreadyNegated,
                  "event already carries a negation cue: '" + event.text +
                      "'");
    }
  }
  if (verb + 1 < lowered.size() && lowered[verb + 1] == kCue) {
    throw Error(ErrorCode::kAlreadyNegated,
                "event already carries a negation cue: '" + event.text + "'");
  }

  const std::string& head_verb = lowered[verb];
  const std::string next = verb + 1 < lowered.size() ? lowered[verb + 1] : "";
  bool aux = HostAuxiliaries().contains(head_verb);
  if ((head_verb == "have" || head_verb == "has" || head_verb == "had") &&
      !next.empty() && IsParticiple(next)) {
    aux = true;
  }
  if ((head_verb == "do" || head_verb == "does" || head_verb == "did") &&
      !next.empty() && InLexicon(next) && !Determiners().contains(next)) {
    aux = true;
  }

  NegationResult result;
  result.trace.original_tokens = tokens;
  std::vector<std::string> out;
  if (aux) {
    out.assign(tokens.begin(), tokens.begin() + verb + 1);
    out.emplace_back(kCue);
    out.insert(out.end(), tokens.begin() + verb + 1, tokens.end());
    result.trace.rule_applied = NegationRule::kAuxInsert;
    result.trace.cue_position = verb + 1;
  } else {
    VerbAnalysis analysis = AnalyzeVerb(head_verb);
    std::string support;
    switch (analysis.form) {
      case VerbForm::kThirdSingular: support = "does"; break;
      case VerbForm::kPast: support = "did"; break;
      case VerbForm::kBase: support = "do"; break;
      case VerbForm::kUnknown: ThrowUnnegatable(event);
    }
    out.assign(tokens.begin(), tokens.begin() + *start);
    out.push_back(support);
    out.emplace_back(kCue);
    out.insert(out.end(), tokens.begin() + *start, tokens.begin() + verb);
    out.push_back(analysis.form == VerbForm::kBase ? tokens[verb]
                                                   : analysis.lemma);
    out.insert(out.end(), tokens.begin() + verb + 1, tokens.end());
    result.trace.rule_applied = NegationRule::kDoSupport;
    result.trace.cue_position = *start + 1;
  }
  result.event = EventText{JoinTokens(out), Polarity::kNegated};
  result.trace.result_tokens = std::move(out);
  return result;
}

NegationResult NegateTail(const EventText& event) {
  std::string lowered = ToLower(event.text);
  if (event.negated() || lowered == kCue || StartsWith(lowered, "not ")) {
    throw Error(ErrorCode::kAlreadyNegated,
                "event is already negated: '" + event.text + "'");
  }
  NegationResult result;
  result.trace.rule_applied = NegationRule::kCuePrefix;
  result.trace.cue_position = 0;
  result.trace.original_tokens = SplitTokens(event.text);
  result.event = EventText{"not " + event.text, Polarity::kNegated};
  result.trace.result_tokens = SplitTokens(result.event.text);
  return result;
}

double ContentTokenOverlap(std::string_view original,
                           std::string_view rewrite) {
  std::vector<std::string> wanted = ContentLemmas(original);
  if (wanted.empty()) return 1.0;
  std::vector<std::string> available = ContentLemmas(rewrite);
  std::size_t kept = 0;
  for (const auto& lemma : wanted) {
    auto it = std::find(available.begin(), available.end(), lemma);
    if (it != available.end()) {
      ++kept;
      available.erase(it);
    }
  }
  return static_cast<double>(kept) / static_cast<double>(wanted.size());
}

bool ContainsNegationCue(std::string_view text) {
  for (const auto& token : SplitTokens(text)) {
    if (ToLower(StripPunctuation(token)) == kCue) return true;
  }
  return false;
}

GenerativeNegator::GenerativeNegator(LlmClient& client,
                                     const PromptAsset& exemplars,
                                     GenerativeNegatorOptions options)
    : client_(client), exemplars_(exemplars), options_(std::move(options)) {}

GenerativeNegation GenerativeNegator::Negate(const EventText& event,
                                             EventSide side) {
  if (event.negated()) {
    throw Error(ErrorCode::kAlreadyNegated,
                "event is already negated: '" + event.text + "'");
  }
  ChatRequest request;
  request.model_name = options_.model_name;
  request.temperature = options_.temperature;
  request.max_output_tokens = options_.max_output_tokens;
  request.messages.push_back(
      {ChatRole::kSystem,
       std::string("Rewrite the ") +
           (side == EventSide::kHead ? "if event" : "then event") +
           " by adding the logical negation cue \"not\". Keep every other "
           "word unchanged.\n\n" +
           exemplars_.raw});
  request.messages.push_back(
      {ChatRole::kUser, "Input: " + event.text + "\nOutput:"});

  ChatResponse response = client_.Complete(request);
  std::string rewrite = CleanGeneration(response.content);
  if (!rewrite.empty() && ContainsNegationCue(rewrite) &&
      ContentTokenOverlap(event.text, rewrite) >= options_.min_overlap) {
    return {EventText{rewrite, Polarity::kNegated}, false};
  }
  if (!options_.fallback_to_rules) {
    throw Error(ErrorCode::kRewriteRejected,
                "rewrite '" + rewrite + "' rejected for '" + event.text + "'");
  }
  ++fallbacks_;
  NegationResult fallback =
      side == EventSide::kHead ? NegateHead(event) : NegateTail(event);
  return {std::move(fallback.event), true};
}

std::vector<Triple> GenerateVariants(const Triple& triple) {
  return GenerateVariants(
      triple, [](const EventText& e) { return NegateHead(e).event; },
      [](const EventText& e) { return NegateTail(e).event; });
}

std::vector<Triple> GenerateVariants(const Triple& triple,
                                     const EventNegationFn& negate_head,
                                     const EventNegationFn& negate_tail) {
  if (triple.variant != Variant::kOrig) {
    throw Error(ErrorCode::kNotAnOriginal,
                "triple " + triple.id + " is a " +
                    std::string(VariantName(triple.variant)) +
                    " variant, not an original");
  }
  std::vector<Triple> variants;
  EventText negated_tail = negate_tail(triple.tail);
  if (triple.source == Source::kAnion) {
    variants.push_back(MakeTriple(triple.source, triple.split, triple.head,
                                  triple.relation, std::move(negated_tail),
                                  Variant::kNegBoth, triple.id));
    return variants;
  }
  EventText negated_head = negate_head(triple.head);
  variants.push_back(MakeTriple(triple.source, triple.split, negated_head,
                                triple.relation, triple.tail, Variant::kNegIf,
                                triple.id));
  variants.push_back(MakeTriple(triple.source, triple.split, triple.head,
                                triple.relation, negated_tail,
                                Variant::kNegThen, triple.id));
  variants.push_back(MakeTriple(triple.source, triple.split,
                                std::move(negated_head), triple.relation,
                                std::move(negated_tail), Variant::kNegBoth,
                                triple.id));
  return variants;
}

}  // namespace negkit
