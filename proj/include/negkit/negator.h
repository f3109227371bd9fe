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

#ifndef NEGKIT_NEGATOR_H_
#define NEGKIT_NEGATOR_H_

#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negkit/corpus_model.h"

namespace negkit {

class LlmClient;
struct PromptAsset;

enum class NegationRule { kAuxInsert, kDoSupport, kCuePrefix };

std::string_view NegationRuleName(NegationRule rule);

struct NegationRuleTrace {
  NegationRule rule_applied = NegationRule::kCuePrefix;
  std::size_t cue_position = 0;  // index of "not" in result_tokens
  std::vector<std::string> original_tokens;
  std::vector<std::string> result_tokens;
};

struct NegationResult {
  EventText event;
  NegationRuleTrace trace;
};

// Verb morphology backed by a bundled lemma table plus suffix heuristics.
enum class VerbForm { kBase, kThirdSingular, kPast, kUnknown };

struct VerbAnalysis {
  VerbForm form = VerbForm::kUnknown;
  std::string lemma;
};

// Classifies a lowercased token. kUnknown means the token is not recognized
// as an inflected or base verb.
VerbAnalysis AnalyzeVerb(std::string_view token);
// Lemma for token-overlap comparisons: verbs are de-inflected, everything else
// is lowercased.
std::string LemmatizeToken(std::string_view token);

// Negates an if-event clause. Inserts "not" after a leading auxiliary or modal,
// otherwise applies do-support ("does not" / "did not" / "do not").
// Throws kAlreadyNegated for negated input and kUnnegatableEvent when no verb
// can be located.
NegationResult NegateHead(const EventText& event);

// Prefixes "not" to a then-event. Throws kAlreadyNegated if the event is
// negated or already starts with the cue.
NegationResult NegateTail(const EventText& event);

enum class EventSide { kHead, kTail };

struct GenerativeNegatorOptions {
  std::string model_name;
  double temperature = 0.0;
  int max_output_tokens = 64;
  // Minimum fraction of the original content tokens that must survive.
  double min_overlap = 0.8;
  bool fallback_to_rules = true;
};

struct GenerativeNegation {
  EventText event;
  bool fell_back = false;
};

// Asks a chat backend for the rewrite, accepting it only if it contains "not"
// and keeps enough of the original content tokens; otherwise falls back to the
// rule engine (or throws kRewriteRejected when fallback is disabled).
class GenerativeNegator {
 public:
  GenerativeNegator(LlmClient& client, const PromptAsset& exemplars,
                    GenerativeNegatorOptions options);

  GenerativeNegation Negate(const EventText& event, EventSide side);
  std::size_t fallback_count() const { return fallbacks_.load(); }

 private:
  LlmClient& client_;
  const PromptAsset& exemplars_;
  GenerativeNegatorOptions options_;
  std::atomic<std::size_t> fallbacks_{0};
};

// Fraction of the original's content tokens (lemmatized, stopwords removed)
// that also occur in the rewrite. 1.0 when the original has none.
double ContentTokenOverlap(std::string_view original, std::string_view rewrite);
bool ContainsNegationCue(std::string_view text);

using EventNegationFn = std::function<EventText(const EventText&)>;

// ATOMIC originals yield NEG_IF, NEG_THEN and NEG_BOTH; ANION originals, whose
// heads are already negated, yield NEG_BOTH only. Throws kNotAnOriginal for
// non-original input. The rule engine is used unless negators are supplied.
std::vector<Triple> GenerateVariants(const Triple& triple);
std::vector<Triple> GenerateVariants(const Triple& triple,
                                     const EventNegationFn& negate_head,
                                     const EventNegationFn& negate_tail);

}  // namespace negkit

#endif  // NEGKIT_NEGATOR_H_
