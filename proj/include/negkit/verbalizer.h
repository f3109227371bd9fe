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

#ifndef NEGKIT_VERBALIZER_H_
#define NEGKIT_VERBALIZER_H_

#include <span>
#include <string>

#include "negkit/corpus_model.h"

namespace negkit {

struct Statement {
  std::string text;
  TripleId triple_id;
};

// "PersonY" if the token occurs in the if-event, else "PersonZ" if it occurs,
// else "others".
std::string ExtractObject(const EventText& head);

// The relation template with its {object} slot filled from `head`.
std::string RelationPhrase(Relation relation, const EventText& head);

// "If <head>, then <relation phrase> <tail>." The period is omitted when the
// tail already ends in sentence punctuation.
Statement Verbalize(const Triple& triple);

// JSONL rows {triple_id, statement}.
std::string StatementsToJsonl(std::span<const Triple> triples);

}  // namespace negkit

#endif  // NEGKIT_VERBALIZER_H_
