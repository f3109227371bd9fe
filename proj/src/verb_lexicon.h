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

#ifndef NEGKIT_VERB_LEXICON_H_
#define NEGKIT_VERB_LEXICON_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace negkit::lexicon {

// past tense -> lemma, for verbs that do not take -ed.
const std::unordered_map<std::string_view, std::string_view>& IrregularPast();
// irregular past participles (for auxiliary "have" detection).
const std::unordered_set<std::string_view>& IrregularParticiples();
// third-person singular forms the suffix rules get wrong.
const std::unordered_map<std::string_view, std::string_view>&
IrregularThirdSingular();
// base forms used to pick between candidate de-inflections.
const std::unordered_set<std::string_view>& BaseVerbs();

}  // namespace negkit::lexicon

#endif  // NEGKIT_VERB_LEXICON_H_
