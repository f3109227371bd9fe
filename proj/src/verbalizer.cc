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

#include "negkit/verbalizer.h"

#include <algorithm>
#include <cctype>

namespace negkit {
namespace {

bool HasToken(const std::string& text, std::string_view wanted) {
  for (const auto& token : SplitTokens(text)) {
    std::string_view view = token;
    // "PersonY's" still names PersonY.
    while (!view.empty() && !std::isalnum(static_cast<unsigned char>(view.back()))) {
      view.remove_suffix(1);
    }
    if (EndsWith(view, "'s")) view.remove_suffix(2);
    if (view == wanted) return true;
  }
  return false;
}

}  // namespace

std::string ExtractObject(const EventText& head) {
  if (HasToken(head.text, "PersonY")) return "PersonY";
  if (HasToken(head.text, "PersonZ")) return "PersonZ";
  return "others";
}

std::string RelationPhrase(Relation relation, const EventText& head) {
  std::string phrase(RelationTemplate(relation));
  if (RelationTakesObject(relation)) {
    static constexpr std::string_view kSlot = "{object}";
    auto pos = phrase.find(kSlot);
    phrase.replace(pos, kSlot.size(), ExtractObject(head));
  }
  return phrase;
}

Statement Verbalize(const Triple& triple) {
  std::string text = "If " + triple.head.text + ", then " +
                     RelationPhrase(triple.relation, triple.head) + " " +
                     triple.tail.text;
  char last = text.back();
  if (last != '.' && last != '!' && last != '?') text.push_back('.');
  return Statement{std::move(text), triple.id};
}

std::string StatementsToJsonl(std::span<const Triple> triples) {
  std::string out;
  for (const auto& triple : triples) {
    Json row;
    row["triple_id"] = triple.id;
    row["statement"] = Verbalize(triple).text;
    out += row.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace negkit
