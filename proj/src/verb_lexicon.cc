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

#include "verb_lexicon.h"

namespace negkit::lexicon {

const std::unordered_map<std::string_view, std::string_view>& IrregularPast() {
  static const auto* table =
      new std::unordered_map<std::string_view, std::string_view>{
          {"arose", "arise"},     {"ate", "eat"},         {"awoke", "awake"},
          {"bore", "bear"},       {"beat", "beat"},       {"became", "become"},
          {"began", "begin"},     {"bent", "bend"},       {"bet", "bet"},
          {"bit", "bite"},        {"bled", "bleed"},      {"blew", "blow"},
          {"broke", "break"},     {"bred", "breed"},      {"brought", "bring"},
          {"built", "build"},     {"burnt", "burn"},      {"burst", "burst"},
          {"bought", "buy"},      {"caught", "catch"},    {"chose", "choose"},
          {"clung", "cling"},     {"came", "come"},       {"cost", "cost"},
          {"crept", "creep"},     {"cut", "cut"},         {"dealt", "deal"},
          {"dug", "dig"},         {"dove", "dive"},       {"drew", "draw"},
          {"dreamt", "dream"},    {"drank", "drink"},     {"drove", "drive"},
          {"fell", "fall"},       {"fed", "feed"},        {"felt", "feel"},
          {"fought", "fight"},    {"found", "find"},      {"fled", "flee"},
          {"flung", "fling"},     {"flew", "fly"},        {"forbade", "forbid"},
          {"forgot", "forget"},   {"forgave", "forgive"}, {"froze", "freeze"},
          {"got", "get"},         {"gave", "give"},       {"went", "go"},
          {"ground", "grind"},    {"grew", "grow"},       {"hung", "hang"},
          {"heard", "hear"},      {"hid", "hide"},        {"hit", "hit"},
          {"held", "hold"},       {"hurt", "hurt"},       {"kept", "keep"},
          {"knelt", "kneel"},     {"knew", "know"},       {"laid", "lay"},
          {"led", "lead"},        {"leapt", "leap"},      {"learnt", "learn"},
          {"left", "leave"},      {"lent", "lend"},       {"let", "let"},
          {"lay", "lie"},         {"lit", "light"},       {"lost", "lose"},
          {"made", "make"},       {"meant", "mean"},      {"met", "meet"},
          {"mistook", "mistake"}, {"overcame", "overcome"},
          {"overheard", "overhear"},                      {"overslept", "oversleep"},
          {"overtook", "overtake"},                       {"paid", "pay"},
          {"put", "put"},         {"quit", "quit"},       {"read", "read"},
          {"rode", "ride"},       {"rang", "ring"},       {"rose", "rise"},
          {"ran", "run"},         {"said", "say"},        {"saw", "see"},
          {"sought", "seek"},     {"sold", "sell"},       {"sent", "send"},
          {"set", "set"},         {"shook", "shake"},     {"shed", "shed"},
          {"shone", "shine"},     {"shot", "shoot"},      {"showed", "show"},
          {"shrank", "shrink"},   {"shut", "shut"},       {"sang", "sing"},
          {"sank", "sink"},       {"sat", "sit"},         {"slept", "sleep"},
          {"slid", "slide"},      {"spoke", "speak"},     {"sped", "speed"},
          {"spent", "spend"},     {"spilt", "spill"},     {"spun", "spin"},
          {"spat", "spit"},       {"split", "split"},     {"spread", "spread"},
          {"sprang", "spring"},   {"stood", "stand"},     {"stole", "steal"},
          {"stuck", "stick"},     {"stung", "sting"},     {"stank", "stink"},
          {"struck", "strike"},   {"strove", "strive"},   {"swore", "swear"},
          {"swept", "sweep"},     {"swam", "swim"},       {"swung", "swing"},
          {"took", "take"},       {"taught", "teach"},    {"tore", "tear"},
          {"told", "tell"},       {"thought", "think"},   {"threw", "throw"},
          {"understood", "understand"},                   {"undertook", "undertake"},
          {"upset", "upset"},     {"woke", "wake"},       {"wore", "wear"},
          {"wove", "weave"},      {"wept", "weep"},       {"won", "win"},
          {"wound", "wind"},      {"withdrew", "withdraw"},
          {"wrote", "write"},     {"had", "have"},        {"did", "do"},
          {"was", "be"},          {"were", "be"},
      };
  return *table;
}

const std::unordered_set<std::string_view>& IrregularParticiples() {
  static const auto* table = new std::unordered_set<std::string_view>{
      "arisen",  "awoken",    "been",    "borne",   "beaten",  "become",
      "begun",   "bent",      "bitten",  "blown",   "broken",  "brought",
      "built",   "bought",    "caught",  "chosen",  "come",    "cut",
      "dealt",   "done",      "drawn",   "drunk",   "driven",  "eaten",
      "fallen",  "fed",       "felt",    "fought",  "found",   "flown",
      "forgotten", "forgiven", "frozen", "got",     "gotten",  "given",
      "gone",    "grown",     "hung",    "heard",   "hidden",  "hit",
      "held",    "hurt",      "kept",    "known",   "laid",    "led",
      "left",    "lent",      "let",     "lain",    "lost",    "made",
      "meant",   "met",       "paid",    "put",     "read",    "ridden",
      "rung",    "risen",     "run",     "said",    "seen",    "sold",
      "sent",    "set",       "shaken",  "shown",   "shut",    "sung",
      "sunk",    "sat",       "slept",   "spoken",  "spent",   "spread",
      "stood",   "stolen",    "stuck",   "struck",  "sworn",   "swum",
      "taken",   "taught",    "torn",    "told",    "thought", "thrown",
      "understood", "woken",  "worn",    "won",     "written", "had",
  };
  return *table;
}

const std::unordered_map<std::string_view, std::string_view>&
IrregularThirdSingular() {
  static const auto* table =
      new std::unordered_map<std::string_view, std::string_view>{
          {"has", "have"}, {"does", "do"}, {"goes", "go"},   {"is", "be"},
          {"says", "say"}, {"buys", "buy"}, {"pays", "pay"}, {"plays", "play"},
          {"stays", "stay"}, {"lies", "lie"}, {"dies", "die"}, {"ties", "tie"},
          {"uses", "use"}, {"loses", "lose"}, {"chooses", "choose"},
          {"closes", "close"}, {"causes", "cause"}, {"raises", "raise"},
          {"refuses", "refuse"}, {"excuses", "excuse"}, {"praises", "praise"},
          {"pauses", "pause"}, {"rises", "rise"}, {"surprises", "surprise"},
          {"promises", "promise"}, {"exercises", "exercise"},
          {"practices", "practice"}, {"notices", "notice"},
          {"advises", "advise"}, {"apologizes", "apologize"},
          {"organizes", "organize"}, {"realizes", "realize"},
          {"recognizes", "recognize"}, {"freezes", "freeze"},
          {"sneezes", "sneeze"}, {"squeezes", "squeeze"},
          {"breathes", "breathe"}, {"bathes", "bathe"},
          {"arrives", "arrive"}, {"loves", "love"}, {"moves", "move"},
          {"gives", "give"}, {"lives", "live"}, {"leaves", "leave"},
          {"saves", "save"}, {"drives", "drive"}, {"dives", "dive"},
          {"receives", "receive"}, {"believes", "believe"},
          {"achieves", "achieve"}, {"solves", "solve"},
          {"involves", "involve"}, {"serves", "serve"},
          {"deserves", "deserve"}, {"observes", "observe"},
          {"behaves", "behave"}, {"shaves", "shave"}, {"waves", "wave"},
          {"places", "place"}, {"faces", "face"}, {"races", "race"},
          {"chases", "chase"}, {"purchases", "purchase"},
          {"releases", "release"}, {"increases", "increase"},
          {"decreases", "decrease"}, {"pleases", "please"},
          {"teases", "tease"}, {"eases", "ease"}, {"dances", "dance"},
          {"convinces", "convince"}, {"produces", "produce"},
          {"reduces", "reduce"}, {"introduces", "introduce"},
          {"forces", "force"}, {"announces", "announce"},
          {"judges", "judge"}, {"changes", "change"},
          {"charges", "charge"}, {"manages", "manage"},
          {"arranges", "arrange"}, {"encourages", "encourage"},
          {"damages", "damage"}, {"engages", "engage"},
          {"challenges", "challenge"}, {"emerges", "emerge"},
          {"urges", "urge"}, {"pledges", "pledge"}, {"edges", "edge"},
          {"nudges", "nudge"}, {"massages", "massage"},
      };
  return *table;
}

const std::unordered_set<std::string_view>& BaseVerbs() {
  static const auto* table = new std::unordered_set<std::string_view>{
      "accept", "accompany", "accuse", "ache", "achieve", "act", "add",
      "admire", "admit", "adopt", "advise", "afford", "agree", "aim", "allow",
      "announce", "annoy", "answer", "apologize", "appear", "applaud",
      "apply", "appreciate", "approach", "approve", "argue", "arrange",
      "arrest", "arrive", "ask", "assist", "attach", "attack", "attempt",
      "attend", "attract", "avoid", "bake", "bang", "bathe", "battle", "be",
      "beg", "behave", "believe", "belong", "bet", "blame", "bless", "block",
      "boil", "book", "borrow", "bother", "bounce", "bow", "box", "brake",
      "breathe", "brush", "bump", "burn", "bury", "buy", "call", "calm",
      "camp", "cancel", "care", "carry", "carve", "cause", "celebrate",
      "challenge", "change", "charge", "chase", "chat", "cheat", "check",
      "cheer", "chew", "choke", "chop", "clap", "clean", "clear", "climb",
      "close", "coach", "collect", "comb", "comfort", "command", "commit",
      "compare", "compete", "complain", "complete", "compliment", "concentrate",
      "concern", "confess", "confuse", "congratulate", "connect", "consider",
      "contain", "continue", "control", "convince", "cook", "copy", "correct",
      "cough", "count", "cover", "crash", "crawl", "create", "cross", "crush",
      "cry", "cure", "curl", "cycle", "damage", "dance", "dare", "date",
      "deceive", "decide", "declare", "decorate", "defeat", "defend",
      "delay", "delight", "deliver", "deny", "depend", "describe", "deserve",
      "design", "destroy", "develop", "die", "disagree", "disappear",
      "discover", "discuss", "dislike", "divide", "do", "donate", "doubt",
      "drag", "drain", "dress", "drip", "drop", "drown", "dry", "earn",
      "educate", "embarrass", "employ", "empty", "encourage", "end", "enjoy",
      "enter", "entertain", "escape", "examine", "excite", "excuse",
      "exercise", "exist", "expand", "expect", "explain", "explode", "explore",
      "express", "face", "fail", "fancy", "fasten", "fax", "fear", "fence",
      "fetch", "file", "fill", "film", "finish", "fit", "fix", "flap",
      "flash", "float", "flood", "flow", "fold", "follow", "force", "forget",
      "forgive", "form", "free", "frighten", "fry", "gain", "gather", "gaze",
      "glow", "glue", "grab", "grade", "graduate", "greet", "grin", "grip",
      "groan", "guarantee", "guard", "guess", "guide", "hammer", "hand",
      "handle", "hang", "happen", "harm", "hate", "have", "head", "heal",
      "heat", "help", "hike", "hire", "hop", "hope", "hug", "hum", "hunt",
      "hurry", "identify", "ignore", "imagine", "impress", "improve",
      "include", "increase", "influence", "inform", "inject", "injure",
      "insist", "inspect", "instruct", "intend", "interest", "interrupt",
      "introduce", "invent", "invite", "iron", "irritate", "itch", "jail",
      "jam", "jog", "join", "joke", "judge", "juggle", "jump", "kick", "kill",
      "kiss", "kneel", "knit", "knock", "knot", "label", "land", "last",
      "laugh", "launch", "learn", "level", "license", "lick", "lie",
      "lighten", "like", "list", "listen", "live", "load", "lock", "long",
      "look", "love", "manage", "march", "mark", "marry", "match", "mate",
      "matter", "measure", "melt", "memorize", "mend", "mention", "milk",
      "mine", "miss", "mix", "moan", "move", "mourn", "mug", "multiply",
      "murder", "nail", "name", "need", "nest", "nod", "note", "notice",
      "number", "obey", "object", "observe", "obtain", "occur", "offend",
      "offer", "open", "order", "organize", "overflow", "owe", "own", "pack",
      "paddle", "paint", "park", "part", "pass", "paste", "pat", "pause",
      "pay", "peck", "pedal", "peel", "perform", "permit", "phone", "pick",
      "pinch", "pine", "place", "plan", "plant", "play", "please", "plug",
      "point", "poke", "polish", "pop", "possess", "post", "pour", "practice",
      "pray", "preach", "precede", "prefer", "prepare", "present", "preserve",
      "press", "pretend", "prevent", "prick", "print", "produce", "program",
      "promise", "propose", "protect", "provide", "pull", "pump", "punch",
      "puncture", "punish", "purchase", "push", "question", "queue", "race",
      "rain", "raise", "reach", "realize", "receive", "recognize", "record",
      "reduce", "reflect", "refuse", "regret", "reign", "reject", "rejoice",
      "relax", "release", "rely", "remain", "remember", "remind", "remove",
      "rent", "repair", "repeat", "replace", "reply", "report", "reproduce",
      "request", "rescue", "research", "rest", "retire", "return", "reveal",
      "rhyme", "rinse", "risk", "rob", "rock", "roll", "rot", "rub", "ruin",
      "rule", "rush", "sack", "sail", "satisfy", "save", "saw", "scare",
      "scatter", "scold", "scorch", "scrape", "scratch", "scream", "screw",
      "scribble", "scrub", "seal", "search", "separate", "serve", "settle",
      "shade", "share", "shave", "shelter", "shiver", "shock", "shop",
      "shout", "shrug", "sigh", "sign", "signal", "sin", "sip", "ski", "skip",
      "slap", "slip", "slow", "smash", "smell", "smile", "smoke", "snatch",
      "sneeze", "sniff", "snore", "snow", "soak", "solve", "soothe", "sort",
      "sound", "spare", "spark", "sparkle", "spell", "spill", "spoil",
      "spot", "spray", "sprout", "squash", "squeak", "squeal", "squeeze",
      "stain", "stamp", "stare", "start", "stay", "steer", "step", "stir",
      "stitch", "stop", "store", "strap", "strengthen", "stretch", "strip",
      "stroke", "study", "stuff", "subtract", "succeed", "suck", "suffer",
      "suggest", "suit", "supply", "support", "suppose", "surprise",
      "surround", "suspect", "suspend", "switch", "talk", "tame", "tap",
      "taste", "tease", "telephone", "tempt", "terrify", "test", "thank",
      "thaw", "tick", "tickle", "tie", "time", "tip", "tire", "touch", "tour",
      "tow", "trace", "trade", "train", "transport", "trap", "travel",
      "treat", "tremble", "trick", "trip", "trot", "trouble", "trust", "try",
      "tug", "tumble", "turn", "twist", "type", "undress", "unfasten",
      "unite", "unlock", "unpack", "untidy", "use", "vanish", "visit",
      "vote", "wail", "wait", "walk", "wander", "want", "warm", "warn",
      "wash", "waste", "watch", "water", "wave", "weigh", "welcome", "whine",
      "whip", "whirl", "whisper", "whistle", "wink", "wipe", "wish", "wobble",
      "wonder", "work", "worry", "wrap", "wreck", "wrestle", "wriggle",
      "yawn", "yell", "zip", "zoom", "abandon", "accomplish", "adjust",
      "admire", "arise", "awake", "bear", "beat", "become", "begin", "bend",
      "bite", "bleed", "blow", "break", "breed", "bring", "build", "burst",
      "catch", "choose", "cling", "come", "cost", "creep", "cut", "deal",
      "dig", "dive", "draw", "dream", "drink", "drive", "eat", "fall", "feed",
      "feel", "fight", "find", "flee", "fling", "fly", "forbid", "freeze",
      "get", "give", "go", "grind", "grow", "hear", "hide", "hit", "hold",
      "hurt", "keep", "know", "lay", "lead", "leap", "leave", "lend", "let",
      "light", "lose", "make", "mean", "meet", "mistake", "overcome", "put",
      "quit", "read", "ride", "ring", "rise", "run", "say", "see", "seek",
      "sell", "send", "set", "shake", "shed", "shine", "shoot", "show",
      "shrink", "shut", "sing", "sink", "sit", "sleep", "slide", "speak",
      "speed", "spend", "spin", "spit", "split", "spread", "spring", "stand",
      "steal", "stick", "sting", "stink", "strike", "strive", "swear",
      "sweep", "swim", "swing", "take", "teach", "tear", "tell", "think",
      "throw", "understand", "undertake", "upset", "wake", "wear", "weave",
      "weep", "win", "wind", "withdraw", "write", "browse", "chase",
      "volunteer", "babysit", "text", "email", "google", "post", "tweet",
      "vacuum", "mop", "recycle", "budget", "invest", "interview", "hug",
      "befriend", "ask", "argue", "lecture", "gossip", "flirt", "propose",
      "ignore", "insult", "praise", "comfort", "scold", "feed", "adopt",
      "hear", "sue", "hope", "stumble", "attend", "audition", "bargain",
      "bully", "compose", "confront", "conquer", "cuddle", "dedicate",
      "devote", "disappoint", "dodge", "dump", "elect", "embrace", "evacuate",
      "fake", "flip", "forge", "frown", "grill", "groom", "harass", "hesitate",
      "hitchhike", "host", "inherit", "investigate", "kidnap", "lift", "lure",
      "mock", "negotiate", "nominate", "oversleep", "panic", "participate",
      "persuade", "pester", "pet", "photograph", "pin", "plead", "prank",
      "prosper", "protest", "pursue", "rake", "rebel", "recommend", "recover",
      "register", "rehearse", "relocate", "renovate", "resign", "respond",
      "retrieve", "ruin", "scan", "score", "sketch", "skate", "sled",
      "snack", "spy", "stab", "starve", "steam", "sunbathe", "surf",
      "survive", "swap", "tackle", "tan", "thrive", "toast", "tutor", "upload",
      "vomit", "wed", "weed", "whisk", "yank",
  };
  return *table;
}

}  // namespace negkit::lexicon
