/* Copyright 2026 The stylprint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace stylprint {

enum class CoarsePos {
  kVerb,
  kProperNoun,
  kCommonNoun,
  kAdjective,
  kPronoun,
  kDeterminer,
  kAdverb,
  kPreposition,
  kCoordConj,
  kSubordConj,
  kInterjection,
  kPunctuation,
  kUnknown,
};

enum class FinePos {
  // VERB
  kFuture,
  kConditional,
  kPresent,
  kImperfect,
  kPastSimple,
  kPastParticiple,
  kPresentParticiple,
  kInfinitive,
  // ADJECTIVE
  kFromPastParticiple,
  // PRONOUN
  kPersonal,
  // DETERMINER
  kArticle,
  kNumber,
  kPossessive,
  kDemonstrative,
  kIndefinite,
};

inline constexpr std::array<CoarsePos, 13> kAllCoarse = {
    CoarsePos::kVerb,        CoarsePos::kProperNoun,  CoarsePos::kCommonNoun,
    CoarsePos::kAdjective,   CoarsePos::kPronoun,     CoarsePos::kDeterminer,
    CoarsePos::kAdverb,      CoarsePos::kPreposition, CoarsePos::kCoordConj,
    CoarsePos::kSubordConj,  CoarsePos::kInterjection, CoarsePos::kPunctuation,
    CoarsePos::kUnknown,
};

inline constexpr std::array<FinePos, 15> kAllFine = {
    FinePos::kFuture,         FinePos::kConditional,       FinePos::kPresent,
    FinePos::kImperfect,      FinePos::kPastSimple,        FinePos::kPastParticiple,
    FinePos::kPresentParticiple, FinePos::kInfinitive,     FinePos::kFromPastParticiple,
    FinePos::kPersonal,       FinePos::kArticle,           FinePos::kNumber,
    FinePos::kPossessive,     FinePos::kDemonstrative,     FinePos::kIndefinite,
};

/// Tag names as they appear in corpus files.
constexpr std::string_view tag_name(CoarsePos p) {
  switch (p) {
    case CoarsePos::kVerb: return "VERB";
    case CoarsePos::kProperNoun: return "PROPER_NOUN";
    case CoarsePos::kCommonNoun: return "COMMON_NOUN";
    case CoarsePos::kAdjective: return "ADJECTIVE";
    case CoarsePos::kPronoun: return "PRONOUN";
    case CoarsePos::kDeterminer: return "DETERMINER";
    case CoarsePos::kAdverb: return "ADVERB";
    case CoarsePos::kPreposition: return "PREPOSITION";
    case CoarsePos::kCoordConj: return "COORD_CONJ";
    case CoarsePos::kSubordConj: return "SUBORD_CONJ";
    case CoarsePos::kInterjection: return "INTERJECTION";
    case CoarsePos::kPunctuation: return "PUNCTUATION";
    case CoarsePos::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

constexpr std::string_view tag_name(FinePos p) {
  switch (p) {
    case FinePos::kFuture: return "FUTURE";
    case FinePos::kConditional: return "CONDITIONAL";
    case FinePos::kPresent: return "PRESENT";
    case FinePos::kImperfect: return "IMPERFECT";
    case FinePos::kPastSimple: return "PAST_SIMPLE";
    case FinePos::kPastParticiple: return "PAST_PARTICIPLE";
    case FinePos::kPresentParticiple: return "PRESENT_PARTICIPLE";
    case FinePos::kInfinitive: return "INFINITIVE";
    case FinePos::kFromPastParticiple: return "FROM_PAST_PARTICIPLE";
    case FinePos::kPersonal: return "PERSONAL";
    case FinePos::kArticle: return "ARTICLE";
    case FinePos::kNumber: return "NUMBER";
    case FinePos::kPossessive: return "POSSESSIVE";
    case FinePos::kDemonstrative: return "DEMONSTRATIVE";
    case FinePos::kIndefinite: return "INDEFINITE";
  }
  return "";
}

/// Human-readable row labels used in report tables.
constexpr std::string_view display_name(CoarsePos p) {
  switch (p) {
    case CoarsePos::kVerb: return "Verbs";
    case CoarsePos::kProperNoun: return "Proper nouns";
    case CoarsePos::kCommonNoun: return "Common nouns";
    case CoarsePos::kAdjective: return "Adjectives";
    case CoarsePos::kPronoun: return "Pronouns";
    case CoarsePos::kDeterminer: return "Determiners";
    case CoarsePos::kAdverb: return "Adverbs";
    case CoarsePos::kPreposition: return "Prepositions";
    case CoarsePos::kCoordConj: return "Coordinating conjunctions";
    case CoarsePos::kSubordConj: return "Subordinating conjunctions";
    case CoarsePos::kInterjection: return "Interjections";
    case CoarsePos::kPunctuation: return "Punctuation";
    case CoarsePos::kUnknown: return "Unknown";
  }
  return "";
}

constexpr std::string_view display_name(FinePos p) {
  switch (p) {
    case FinePos::kFuture: return "Futures";
    case FinePos::kConditional: return "Conditionals";
    case FinePos::kPresent: return "Present tenses";
    case FinePos::kImperfect: return "Imperfect tenses";
    case FinePos::kPastSimple: return "Pasts simple";
    case FinePos::kPastParticiple: return "Past participles";
    case FinePos::kPresentParticiple: return "Present participles";
    case FinePos::kInfinitive: return "Infinitives";
    case FinePos::kFromPastParticiple: return "Adjectives from past participles";
    case FinePos::kPersonal: return "Personal pronouns";
    case FinePos::kArticle: return "Articles";
    case FinePos::kNumber: return "Numbers";
    case FinePos::kPossessive: return "Possessives";
    case FinePos::kDemonstrative: return "Demonstratives";
    case FinePos::kIndefinite: return "Indefinites";
  }
  return "";
}

/// Every refinement has exactly one parent category.
constexpr CoarsePos parent(FinePos p) {
  switch (p) {
    case FinePos::kFuture:
    case FinePos::kConditional:
    case FinePos::kPresent:
    case FinePos::kImperfect:
    case FinePos::kPastSimple:
    case FinePos::kPastParticiple:
    case FinePos::kPresentParticiple:
    case FinePos::kInfinitive:
      return CoarsePos::kVerb;
    case FinePos::kFromPastParticiple:
      return CoarsePos::kAdjective;
    case FinePos::kPersonal:
      return CoarsePos::kPronoun;
    case FinePos::kArticle:
    case FinePos::kNumber:
    case FinePos::kPossessive:
    case FinePos::kDemonstrative:
    case FinePos::kIndefinite:
      return CoarsePos::kDeterminer;
  }
  return CoarsePos::kUnknown;
}

constexpr bool refines(FinePos fine, CoarsePos coarse) { return parent(fine) == coarse; }

inline std::optional<CoarsePos> parse_coarse(std::string_view s) {
  for (CoarsePos p : kAllCoarse) {
    if (tag_name(p) == s) return p;
  }
  return std::nullopt;
}

inline std::optional<FinePos> parse_fine(std::string_view s) {
  for (FinePos p : kAllFine) {
    if (tag_name(p) == s) return p;
  }
  return std::nullopt;
}

}  // namespace stylprint
