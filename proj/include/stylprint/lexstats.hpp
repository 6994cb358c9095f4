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

// Lexical statistics: frequency tables, per-mille densities, the
// over/under-use index S, part-of-speech profiles and group aggregates,
// and rank/frequency comparison of the most frequent lemmas.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "stylprint/corpus.hpp"
#include "stylprint/error.hpp"
#include "stylprint/pos.hpp"

namespace stylprint {

using Rational = boost::rational<std::int64_t>;

enum class KeyMode { kLemma, kLemmaAndCoarse, kCoarse, kFine };

/// Separator between lemma and tag in kLemmaAndCoarse keys; tabs never occur in lemmas.
inline constexpr char kKeySeparator = '\t';

inline std::string frequency_key(const Token& t, KeyMode mode) {
  switch (mode) {
    case KeyMode::kLemma: return t.lemma;
    case KeyMode::kLemmaAndCoarse: return t.lemma + kKeySeparator + std::string(tag_name(t.coarse));
    case KeyMode::kCoarse: return std::string(tag_name(t.coarse));
    case KeyMode::kFine: return t.fine ? std::string(tag_name(*t.fine)) : std::string();
  }
  return {};
}

struct FrequencyTable {
  KeyMode key_mode = KeyMode::kLemma;
  std::map<std::string, std::size_t> counts;  // no zero entries
  std::size_t total_words = 0;

  std::size_t count(const std::string& key) const {
    const auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Counts over word tokens. In kFine mode only refined tokens are counted.
template <TextSource Source>
FrequencyTable frequency_table(const Source& source, KeyMode mode) {
  const auto texts = texts_of(source);
  FrequencyTable table;
  table.key_mode = mode;
  table.total_words = word_count(texts);
  if (table.total_words == 0) throw AnalysisError(AnalysisError::Kind::kEmptyCorpus, "corpus has no word");
  for (const AnnotatedText& text : texts)
    for (const Sentence& s : text.sentences())
      for (const Token& t : s.tokens()) {
        if (!t.is_word()) continue;
        if (mode == KeyMode::kFine && !t.fine) continue;
        ++table.counts[frequency_key(t, mode)];
      }
  return table;
}

/// Occurrences per thousand words.
struct Density {
  double per_mille = 0.0;
  friend auto operator<=>(const Density&, const Density&) = default;
};

/// 1000 * count / N as an exact fraction.
inline Rational density_exact(std::size_t count, std::size_t total) {
  if (total == 0) throw AnalysisError(AnalysisError::Kind::kZeroCorpus, "density over zero words");
  if (count > total) throw AnalysisError(AnalysisError::Kind::kInvalidCounts, "count exceeds total");
  return Rational(static_cast<std::int64_t>(count) * 1000, static_cast<std::int64_t>(total));
}

inline Density density(std::size_t count, std::size_t total) {
  return {boost::rational_cast<double>(density_exact(count, total))};
}

struct RelativeDiff {
  double percent = 0.0;  // meaningless when infinite
  bool infinite = false;
};

/// 100 * (other - ref) / ref; infinite when ref = 0 < other, 0 when both are 0.
inline RelativeDiff relative_diff(Density ref, Density other) {
  if (ref.per_mille == 0.0) {
    if (other.per_mille > 0.0) return {0.0, true};
    return {0.0, false};
  }
  return {100.0 * (other.per_mille - ref.per_mille) / ref.per_mille, false};
}

enum class Verdict { kUnderuse, kOveruse, kNotSignificant };
enum class SignificanceLevel { kFivePercent, kOnePercent };

constexpr std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kUnderuse: return "UNDERUSE";
    case Verdict::kOveruse: return "OVERUSE";
    case Verdict::kNotSignificant: return "NOT_SIGNIFICANT";
  }
  return "";
}

inline Verdict verdict_at(double s, SignificanceLevel level) {
  const double lo = level == SignificanceLevel::kFivePercent ? 0.05 : 0.01;
  if (s < lo) return Verdict::kUnderuse;
  if (s > 1.0 - lo) return Verdict::kOveruse;
  return Verdict::kNotSignificant;
}

struct SignificanceScore {
  double s = 0.0;
  Verdict at_5pct = Verdict::kNotSignificant;
  Verdict at_1pct = Verdict::kNotSignificant;

  Verdict at(SignificanceLevel level) const {
    return level == SignificanceLevel::kFivePercent ? at_5pct : at_1pct;
  }
};

/// P(X <= k) for X ~ Hypergeometric(population N, successes K, draws n).
/// Any integer k is accepted: the result is 0 below the support and 1 above it.
///
/// Weights are built by the pmf ratio recurrence outward from the mode
/// (weight 1 at the mode), so no factorials or log-gamma differences are
/// formed; terms below 1e-40 of the mode weight are dropped. The tail that
/// does not contain the mode is summed directly, which keeps the result
/// accurate when it is near 0 or near 1.
inline double hypergeometric_cdf(std::int64_t k, std::int64_t n, std::int64_t K, std::int64_t N) {
  if (N < 0 || K < 0 || n < 0 || K > N || n > N)
    throw AnalysisError(AnalysisError::Kind::kInvalidCounts, "invalid hypergeometric parameters");
  const std::int64_t lo = std::max<std::int64_t>(0, n + K - N);
  const std::int64_t hi = std::min(n, K);
  if (k < lo) return 0.0;
  if (k >= hi) return 1.0;

  using real = long double;
  const std::int64_t rest = N - K - n;  // so that N-K-(n-x) = rest + x
  std::int64_t mode = static_cast<std::int64_t>(
      (static_cast<real>(n + 1) * static_cast<real>(K + 1)) / static_cast<real>(N + 2));
  mode = std::clamp(mode, lo, hi);

  constexpr real kCutoff = 1e-40L;
  real below = 0, above = 0;  // sums over x <= k and x > k, excluding the mode term
  real w = 1;
  for (std::int64_t x = mode; x < hi; ++x) {  // w(x) -> w(x+1)
    w *= static_cast<real>(K - x) * static_cast<real>(n - x) /
         (static_cast<real>(x + 1) * static_cast<real>(rest + x + 1));
    (x + 1 <= k ? below : above) += w;
    if (w < kCutoff) break;
  }
  w = 1;
  for (std::int64_t x = mode; x > lo; --x) {  // w(x) -> w(x-1)
    w *= static_cast<real>(x) * static_cast<real>(rest + x) /
         (static_cast<real>(K - x + 1) * static_cast<real>(n - x + 1));
    (x - 1 <= k ? below : above) += w;
    if (w < kCutoff) break;
  }
  const real total = below + above + 1;
  if (k >= mode) return static_cast<double>(1 - above / total);
  return static_cast<double>(below / total);
}

/// Over/under-use index of a category: the lower tail P(X <= k) of drawing
/// k occurrences in an n-word sample out of a union of N words holding K
/// occurrences. Near 0 flags underuse, near 1 overuse.
inline SignificanceScore significance(std::int64_t k, std::int64_t n, std::int64_t K, std::int64_t N) {
  if (k < 0 || n < 0 || K < 0 || N < 0 || n > N || K > N || k > n || k > K || K - k > N - n)
    throw AnalysisError(AnalysisError::Kind::kInvalidCounts,
                        "invalid counts (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                            ", K=" + std::to_string(K) + ", N=" + std::to_string(N) + ")");
  if (K == 0) throw AnalysisError(AnalysisError::Kind::kDegenerateCategory, "category absent from both corpora");
  const double s = hypergeometric_cdf(k, n, K, N);
  return {s, verdict_at(s, SignificanceLevel::kFivePercent), verdict_at(s, SignificanceLevel::kOnePercent)};
}

/// A part-of-speech row key: a coarse category or one of its refinements.
using PosTag = std::variant<CoarsePos, FinePos>;

inline std::string_view tag_name(const PosTag& tag) {
  return std::visit([](auto t) { return tag_name(t); }, tag);
}
inline std::string_view display_name(const PosTag& tag) {
  return std::visit([](auto t) { return display_name(t); }, tag);
}

struct PosProfile {
  std::size_t total_words = 0;
  std::map<CoarsePos, std::size_t> coarse_counts;  // present tags only, punctuation excluded
  std::map<FinePos, std::size_t> fine_counts;
  std::map<CoarsePos, Density> coarse;
  std::map<FinePos, Density> fine;
  double unknown_share = 0.0;  // fraction of words tagged UNKNOWN
  bool unknown_warning = false;

  std::size_t count(const PosTag& tag) const {
    if (const auto* c = std::get_if<CoarsePos>(&tag)) {
      const auto it = coarse_counts.find(*c);
      return it == coarse_counts.end() ? 0 : it->second;
    }
    const auto it = fine_counts.find(std::get<FinePos>(tag));
    return it == fine_counts.end() ? 0 : it->second;
  }
  Density density_of(const PosTag& tag) const { return density(count(tag), total_words); }
};

/// Per-mille density of every coarse and fine tag present.
/// Flags `unknown_warning` when more than 5% of the words are UNKNOWN.
template <TextSource Source>
PosProfile pos_density_profile(const Source& source) {
  const auto texts = texts_of(source);
  PosProfile p;
  p.total_words = word_count(texts);
  if (p.total_words == 0) throw AnalysisError(AnalysisError::Kind::kEmptyCorpus, "corpus has no word");
  for (const AnnotatedText& text : texts)
    for (const Sentence& s : text.sentences())
      for (const Token& t : s.tokens()) {
        if (!t.is_word()) continue;
        ++p.coarse_counts[t.coarse];
        if (t.fine) ++p.fine_counts[*t.fine];
      }
  for (const auto& [tag, n] : p.coarse_counts) p.coarse[tag] = density(n, p.total_words);
  for (const auto& [tag, n] : p.fine_counts) p.fine[tag] = density(n, p.total_words);
  p.unknown_share = static_cast<double>(p.count(CoarsePos::kUnknown)) / static_cast<double>(p.total_words);
  p.unknown_warning = p.unknown_share > 0.05;
  return p;
}

/// Row order of the category comparison table: each coarse category followed by its refinements.
inline std::vector<PosTag> standard_pos_rows() {
  using C = CoarsePos;
  using F = FinePos;
  return {C::kVerb,        F::kFuture,    F::kConditional,        F::kPresent,      F::kImperfect,
          F::kPastSimple,  F::kPastParticiple, F::kPresentParticiple, F::kInfinitive, C::kProperNoun,
          C::kCommonNoun,  C::kAdjective, F::kFromPastParticiple, C::kPronoun,      F::kPersonal,
          C::kDeterminer,  F::kArticle,   F::kNumber,             F::kPossessive,   F::kDemonstrative,
          F::kIndefinite,  C::kAdverb,    C::kPreposition,        C::kCoordConj,    C::kSubordConj};
}

struct ComparisonRow {
  std::string key;
  std::size_t count_ref = 0;
  std::size_t count_other = 0;
  Density f_ref;
  Density f_other;
  RelativeDiff rel_diff;
  std::optional<SignificanceScore> s;  // absent when the key occurs in neither corpus
  std::optional<std::size_t> rank_ref;
  std::optional<std::size_t> rank_other;
};

/// Builds a row from raw counts; S uses k = count in other, n = N_other,
/// K = combined count, N = N_ref + N_other.
inline ComparisonRow make_row(std::string key, std::size_t count_ref, std::size_t n_ref,
                              std::size_t count_other, std::size_t n_other) {
  ComparisonRow row;
  row.key = std::move(key);
  row.count_ref = count_ref;
  row.count_other = count_other;
  row.f_ref = density(count_ref, n_ref);
  row.f_other = density(count_other, n_other);
  row.rel_diff = relative_diff(row.f_ref, row.f_other);
  const auto K = static_cast<std::int64_t>(count_ref + count_other);
  if (K > 0)
    row.s = significance(static_cast<std::int64_t>(count_other), static_cast<std::int64_t>(n_other), K,
                         static_cast<std::int64_t>(n_ref + n_other));
  return row;
}

template <TextSource A, TextSource B>
std::vector<ComparisonRow> compare_profiles(const A& ref, const B& other, const std::vector<PosTag>& tags) {
  const PosProfile pr = pos_density_profile(ref);
  const PosProfile po = pos_density_profile(other);
  std::vector<ComparisonRow> rows;
  rows.reserve(tags.size());
  for (const PosTag& tag : tags)
    rows.push_back(make_row(std::string(tag_name(tag)), pr.count(tag), pr.total_words, po.count(tag),
                            po.total_words));
  return rows;
}

inline constexpr std::array<CoarsePos, 4> kVerbGroup = {CoarsePos::kVerb, CoarsePos::kPronoun,
                                                        CoarsePos::kAdverb, CoarsePos::kSubordConj};
inline constexpr std::array<CoarsePos, 6> kNounGroup = {CoarsePos::kCommonNoun, CoarsePos::kProperNoun,
                                                        CoarsePos::kAdjective,  CoarsePos::kDeterminer,
                                                        CoarsePos::kPreposition, CoarsePos::kCoordConj};

struct GroupDensities {
  Density verb_group;
  Density noun_group;
};

/// Sums coarse densities into the verb and noun groups. Missing tags count as 0.
inline GroupDensities group_densities(const std::map<CoarsePos, Density>& coarse) {
  auto sum = [&](const auto& members) {
    double total = 0.0;
    for (CoarsePos p : members)
      if (const auto it = coarse.find(p); it != coarse.end()) total += it->second.per_mille;
    return Density{total};
  };
  return {sum(kVerbGroup), sum(kNounGroup)};
}

inline GroupDensities group_densities(const PosProfile& profile) { return group_densities(profile.coarse); }

struct GroupCounts {
  std::size_t verb_group = 0;
  std::size_t noun_group = 0;
};

inline GroupCounts group_counts(const PosProfile& profile) {
  GroupCounts g;
  for (CoarsePos p : kVerbGroup) g.verb_group += profile.count(p);
  for (CoarsePos p : kNounGroup) g.noun_group += profile.count(p);
  return g;
}

/// The two group rows ("VERB_GROUP", "NOUN_GROUP") with S from the group counts.
template <TextSource A, TextSource B>
std::vector<ComparisonRow> compare_groups(const A& ref, const B& other) {
  const PosProfile pr = pos_density_profile(ref);
  const PosProfile po = pos_density_profile(other);
  const GroupCounts gr = group_counts(pr), go = group_counts(po);
  return {make_row("VERB_GROUP", gr.verb_group, pr.total_words, go.verb_group, po.total_words),
          make_row("NOUN_GROUP", gr.noun_group, pr.total_words, go.noun_group, po.total_words)};
}

namespace detail {

// Lemma counts restricted to the filter, keys sorted by (count desc, key asc).
inline std::vector<std::pair<std::string, std::size_t>> ranked_lemmas(std::span<const AnnotatedText> texts,
                                                                      const std::set<CoarsePos>& filter) {
  std::map<std::string, std::size_t> counts;
  for (const AnnotatedText& text : texts)
    for (const Sentence& s : text.sentences())
      for (const Token& t : s.tokens())
        if (t.is_word() && filter.contains(t.coarse)) ++counts[t.lemma];
  std::vector<std::pair<std::string, std::size_t>> v(counts.begin(), counts.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return v;
}

// Competition ranks ("1, 2, 2, 4") over an already sorted list.
inline std::vector<std::size_t> competition_ranks(const std::vector<std::pair<std::string, std::size_t>>& v) {
  std::vector<std::size_t> ranks(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    ranks[i] = (i > 0 && v[i].second == v[i - 1].second) ? ranks[i - 1] : i + 1;
  return ranks;
}

}  // namespace detail

/// The k lemmas most frequent in `ref` among tokens whose coarse tag is in
/// `filter`, with their density and rank in both corpora. Equal counts share
/// a rank and the next rank is skipped.
template <TextSource A, TextSource B>
std::vector<ComparisonRow> top_k_comparison(const A& ref, const B& other, const std::set<CoarsePos>& filter,
                                            std::size_t k) {
  if (k == 0) throw AnalysisError(AnalysisError::Kind::kInvalidCounts, "k must be at least 1");
  const auto rt = texts_of(ref);
  const auto ot = texts_of(other);
  const std::size_t n_ref = word_count(rt), n_other = word_count(ot);
  if (n_ref == 0 || n_other == 0) throw AnalysisError(AnalysisError::Kind::kEmptyCorpus, "corpus has no word");

  const auto ref_ranked = detail::ranked_lemmas(rt, filter);
  if (ref_ranked.empty())
    throw AnalysisError(AnalysisError::Kind::kEmptyFilterResult, "no token of the reference matches the filter");
  const auto ref_ranks = detail::competition_ranks(ref_ranked);
  const auto other_ranked = detail::ranked_lemmas(ot, filter);
  const auto other_ranks = detail::competition_ranks(other_ranked);
  std::map<std::string, std::pair<std::size_t, std::size_t>> in_other;  // lemma -> (count, rank)
  for (std::size_t i = 0; i < other_ranked.size(); ++i)
    in_other[other_ranked[i].first] = {other_ranked[i].second, other_ranks[i]};

  std::vector<ComparisonRow> rows;
  for (std::size_t i = 0; i < ref_ranked.size() && i < k; ++i) {
    const auto& [lemma, count] = ref_ranked[i];
    const auto it = in_other.find(lemma);
    const std::size_t count_other = it == in_other.end() ? 0 : it->second.first;
    ComparisonRow row = make_row(lemma, count, n_ref, count_other, n_other);
    row.rank_ref = ref_ranks[i];
    if (it != in_other.end()) row.rank_other = it->second.second;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace stylprint
