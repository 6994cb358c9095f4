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

#include <cmath>
#include <cstddef>
#include <map>

#include "stylprint/corpus.hpp"
#include "stylprint/error.hpp"

namespace stylprint {

/// Sentence word-lengths with their multiplicities.
struct LengthMultiset {
  std::map<std::size_t, std::size_t> counts;  // length -> number of sentences, no zero entries
  std::size_t total_sentences = 0;
  std::size_t total_words = 0;

  /// Throws InvalidCounts on a zero length.
  static LengthMultiset from_counts(const std::map<std::size_t, std::size_t>& counts) {
    LengthMultiset m;
    for (const auto& [len, n] : counts) {
      if (len == 0) throw AnalysisError(AnalysisError::Kind::kInvalidCounts, "sentence length 0");
      if (n == 0) continue;
      m.counts[len] = n;
      m.total_sentences += n;
      m.total_words += len * n;
    }
    return m;
  }
};

template <TextSource Source>
LengthMultiset sentence_lengths(const Source& source) {
  std::map<std::size_t, std::size_t> counts;
  for (const AnnotatedText& text : texts_of(source))
    for (const Sentence& s : text.sentences()) ++counts[s.word_length()];
  if (counts.empty()) throw AnalysisError(AnalysisError::Kind::kEmptyCorpus, "corpus has no sentence");
  return LengthMultiset::from_counts(counts);
}

inline double coefficient_of_variation(double mean, double std_dev) { return 100.0 * std_dev / mean; }
inline double decile_spread(double d1, double d9) { return (d9 - d1) / d1; }

enum class MedialRule {
  kInterpolated,  // class L spans (L-1, L] and is interpolated by words
  kInteger,       // smallest length whose cumulative words reach half
};

struct SentenceLengthSummary {
  std::size_t mode = 0;
  double median = 0;
  double mean = 0;
  double std_dev = 0;  // population
  double cv_pct = 0;
  double medial = 0;
  double d1 = 0;
  double d9 = 0;
  double decile_spread = 0;
};

namespace detail {

// 0-indexed order statistic of the expanded, sorted multiset.
inline std::size_t order_statistic(const LengthMultiset& m, std::size_t index) {
  std::size_t seen = 0;
  for (const auto& [len, n] : m.counts) {
    seen += n;
    if (index < seen) return len;
  }
  return m.counts.rbegin()->first;
}

}  // namespace detail

/// Linear interpolation between order statistics at position p * (n - 1).
inline double length_quantile(const LengthMultiset& m, double p) {
  const double h = p * static_cast<double>(m.total_sentences - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double lo_value = static_cast<double>(detail::order_statistic(m, lo));
  if (lo + 1 >= m.total_sentences) return lo_value;
  const double hi_value = static_cast<double>(detail::order_statistic(m, lo + 1));
  return lo_value + (h - static_cast<double>(lo)) * (hi_value - lo_value);
}

/// Length at which the cumulative word count of sentences, taken by increasing length, reaches half the words.
inline double medial_length(const LengthMultiset& m, MedialRule rule = MedialRule::kInterpolated) {
  const double half = static_cast<double>(m.total_words) / 2.0;
  double cumulative = 0;
  for (const auto& [len, n] : m.counts) {
    const double words = static_cast<double>(len * n);
    if (cumulative + words >= half) {
      if (rule == MedialRule::kInteger) return static_cast<double>(len);
      return static_cast<double>(len) - 1.0 + (half - cumulative) / words;
    }
    cumulative += words;
  }
  return static_cast<double>(m.counts.rbegin()->first);
}

inline SentenceLengthSummary summarize(const LengthMultiset& m, MedialRule medial = MedialRule::kInterpolated) {
  if (m.total_sentences < 2)
    throw AnalysisError(AnalysisError::Kind::kTooFewSentences, "need at least two sentences");
  SentenceLengthSummary s;

  std::size_t best = 0;
  for (const auto& [len, n] : m.counts)
    if (n > best) {  // strict: ties keep the smaller length
      best = n;
      s.mode = len;
    }

  const auto count = static_cast<long double>(m.total_sentences);
  const long double mean = static_cast<long double>(m.total_words) / count;
  long double ss = 0;
  for (const auto& [len, n] : m.counts) {
    const long double d = static_cast<long double>(len) - mean;
    ss += static_cast<long double>(n) * d * d;
  }
  s.mean = static_cast<double>(mean);
  s.std_dev = static_cast<double>(std::sqrt(ss / count));
  s.cv_pct = coefficient_of_variation(s.mean, s.std_dev);
  s.median = length_quantile(m, 0.5);
  s.d1 = length_quantile(m, 0.1);
  s.d9 = length_quantile(m, 0.9);
  s.decile_spread = decile_spread(s.d1, s.d9);
  s.medial = medial_length(m, medial);
  return s;
}

/// Percent of sentences per length.
struct LengthHistogram {
  std::map<std::size_t, double> bins;

  double at(std::size_t length) const {
    const auto it = bins.find(length);
    return it == bins.end() ? 0.0 : it->second;
  }
};

inline LengthHistogram histogram_percent(const LengthMultiset& m) {
  LengthHistogram h;
  for (const auto& [len, n] : m.counts)
    h.bins[len] = 100.0 * static_cast<double>(n) / static_cast<double>(m.total_sentences);
  return h;
}

}  // namespace stylprint
