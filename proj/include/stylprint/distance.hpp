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

// Intertextual distance between two texts.
//
// With N_A <= N_B, the longer text's frequencies are scaled to the shorter
// length, F'_B = F_B * N_A / N_B, and
//
//   d(A, B) = sum_i |F_A(i) - F'_B(i)| / (2 N_A)
//
// over the union of keys. Multiplying through by N_B gives the
// integer form used here, sum_i |F_A(i) N_B - F_B(i) N_A| / (2 N_A N_B),
// which is exact and symmetric in A and B.

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "stylprint/corpus.hpp"
#include "stylprint/error.hpp"
#include "stylprint/lexstats.hpp"

namespace stylprint {

/// A value in [0, 1], kept as an exact fraction.
struct Distance {
  Rational exact{0};

  double value() const { return boost::rational_cast<double>(exact); }
  friend bool operator==(const Distance&, const Distance&) = default;
};

inline Distance intertextual_distance(const FrequencyTable& a, const FrequencyTable& b) {
  if (a.total_words == 0 || b.total_words == 0)
    throw AnalysisError(AnalysisError::Kind::kEmptyText, "distance of an empty text");
  const auto na = static_cast<std::int64_t>(a.total_words);
  const auto nb = static_cast<std::int64_t>(b.total_words);
  std::int64_t sum = 0;
  auto ia = a.counts.begin(), ib = b.counts.begin();
  // merge walk over the two sorted key sets
  while (ia != a.counts.end() || ib != b.counts.end()) {
    std::int64_t fa = 0, fb = 0;
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      fa = static_cast<std::int64_t>(ia++->second);
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      fb = static_cast<std::int64_t>(ib++->second);
    } else {
      fa = static_cast<std::int64_t>(ia++->second);
      fb = static_cast<std::int64_t>(ib++->second);
    }
    sum += std::llabs(fa * nb - fb * na);
  }
  return {Rational(sum, 2 * na * nb)};
}

inline Distance intertextual_distance(const AnnotatedText& a, const AnnotatedText& b,
                                      KeyMode mode = KeyMode::kLemmaAndCoarse) {
  if (a.word_count() == 0 || b.word_count() == 0)
    throw AnalysisError(AnalysisError::Kind::kEmptyText, "distance of an empty text");
  return intertextual_distance(frequency_table(a, mode), frequency_table(b, mode));
}

/// Symmetric non-negative matrix with zero diagonal, row i labelled labels[i].
/// Entries are not capped at 1 so that additive tree metrics also fit.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Throws InvalidMatrix unless `values` is square, symmetric, non-negative and zero on the diagonal.
  DistanceMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    const std::size_t n = labels_.size();
    if (values_.size() != n) throw invalid("row count does not match labels");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen.insert(labels_[i]).second) throw invalid("duplicate label '" + labels_[i] + "'");
      if (values_[i].size() != n) throw invalid("matrix is not square");
      if (values_[i][i] != 0.0) throw invalid("non-zero diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        const double v = values_[i][j];
        if (!(v >= 0.0)) throw invalid("negative or NaN entry");
      }
      for (std::size_t j = 0; j < i; ++j)
        if (values_[i][j] != values_[j][i]) throw invalid("matrix is not symmetric");
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i][j]; }
  const std::vector<std::vector<double>>& values() const { return values_; }

 private:
  static AnalysisError invalid(const std::string& why) {
    return AnalysisError(AnalysisError::Kind::kInvalidMatrix, "invalid distance matrix: " + why);
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<double>> values_;
};

inline DistanceMatrix distance_matrix(std::span<const AnnotatedText> texts, KeyMode mode = KeyMode::kLemmaAndCoarse) {
  if (texts.size() < 2) throw AnalysisError(AnalysisError::Kind::kInvalidMatrix, "need at least two texts");
  std::vector<std::string> labels;
  std::set<std::string> ids;
  std::vector<FrequencyTable> tables;
  for (const AnnotatedText& t : texts) {
    if (!ids.insert(t.id()).second)
      throw AnalysisError(AnalysisError::Kind::kDuplicateId, "duplicate text id '" + t.id() + "'");
    if (t.word_count() == 0)
      throw AnalysisError(AnalysisError::Kind::kEmptyText, "text '" + t.id() + "' has no word");
    labels.push_back(t.id());
    tables.push_back(frequency_table(t, mode));
  }
  const std::size_t n = texts.size();
  std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      values[i][j] = values[j][i] = intertextual_distance(tables[i], tables[j]).value();
  return DistanceMatrix(std::move(labels), std::move(values));
}

enum class AuthorshipDecision { kSingleAuthorPlausible, kDistinct };

constexpr std::string_view decision_name(AuthorshipDecision d) {
  return d == AuthorshipDecision::kSingleAuthorPlausible ? "SINGLE_AUTHOR_PLAUSIBLE" : "DISTINCT";
}

inline constexpr double kDefaultAuthorThreshold = 0.25;
inline constexpr std::size_t kMinReliableWords = 1000;

struct AuthorshipVerdict {
  Distance distance;
  double threshold = kDefaultAuthorThreshold;
  AuthorshipDecision verdict = AuthorshipDecision::kDistinct;
  bool length_warning = false;  // a text is shorter than 1,000 words
};

/// Screening test: a single author is plausible when the distance is below
/// the threshold. Short texts are scored, with `length_warning` set.
inline AuthorshipVerdict same_author_test(const AnnotatedText& a, const AnnotatedText& b,
                                          double threshold = kDefaultAuthorThreshold,
                                          KeyMode mode = KeyMode::kLemmaAndCoarse) {
  AuthorshipVerdict v;
  v.distance = intertextual_distance(a, b, mode);
  v.threshold = threshold;
  v.verdict = v.distance.value() < threshold ? AuthorshipDecision::kSingleAuthorPlausible
                                             : AuthorshipDecision::kDistinct;
  v.length_warning = a.word_count() < kMinReliableWords || b.word_count() < kMinReliableWords;
  return v;
}

}  // namespace stylprint
