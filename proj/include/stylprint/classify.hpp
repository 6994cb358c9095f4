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

// Classification from a distance matrix: agglomerative clustering into a
// dendrogram, neighbor-joining into an unrooted tree, and the quality index
// comparing tree path lengths with the matrix.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "stylprint/distance.hpp"
#include "stylprint/error.hpp"

namespace stylprint {

enum class Linkage { kAverage, kSingle, kComplete };

/// Cluster ids: leaves are 0..n-1, the i-th merge creates cluster n+i.
struct Merge {
  std::size_t a = 0;  // the cluster with the smaller key
  std::size_t b = 0;
  double height = 0;
  std::size_t size = 0;  // leaves in the new cluster
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;

  /// Leaf indices of cluster `id`, ascending.
  std::vector<std::size_t> members(std::size_t id) const {
    if (id < leaves.size()) return {id};
    const Merge& m = merges[id - leaves.size()];
    std::vector<std::size_t> out = members(m.a);
    const std::vector<std::size_t> rhs = members(m.b);
    out.insert(out.end(), rhs.begin(), rhs.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Merge height of the first cluster holding both leaves.
  std::vector<std::vector<double>> cophenetic() const {
    const std::size_t n = leaves.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < merges.size(); ++i) {
      const Merge& m = merges[i];
      for (std::size_t x : members(m.a))
        for (std::size_t y : members(m.b)) d[x][y] = d[y][x] = m.height;
    }
    return d;
  }
};

namespace detail {

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace detail

/// Agglomerative clustering. At each step the pair of clusters at minimal
/// linkage distance merges; ties go to the lexicographically smallest pair
/// of cluster keys (a cluster's key is its smallest leaf label).
inline Dendrogram hac(const DistanceMatrix& matrix, Linkage linkage = Linkage::kAverage) {
  const std::size_t n = matrix.size();
  if (n < 2) throw AnalysisError(AnalysisError::Kind::kInvalidMatrix, "need at least two leaves");
  Dendrogram tree;
  tree.leaves = matrix.labels();

  const std::size_t total = 2 * n - 1;
  std::vector<std::vector<double>> d(total, std::vector<double>(total, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = matrix(i, j);
  std::vector<std::size_t> size(total, 1);
  std::vector<std::string> key(total);
  for (std::size_t i = 0; i < n; ++i) key[i] = tree.leaves[i];
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  auto ordered = [&](std::size_t x, std::size_t y) {
    return key[x] < key[y] ? std::pair{x, y} : std::pair{y, x};
  };

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    double best_d = 0;
    for (std::size_t ii = 0; ii < active.size(); ++ii)
      for (std::size_t jj = ii + 1; jj < active.size(); ++jj) {
        const auto cand = ordered(active[ii], active[jj]);
        const double v = d[cand.first][cand.second];
        bool take = !best;
        if (best) {
          if (detail::nearly_equal(v, best_d)) {
            take = std::pair{key[cand.first], key[cand.second]} <
                   std::pair{key[best->first], key[best->second]};
          } else {
            take = v < best_d;
          }
        }
        if (take) {
          best = cand;
          best_d = v;
        }
      }

    const auto [a, b] = *best;
    const std::size_t u = n + step;
    size[u] = size[a] + size[b];
    key[u] = std::min(key[a], key[b]);
    tree.merges.push_back({a, b, best_d, size[u]});
    std::erase(active, a);
    std::erase(active, b);
    for (std::size_t c : active) {
      double v = 0;
      switch (linkage) {
        case Linkage::kAverage:
          v = (static_cast<double>(size[a]) * d[a][c] + static_cast<double>(size[b]) * d[b][c]) /
              static_cast<double>(size[u]);
          break;
        case Linkage::kSingle: v = std::min(d[a][c], d[b][c]); break;
        case Linkage::kComplete: v = std::max(d[a][c], d[b][c]); break;
      }
      d[u][c] = d[c][u] = v;
    }
    active.push_back(u);
  }
  return tree;
}

inline Dendrogram hac_average_linkage(const DistanceMatrix& matrix) { return hac(matrix, Linkage::kAverage); }

/// Unrooted tree. Nodes 0..n-1 are the leaves, in matrix order.
struct UnrootedTree {
  struct Edge {
    std::size_t to;
    double length;
  };

  std::vector<std::string> leaves;
  std::vector<std::vector<Edge>> adjacency;
  std::size_t clamped_branches = 0;  // negative lengths set to 0

  std::size_t node_count() const { return adjacency.size(); }

  std::size_t add_node() {
    adjacency.emplace_back();
    return adjacency.size() - 1;
  }

  void connect(std::size_t x, std::size_t y, double length) {
    adjacency[x].push_back({y, length});
    adjacency[y].push_back({x, length});
  }

  /// Path length between every pair of leaves.
  std::vector<std::vector<double>> path_distances() const {
    const std::size_t n = leaves.size();
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t src = 0; src < n; ++src) {
      std::vector<double> dist(node_count(), -1.0);
      std::vector<std::size_t> stack{src};
      dist[src] = 0.0;
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (const Edge& e : adjacency[x])
          if (dist[e.to] < 0.0) {
            dist[e.to] = dist[x] + e.length;
            stack.push_back(e.to);
          }
      }
      for (std::size_t j = 0; j < n; ++j) out[src][j] = dist[j];
    }
    return out;
  }
};

/// Neighbor-joining. Negative branch lengths are clamped to 0, the
/// remainder going to the sibling branch; `clamped_branches` counts them.
inline UnrootedTree nj_tree(const DistanceMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n < 3) throw AnalysisError(AnalysisError::Kind::kTooFewLeaves, "neighbor-joining needs at least three leaves");
  UnrootedTree tree;
  tree.leaves = matrix.labels();
  tree.adjacency.resize(n);

  std::vector<std::size_t> node(n);  // active position -> tree node
  std::vector<std::vector<double>> d = matrix.values();
  for (std::size_t i = 0; i < n; ++i) node[i] = i;

  auto clamp_pair = [&](double& x, double& y, double total) {
    if (x < 0) {
      x = 0;
      y = total;
      ++tree.clamped_branches;
    } else if (y < 0) {
      y = 0;
      x = total;
      ++tree.clamped_branches;
    }
    if (x < 0) x = 0;
    if (y < 0) y = 0;
  };

  while (node.size() > 3) {
    const std::size_t r = node.size();
    std::vector<double> row_sum(r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) row_sum[i] += d[i][j];

    std::size_t bi = 0, bj = 1;
    double best = 0;
    bool have = false;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        const double q = static_cast<double>(r - 2) * d[i][j] - row_sum[i] - row_sum[j];
        if (!have || (q < best && !detail::nearly_equal(q, best))) {
          have = true;
          best = q;
          bi = i;
          bj = j;
        }
      }

    const double dij = d[bi][bj];
    double li = dij / 2.0 + (row_sum[bi] - row_sum[bj]) / (2.0 * static_cast<double>(r - 2));
    double lj = dij - li;
    clamp_pair(li, lj, dij);

    const std::size_t u = tree.add_node();
    tree.connect(u, node[bi], li);
    tree.connect(u, node[bj], lj);

    std::vector<double> du(r);
    for (std::size_t k = 0; k < r; ++k) du[k] = (d[bi][k] + d[bj][k] - dij) / 2.0;

    // Replace bi by u, drop bj.
    for (std::size_t k = 0; k < r; ++k) {
      d[bi][k] = d[k][bi] = du[k];
    }
    d[bi][bi] = 0.0;
    node[bi] = u;
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(bj));
    for (auto& row : d) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
    node.erase(node.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  const std::size_t center = tree.add_node();
  double l0 = (d[0][1] + d[0][2] - d[1][2]) / 2.0;
  double l1 = (d[0][1] + d[1][2] - d[0][2]) / 2.0;
  double l2 = (d[0][2] + d[1][2] - d[0][1]) / 2.0;
  for (double* l : {&l0, &l1, &l2})
    if (*l < 0) {
      *l = 0;
      ++tree.clamped_branches;
    }
  tree.connect(center, node[0], l0);
  tree.connect(center, node[1], l1);
  tree.connect(center, node[2], l2);
  return tree;
}

struct PairQuality {
  std::size_t i = 0;
  std::size_t j = 0;
  double d_matrix = 0;
  double d_tree = 0;
  std::optional<double> index;  // percent; absent when d_matrix = 0
};

struct TreeQuality {
  std::vector<PairQuality> pairs;  // unordered pairs, i < j
  double global = 100.0;

  /// Smallest per-pair index, or 100 when no pair defines one.
  double min_index() const {
    double m = 100.0;
    for (const PairQuality& p : pairs)
      if (p.index) m = std::min(m, *p.index);
    return m;
  }
};

/// Quality of a tree metric against the matrix, in percent.
/// `tree_labels[k]` names row k of `tree_distances`.
inline TreeQuality tree_quality(const std::vector<std::string>& tree_labels,
                                const std::vector<std::vector<double>>& tree_distances,
                                const DistanceMatrix& matrix) {
  const std::size_t n = matrix.size();
  std::vector<std::size_t> to_tree(n);
  {
    if (tree_labels.size() != n)
      throw AnalysisError(AnalysisError::Kind::kLabelMismatch, "tree and matrix have different leaf counts");
    std::map<std::string, std::size_t> pos;
    for (std::size_t k = 0; k < tree_labels.size(); ++k) pos[tree_labels[k]] = k;
    for (std::size_t i = 0; i < n; ++i) {
      const auto it = pos.find(matrix.labels()[i]);
      if (it == pos.end())
        throw AnalysisError(AnalysisError::Kind::kLabelMismatch, "leaf '" + matrix.labels()[i] + "' not in tree");
      to_tree[i] = it->second;
    }
  }
  TreeQuality q;
  double residual_sum = 0, matrix_sum = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      PairQuality p;
      p.i = i;
      p.j = j;
      p.d_matrix = matrix(i, j);
      p.d_tree = tree_distances[to_tree[i]][to_tree[j]];
      const double residual = std::abs(p.d_tree - p.d_matrix);
      if (p.d_matrix > 0) p.index = 100.0 * (1.0 - residual / p.d_matrix);
      residual_sum += residual;
      matrix_sum += p.d_matrix;
      q.pairs.push_back(p);
    }
  if (matrix_sum > 0) {
    q.global = 100.0 * (1.0 - residual_sum / matrix_sum);
  } else {
    q.global = residual_sum == 0 ? 100.0 : 0.0;
  }
  return q;
}

inline TreeQuality tree_quality(const UnrootedTree& tree, const DistanceMatrix& matrix) {
  return tree_quality(tree.leaves, tree.path_distances(), matrix);
}

inline TreeQuality tree_quality(const Dendrogram& tree, const DistanceMatrix& matrix) {
  return tree_quality(tree.leaves, tree.cophenetic(), matrix);
}

namespace detail {

inline std::string newick_label(const std::string& label) {
  const bool plain = std::none_of(label.begin(), label.end(), [](char c) {
    return c == ' ' || c == '(' || c == ')' || c == '[' || c == ']' || c == '\'' || c == ':' || c == ';' ||
           c == ',' || c == '\t';
  });
  if (plain && !label.empty()) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

inline std::string newick_length(double x) { return fmt::format("{:.6f}", x); }

}  // namespace detail

/// Rooted Newick; each branch is half the height difference so that leaf-to-leaf
/// path lengths equal cophenetic distances.
inline std::string to_newick(const Dendrogram& tree) {
  const std::size_t n = tree.leaves.size();
  auto height = [&](std::size_t id) { return id < n ? 0.0 : tree.merges[id - n].height; };
  auto rec = [&](auto&& self, std::size_t id) -> std::string {
    if (id < n) return detail::newick_label(tree.leaves[id]);
    const Merge& m = tree.merges[id - n];
    return "(" + self(self, m.a) + ":" + detail::newick_length((m.height - height(m.a)) / 2.0) + "," +
           self(self, m.b) + ":" + detail::newick_length((m.height - height(m.b)) / 2.0) + ")";
  };
  if (n == 1) return detail::newick_label(tree.leaves[0]) + ";";
  return rec(rec, 2 * n - 2) + ";";
}

/// Unrooted Newick, written from the last internal node.
inline std::string to_newick(const UnrootedTree& tree) {
  const std::size_t n = tree.leaves.size();
  auto rec = [&](auto&& self, std::size_t x, std::size_t from) -> std::string {
    if (x < n) return detail::newick_label(tree.leaves[x]);
    std::string out = "(";
    bool first = true;
    for (const auto& e : tree.adjacency[x]) {
      if (e.to == from) continue;
      if (!first) out += ",";
      first = false;
      out += self(self, e.to, x) + ":" + detail::newick_length(e.length);
    }
    return out + ")";
  };
  return rec(rec, tree.node_count() - 1, std::numeric_limits<std::size_t>::max()) + ";";
}

}  // namespace stylprint
