// Copyright 2026 The seekev Authors
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

#ifndef SEEKEV_CENTRALITY_HPP
#define SEEKEV_CENTRALITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "seekev/error.hpp"
#include "seekev/graph.hpp"

namespace seekev {

// The seeker's pure strategies. The numeric order is also the column order of
// every export.
enum class CentralityMeasure { kDegree = 0, kCloseness, kBetweenness, kEigenvector };

inline constexpr std::array<CentralityMeasure, 4> kAllMeasures = {
    CentralityMeasure::kDegree, CentralityMeasure::kCloseness,
    CentralityMeasure::kBetweenness, CentralityMeasure::kEigenvector};

inline constexpr std::size_t kMeasureCount = kAllMeasures.size();

inline std::string_view measure_name(CentralityMeasure m) {
  switch (m) {
    case CentralityMeasure::kDegree: return "degree";
    case CentralityMeasure::kCloseness: return "closeness";
    case CentralityMeasure::kBetweenness: return "betweenness";
    case CentralityMeasure::kEigenvector: return "eigenvector";
  }
  return "unknown";
}

inline CentralityMeasure parse_measure(std::string_view name) {
  for (CentralityMeasure m : kAllMeasures) {
    if (measure_name(m) == name) return m;
  }
  throw PreconditionError("unknown centrality measure '" + std::string(name) +
                          "'");
}

struct CentralityVector {
  CentralityMeasure measure = CentralityMeasure::kDegree;
  std::vector<double> values;
  // Closeness only: some pair was unreachable and the surrogate distance n
  // was used.
  bool used_unreachable_surrogate = false;
};

inline CentralityVector degree_centrality(const Graph& g) {
  CentralityVector cv{CentralityMeasure::kDegree, {}};
  cv.values.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    cv.values[v] = static_cast<double>(g.degree(v));
  }
  return cv;
}

// 1 / sum of distances. An unreachable node counts as distance n so that
// values stay finite on disconnected graphs; a single-node graph gets 0.
inline CentralityVector closeness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  CentralityVector cv{CentralityMeasure::kCloseness, std::vector<double>(n)};
  std::vector<std::int32_t> dist;
  std::vector<NodeId> queue;
  for (NodeId v = 0; v < n; ++v) {
    detail::bfs(g, v, dist, queue);
    std::uint64_t total = 0;
    for (std::int32_t d : dist) {
      if (d == detail::kNotReached) {
        total += n;
        cv.used_unreachable_surrogate = true;
      } else {
        total += static_cast<std::uint64_t>(d);
      }
    }
    cv.values[v] = total == 0 ? 0.0 : 1.0 / static_cast<double>(total);
  }
  return cv;
}

// Brandes' single-source accumulation. Each unordered pair {s,t} is counted
// once; endpoints are excluded; disconnected pairs contribute nothing.
inline CentralityVector betweenness_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  CentralityVector cv{CentralityMeasure::kBetweenness, std::vector<double>(n)};
  std::vector<std::int32_t> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), detail::kNotReached);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == detail::kNotReached) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId w = order[i];
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] == dist[w] - 1) {
          delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
      }
      cv.values[w] += delta[w];
    }
  }
  for (double& x : cv.values) x *= 0.5;
  return cv;
}

inline constexpr double kEigenvectorTolerance = 1e-10;
inline constexpr std::size_t kEigenvectorMaxIterations = 100000;

// Principal eigenvector of the adjacency matrix, unit Euclidean norm.
// Iterates with A + I: same eigenvectors, but the shift makes the dominant
// eigenvalue strictly largest in magnitude on bipartite graphs, where plain
// power iteration on A oscillates.
inline CentralityVector eigenvector_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  if (g.edge_count() == 0) {
    throw PreconditionError(
        "eigenvector centrality is undefined on an edgeless graph");
  }
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < kEigenvectorMaxIterations; ++iter) {
    double norm2 = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double acc = x[v];
      for (NodeId w : g.neighbors(v)) acc += x[w];
      next[v] = acc;
      norm2 += acc * acc;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      next[v] *= inv;
      change = std::max(change, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    if (change < kEigenvectorTolerance) {
      return {CentralityMeasure::kEigenvector, std::move(x)};
    }
  }
  throw NumericalError("eigenvector power iteration did not converge");
}

inline CentralityVector compute_centrality(const Graph& g, CentralityMeasure m) {
  switch (m) {
    case CentralityMeasure::kDegree: return degree_centrality(g);
    case CentralityMeasure::kCloseness: return closeness_centrality(g);
    case CentralityMeasure::kBetweenness: return betweenness_centrality(g);
    case CentralityMeasure::kEigenvector: return eigenvector_centrality(g);
  }
  throw PreconditionError("unknown centrality measure");
}

// Two values closer than this (relative to max(1, |value|)) are a tie.
// Floating sums that are mathematically equal (Brandes dependencies, power
// iteration) differ in the last bits, and ranks must not depend on that.
inline constexpr double kRankTieTolerance = 1e-9;

// Competition ranking: rank(v) = 1 + |{w : c(w) > c(v)}|. Ties share the
// best position, so rank(v) > d iff at least d nodes are strictly ahead.
inline std::vector<std::size_t> rank_nodes(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> rank(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    const double threshold =
        values[v] + kRankTieTolerance * std::max(1.0, std::abs(values[v]));
    const auto ahead = static_cast<std::size_t>(
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), threshold));
    rank[v] = 1 + ahead;
  }
  return rank;
}

inline std::vector<std::size_t> rank_nodes(const CentralityVector& cv) {
  return rank_nodes(std::span<const double>(cv.values));
}

// Rank of a single node; same definition as rank_nodes.
inline std::size_t node_rank(std::span<const double> values, NodeId v) {
  const double threshold =
      values[v] + kRankTieTolerance * std::max(1.0, std::abs(values[v]));
  std::size_t ahead = 0;
  for (double x : values) ahead += x > threshold ? 1 : 0;
  return 1 + ahead;
}

}  // namespace seekev

#endif  // SEEKEV_CENTRALITY_HPP
