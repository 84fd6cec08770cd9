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

#ifndef SEEKEV_GENERATORS_HPP
#define SEEKEV_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "seekev/error.hpp"
#include "seekev/graph.hpp"
#include "seekev/rng.hpp"

namespace seekev {

inline constexpr double kDefaultRewireProbability = 0.25;

// Barabasi-Albert preferential attachment. Growth starts from a complete
// graph on links_per_node + 1 nodes; each later node attaches to
// links_per_node distinct existing nodes chosen with probability
// proportional to their current degree.
inline Graph generate_barabasi_albert(std::size_t n, std::size_t links_per_node,
                                      std::uint64_t seed) {
  const std::size_t m = links_per_node;
  if (m < 1 || n <= m) {
    throw PreconditionError("barabasi_albert requires 1 <= m < n (n=" +
                            std::to_string(n) + ", m=" + std::to_string(m) +
                            ")");
  }
  Graph g(n);
  // Each node appears once per incident edge endpoint.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * (m * (m + 1) / 2 + (n - m - 1) * m));
  for (NodeId a = 0; a <= m; ++a) {
    for (NodeId b = a + 1; b <= m; ++b) {
      g.insert_edge({a, b});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  Rng rng(seed);
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId pick = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (NodeId t : targets) {
      g.insert_edge({v, t});
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return g;
}

// Watts-Strogatz small world: ring lattice with mean_degree/2 neighbours on
// each side, then every lattice edge (i, i+j) has its far endpoint rewired to
// a uniformly chosen node with probability rewire_prob. Rewiring keeps the
// edge count and never creates loops or parallel edges.
inline Graph generate_watts_strogatz(std::size_t n, std::size_t mean_degree,
                                     double rewire_prob, std::uint64_t seed) {
  if (mean_degree % 2 != 0 || mean_degree >= n) {
    throw PreconditionError(
        "watts_strogatz requires an even mean degree below n (n=" +
        std::to_string(n) + ", k=" + std::to_string(mean_degree) + ")");
  }
  if (!(rewire_prob >= 0.0 && rewire_prob <= 1.0)) {
    throw PreconditionError("rewire probability must lie in [0, 1]");
  }
  const std::size_t half = mean_degree / 2;
  Graph g(n);
  for (NodeId i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= half; ++j) {
      g.insert_edge({i, static_cast<NodeId>((i + j) % n)});
    }
  }
  Rng rng(seed);
  for (std::size_t j = 1; j <= half; ++j) {
    for (NodeId i = 0; i < n; ++i) {
      const auto far = static_cast<NodeId>((i + j) % n);
      if (!rng.bernoulli(rewire_prob)) continue;
      if (!g.has_edge(i, far)) continue;
      if (g.degree(i) >= n - 1) continue;
      NodeId w = static_cast<NodeId>(rng.below(n));
      while (w == i || g.has_edge(i, w)) w = static_cast<NodeId>(rng.below(n));
      g.erase_edge({i, far});
      g.insert_edge({i, w});
    }
  }
  return g;
}

// Erdos-Renyi G(n, p) with p = mean_degree / (n - 1).
inline Graph generate_erdos_renyi(std::size_t n, double mean_degree,
                                  std::uint64_t seed) {
  if (n < 2) throw PreconditionError("erdos_renyi requires n >= 2");
  const double p = mean_degree / static_cast<double>(n - 1);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError("erdos_renyi mean degree must lie in [0, n-1]");
  }
  Graph g(n);
  Rng rng(seed);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (rng.bernoulli(p)) g.insert_edge({a, b});
    }
  }
  return g;
}

}  // namespace seekev

#endif  // SEEKEV_GENERATORS_HPP
