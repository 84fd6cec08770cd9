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

#ifndef SEEKEV_GADGETS_HPP
#define SEEKEV_GADGETS_HPP

// Local Hiding instances built from k-Clique and 3-Set-Cover instances. Each
// instance is solvable exactly when the source instance is, which makes them
// good stress tests for the brute-force solver and the centrality kernels.

#include <array>
#include <string>
#include <vector>

#include "seekev/error.hpp"
#include "seekev/graph.hpp"
#include "seekev/hiding.hpp"

namespace seekev {

struct Gadget {
  LocalHidingInstance instance;
  std::vector<std::string> labels;  // role of every node, e.g. "v_e", "S2"
};

using TripleSet = std::array<std::uint32_t, 3>;

namespace detail {

class GadgetBuilder {
 public:
  NodeId add(std::string label) {
    labels_.push_back(std::move(label));
    return static_cast<NodeId>(labels_.size() - 1);
  }
  void link(NodeId a, NodeId b) { edges_.emplace_back(a, b); }

  Gadget finish(NodeId evader, std::size_t budget, CentralityMeasure measure,
                std::vector<Edge> addable, std::size_t d) {
    Gadget out;
    out.instance.graph = Graph::from_edges(labels_.size(), edges_);
    out.instance.evader = evader;
    out.instance.budget = budget;
    out.instance.measure = measure;
    std::sort(addable.begin(), addable.end());
    out.instance.addable = std::move(addable);
    out.instance.safety_margin = d;
    out.labels = std::move(labels_);
    out.instance.validate();
    return out;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

inline void check_set_system(std::size_t universe,
                             const std::vector<TripleSet>& sets, std::size_t k) {
  if (sets.empty()) throw PreconditionError("set system is empty");
  for (const TripleSet& s : sets) {
    for (std::uint32_t x : s) {
      if (x >= universe) {
        throw PreconditionError("set element " + std::to_string(x) +
                                " outside the universe");
      }
    }
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) {
      throw PreconditionError("every set needs three distinct elements");
    }
  }
  if (k < 1 || k > sets.size()) {
    throw PreconditionError("cover size k must satisfy 1 <= k <= m");
  }
}

}  // namespace detail

// Degree gadget from graph G and clique size k: hub v_e adjacent to every
// v_i and to k-2 fillers z_i; v_i gets |N_G(v_i)| pendants; the v_i are
// wired by the complement of G. Every v_i has degree n, v_e has n + k - 2.
// Addable edges are the edges of G; nothing is removable.
inline Gadget build_degree_gadget(const Graph& g, std::size_t k) {
  if (k < 2) throw PreconditionError("degree gadget needs k >= 2");
  const std::size_t n = g.node_count();
  detail::GadgetBuilder b;
  const NodeId ve = b.add("v_e");
  std::vector<NodeId> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = b.add("v" + std::to_string(i));
    b.link(v[i], ve);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < g.degree(static_cast<NodeId>(i)); ++j) {
      b.link(v[i], b.add("x" + std::to_string(i) + "_" + std::to_string(j)));
    }
  }
  for (std::size_t i = 0; i + 2 < k; ++i) {
    b.link(b.add("z" + std::to_string(i)), ve);
  }
  std::vector<Edge> addable;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId c = a + 1; c < n; ++c) {
      if (g.has_edge(a, c)) {
        addable.emplace_back(v[a], v[c]);
      } else {
        b.link(v[a], v[c]);
      }
    }
  }
  return b.finish(ve, k * (k - 1) / 2, CentralityMeasure::kDegree,
                  std::move(addable), k);
}

// Closeness gadget from universe {0..l-1}, 3-sets S and cover size k: v_e
// adjacent to t, every S_i and every w_i; w_i - u_i; S_i - u_j for u_j in
// S_i; t carries l + m - k + 1 pendants x_i. Addable edges are (t, S_i).
inline Gadget build_closeness_gadget(std::size_t universe,
                                     const std::vector<TripleSet>& sets,
                                     std::size_t k) {
  detail::check_set_system(universe, sets, k);
  const std::size_t m = sets.size();
  detail::GadgetBuilder b;
  const NodeId ve = b.add("v_e");
  const NodeId t = b.add("t");
  b.link(t, ve);
  std::vector<NodeId> s(m), u(universe);
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = b.add("S" + std::to_string(i));
    b.link(s[i], ve);
  }
  for (std::size_t i = 0; i < universe; ++i) {
    u[i] = b.add("u" + std::to_string(i));
    const NodeId w = b.add("w" + std::to_string(i));
    b.link(w, ve);
    b.link(w, u[i]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t x : sets[i]) b.link(s[i], u[x]);
  }
  for (std::size_t i = 0; i < universe + m - k + 1; ++i) {
    b.link(b.add("x" + std::to_string(i)), t);
  }
  std::vector<Edge> addable;
  for (NodeId si : s) addable.emplace_back(t, si);
  return b.finish(ve, k, CentralityMeasure::kCloseness, std::move(addable), 1);
}

inline std::size_t betweenness_gadget_alpha(std::size_t l, std::size_t m) {
  return m * m * l * (m + l + 2);
}
inline std::size_t betweenness_gadget_beta(std::size_t l, std::size_t m,
                                           std::size_t k) {
  return m * m * l * (k + l + 2);
}
inline std::size_t betweenness_gadget_node_count(std::size_t l, std::size_t m,
                                                 std::size_t k) {
  return 4 + m + l + betweenness_gadget_alpha(l, m) +
         betweenness_gadget_beta(l, m, k);
}

// Betweenness gadget: cliques X (alpha nodes, each tied to t) and Y (beta
// nodes, each tied to v_e); t - v_e; w_1 - w_2; S_i adjacent to v_e, w_1 and
// its three u_j; every u_j adjacent to w_2. Addable edges are (t, S_i).
// The set system may repeat sets. Needs k < m: with k = m the two cliques
// have equal size and the evader cannot fall behind t. Node count grows as
// m^2 l (m + l).
inline Gadget build_betweenness_gadget(std::size_t universe,
                                       const std::vector<TripleSet>& sets,
                                       std::size_t k) {
  detail::check_set_system(universe, sets, k);
  const std::size_t m = sets.size();
  if (k >= m) throw PreconditionError("betweenness gadget needs k < m");
  const std::size_t alpha = betweenness_gadget_alpha(universe, m);
  const std::size_t beta = betweenness_gadget_beta(universe, m, k);
  detail::GadgetBuilder b;
  const NodeId ve = b.add("v_e");
  const NodeId t = b.add("t");
  const NodeId w1 = b.add("w1");
  const NodeId w2 = b.add("w2");
  b.link(t, ve);
  b.link(w1, w2);
  std::vector<NodeId> s(m), u(universe);
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = b.add("S" + std::to_string(i));
    b.link(s[i], ve);
    b.link(s[i], w1);
  }
  for (std::size_t i = 0; i < universe; ++i) {
    u[i] = b.add("u" + std::to_string(i));
    b.link(u[i], w2);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t x : sets[i]) b.link(s[i], u[x]);
  }
  std::vector<NodeId> xs(alpha), ys(beta);
  for (std::size_t i = 0; i < alpha; ++i) {
    xs[i] = b.add("X" + std::to_string(i));
    b.link(xs[i], t);
  }
  for (std::size_t i = 0; i < beta; ++i) {
    ys[i] = b.add("Y" + std::to_string(i));
    b.link(ys[i], ve);
  }
  for (std::size_t i = 0; i < alpha; ++i) {
    for (std::size_t j = i + 1; j < alpha; ++j) b.link(xs[i], xs[j]);
  }
  for (std::size_t i = 0; i < beta; ++i) {
    for (std::size_t j = i + 1; j < beta; ++j) b.link(ys[i], ys[j]);
  }
  std::vector<Edge> addable;
  for (NodeId si : s) addable.emplace_back(t, si);
  return b.finish(ve, k, CentralityMeasure::kBetweenness, std::move(addable), 1);
}

}  // namespace seekev

#endif  // SEEKEV_GADGETS_HPP
