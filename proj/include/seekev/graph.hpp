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

#ifndef SEEKEV_GRAPH_HPP
#define SEEKEV_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seekev/error.hpp"

namespace seekev {

using NodeId = std::uint32_t;

// Undirected edge; endpoints are stored in increasing order so that (v,w)
// and (w,v) compare equal.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  constexpr Edge() = default;
  constexpr Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr bool is_loop() const { return u == v; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

// Undirected simple graph on nodes 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count) : adjacency_(node_count) {}

  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges) {
    Graph g(node_count);
    for (const Edge& e : edges) g.insert_edge(e);
    return g;
  }

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return adjacency_.at(v);
  }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }

  bool has_edge(NodeId a, NodeId b) const {
    if (a >= node_count() || b >= node_count()) return false;
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  }
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  // In-place edits; both keep the adjacency symmetric and sorted.
  void insert_edge(const Edge& e) {
    check_endpoints(e);
    if (has_edge(e)) {
      throw PreconditionError("edge " + to_string(e) + " already present");
    }
    insert_sorted(adjacency_[e.u], e.v);
    insert_sorted(adjacency_[e.v], e.u);
    ++edge_count_;
  }

  void erase_edge(const Edge& e) {
    check_endpoints(e);
    if (!has_edge(e)) {
      throw PreconditionError("edge " + to_string(e) + " not present");
    }
    erase_sorted(adjacency_[e.u], e.v);
    erase_sorted(adjacency_[e.v], e.u);
    --edge_count_;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId a = 0; a < node_count(); ++a) {
      for (NodeId b : adjacency_[a]) {
        if (a < b) out.emplace_back(a, b);
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_endpoints(const Edge& e) const {
    if (e.is_loop()) {
      throw PreconditionError("self-loop " + to_string(e) + " not allowed");
    }
    if (e.v >= node_count()) {
      throw PreconditionError("edge " + to_string(e) + " references node >= " +
                              std::to_string(node_count()));
    }
  }

  static void insert_sorted(std::vector<NodeId>& list, NodeId x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  }
  static void erase_sorted(std::vector<NodeId>& list, NodeId x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  }

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

inline Graph add_edge(Graph g, const Edge& e) {
  g.insert_edge(e);
  return g;
}

inline Graph remove_edge(Graph g, const Edge& e) {
  g.erase_edge(e);
  return g;
}

// Hop distance from a BFS source; std::nullopt marks an unreachable node.
using Distance = std::optional<std::uint32_t>;

namespace detail {

inline constexpr std::int32_t kNotReached = -1;

// BFS into a caller-provided buffer, reused by the centrality kernels.
inline void bfs(const Graph& g, NodeId source, std::vector<std::int32_t>& dist,
                std::vector<NodeId>& queue) {
  dist.assign(g.node_count(), kNotReached);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] == kNotReached) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

}  // namespace detail

inline std::vector<Distance> shortest_distances(const Graph& g, NodeId source) {
  if (source >= g.node_count()) {
    throw PreconditionError("source node " + std::to_string(source) +
                            " out of range");
  }
  std::vector<std::int32_t> raw;
  std::vector<NodeId> queue;
  detail::bfs(g, source, raw, queue);
  std::vector<Distance> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != detail::kNotReached) {
      out[i] = static_cast<std::uint32_t>(raw[i]);
    }
  }
  return out;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) g.insert_edge({a, b});
  }
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (NodeId a = 1; a < n; ++a) g.insert_edge({a - 1, a});
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.insert_edge({0, static_cast<NodeId>(n - 1)});
  return g;
}

// Star with node 0 as the centre and `leaves` leaves.
inline Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (NodeId a = 1; a <= leaves; ++a) g.insert_edge({0, a});
  return g;
}

}  // namespace seekev

#endif  // SEEKEV_GRAPH_HPP
