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

#ifndef SEEKEV_EDGE_LIST_HPP
#define SEEKEV_EDGE_LIST_HPP

// Edge-list text format.
//
//   # comment lines start with '#'
//   # nodes: 30          <- optional; declares the node count (keeps
//                           isolated nodes across a save/load round trip)
//   0 1
//   1 2
//
// One undirected edge per line, two whitespace-separated labels. When every
// label is a non-negative integer the labels are used as node ids directly;
// otherwise labels are mapped to dense ids in order of first appearance and
// kept for output. Self-loops and duplicate edges are rejected.

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "seekev/error.hpp"
#include "seekev/graph.hpp"

namespace seekev {

struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[id]; one entry per node

  const std::string& label(NodeId v) const { return labels.at(v); }
};

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

namespace detail {

inline bool parse_node_index(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace detail

inline LabeledGraph parse_edge_list(std::istream& in) {
  struct RawEdge {
    std::string a, b;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  std::size_t declared_nodes = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string a;
    if (!(fields >> a)) continue;
    if (a[0] == '#') {
      std::string key, value;
      std::istringstream directive(line.substr(line.find('#') + 1));
      if (directive >> key >> value && key == "nodes:") {
        std::uint64_t count = 0;
        if (!detail::parse_node_index(value, count)) {
          throw ParseError("bad node count '" + value + "'", line_no);
        }
        declared_nodes = static_cast<std::size_t>(count);
      }
      continue;
    }
    std::string b, extra;
    if (!(fields >> b)) throw ParseError("expected two node labels", line_no);
    if (fields >> extra) {
      throw ParseError("unexpected token '" + extra + "'", line_no);
    }
    if (a == b) throw ParseError("self-loop on node " + a, line_no);
    raw.push_back({a, b, line_no});
  }

  bool numeric = true;
  std::uint64_t max_id = 0;
  for (const auto& e : raw) {
    std::uint64_t x = 0, y = 0;
    if (!detail::parse_node_index(e.a, x) || !detail::parse_node_index(e.b, y)) {
      numeric = false;
      break;
    }
    max_id = std::max({max_id, x, y});
  }

  LabeledGraph out;
  std::vector<std::pair<NodeId, NodeId>> ids;
  ids.reserve(raw.size());
  if (numeric) {
    std::size_t n = raw.empty() ? 0 : static_cast<std::size_t>(max_id) + 1;
    n = std::max(n, declared_nodes);
    out.labels = default_labels(n);
    for (const auto& e : raw) {
      std::uint64_t x = 0, y = 0;
      detail::parse_node_index(e.a, x);
      detail::parse_node_index(e.b, y);
      ids.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(y));
    }
  } else {
    std::unordered_map<std::string, NodeId> index;
    auto intern = [&](const std::string& s) {
      auto [it, fresh] =
          index.try_emplace(s, static_cast<NodeId>(out.labels.size()));
      if (fresh) out.labels.push_back(s);
      return it->second;
    };
    for (const auto& e : raw) {
      const NodeId a = intern(e.a);
      const NodeId b = intern(e.b);
      ids.emplace_back(a, b);
    }
    if (declared_nodes > out.labels.size()) {
      throw ParseError("node count directive does not apply to named labels",
                       1);
    }
  }

  out.graph = Graph(out.labels.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Edge e(ids[i].first, ids[i].second);
    if (out.graph.has_edge(e)) {
      throw ParseError("duplicate edge " + raw[i].a + " " + raw[i].b,
                       raw[i].line);
    }
    out.graph.insert_edge(e);
  }
  return out;
}

inline LabeledGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open edge list '" + path + "'");
  return parse_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<std::string>* labels = nullptr) {
  if (labels == nullptr) out << "# nodes: " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) {
    if (labels != nullptr) {
      out << labels->at(e.u) << ' ' << labels->at(e.v) << '\n';
    } else {
      out << e.u << ' ' << e.v << '\n';
    }
  }
}

inline void save_edge_list(const Graph& g, const std::string& path,
                           const std::vector<std::string>* labels = nullptr) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write edge list '" + path + "'");
  write_edge_list(out, g, labels);
  if (!out) throw PreconditionError("write failed for '" + path + "'");
}

}  // namespace seekev

#endif  // SEEKEV_EDGE_LIST_HPP
