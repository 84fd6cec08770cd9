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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "oracles.hpp"
#include "seekev/edge_list.hpp"
#include "seekev/generators.hpp"
#include "seekev/graph.hpp"

namespace seekev {
namespace {

void expect_simple(const Graph& g) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
    for (NodeId w : nb) {
      EXPECT_NE(w, v);
      EXPECT_TRUE(g.has_edge(w, v));
    }
  }
}

TEST(GraphTest, AddEdgeToEmptyGraph) {
  const Graph g = add_edge(Graph(2), {0, 1});
  ASSERT_EQ(g.neighbors(0).size(), 1u);
  EXPECT_EQ(g.neighbors(0)[0], 1u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(GraphTest, RemoveThenAddRestoresGraph) {
  const Graph g = path_graph(4);
  EXPECT_EQ(add_edge(remove_edge(g, {0, 1}), {0, 1}), g);
}

TEST(GraphTest, EdgeOrientationIsIgnored) {
  EXPECT_EQ(Edge(3, 1), Edge(1, 3));
  const Graph g = add_edge(Graph(4), {3, 1});
  EXPECT_TRUE(g.has_edge(1, 3));
  EXPECT_TRUE(g.has_edge(3, 1));
}

TEST(GraphTest, DuplicateAddAndMissingRemoveAreRejected) {
  const Graph path = path_graph(3);
  // Adding (1,2) to the path 0-1-2 duplicates an existing edge.
  EXPECT_THROW(add_edge(remove_edge(path, {0, 1}), {1, 2}), PreconditionError);
  EXPECT_THROW(remove_edge(path, {0, 2}), PreconditionError);
  EXPECT_THROW(add_edge(path, {1, 1}), PreconditionError);
  EXPECT_THROW(add_edge(path, {0, 7}), PreconditionError);
}

TEST(GraphTest, ShortestDistances) {
  const auto path = shortest_distances(path_graph(3), 0);
  EXPECT_EQ(path, (std::vector<Distance>{0u, 1u, 2u}));
  const auto split = shortest_distances(Graph(2), 0);
  EXPECT_EQ(split[0], Distance(0u));
  EXPECT_FALSE(split[1].has_value());
  EXPECT_EQ(shortest_distances(cycle_graph(4), 0),
            (std::vector<Distance>{0u, 1u, 2u, 1u}));
  EXPECT_THROW(shortest_distances(Graph(2), 5), PreconditionError);
}

TEST(GraphTest, RandomEditSequencesStaySimpleAndSymmetric) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g(7);
    for (int step = 0; step < 60; ++step) {
      const auto a = static_cast<NodeId>(rng.below(7));
      const auto b = static_cast<NodeId>(rng.below(7));
      if (a == b) continue;
      if (g.has_edge(a, b)) {
        g.erase_edge({a, b});
      } else {
        g.insert_edge({a, b});
      }
    }
    expect_simple(g);
    EXPECT_EQ(g.edges().size(), g.edge_count());
  }
}

TEST(GraphTest, DistancesSatisfyTriangleInequality) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_graph(8, 0.3, rng);
    std::vector<std::vector<Distance>> d;
    for (NodeId v = 0; v < 8; ++v) d.push_back(shortest_distances(g, v));
    for (NodeId u = 0; u < 8; ++u)
      for (NodeId v = 0; v < 8; ++v)
        for (NodeId w = 0; w < 8; ++w)
          if (d[u][v] && d[v][w]) {
            ASSERT_TRUE(d[u][w].has_value());
            EXPECT_LE(*d[u][w], *d[u][v] + *d[v][w]);
          }
  }
}

TEST(GeneratorsTest, BarabasiAlbertEdgeCount) {
  const Graph g = generate_barabasi_albert(30, 3, 1);
  EXPECT_EQ(g.edge_count(), 84u);
  expect_simple(g);
  EXPECT_EQ(generate_barabasi_albert(4, 3, 9), complete_graph(4));
  EXPECT_THROW(generate_barabasi_albert(3, 3, 1), PreconditionError);
  EXPECT_THROW(generate_barabasi_albert(10, 0, 1), PreconditionError);
}

TEST(GeneratorsTest, BarabasiAlbertIsHeavyTailed) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = generate_barabasi_albert(200, 3, seed);
    std::vector<std::size_t> deg;
    for (NodeId v = 0; v < 200; ++v) deg.push_back(g.degree(v));
    std::sort(deg.begin(), deg.end());
    EXPECT_GE(deg.back(), 3 * deg[100]) << "seed " << seed;
  }
}

TEST(GeneratorsTest, WattsStrogatzLatticeAndEdgeCount) {
  const Graph lattice = generate_watts_strogatz(30, 10, 0.0, 3);
  for (NodeId v = 0; v < 30; ++v) EXPECT_EQ(lattice.degree(v), 10u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_watts_strogatz(30, 10, 0.25, seed);
    EXPECT_EQ(g.edge_count(), 150u);
    expect_simple(g);
  }
  EXPECT_THROW(generate_watts_strogatz(30, 9, 0.1, 1), PreconditionError);
  EXPECT_THROW(generate_watts_strogatz(10, 10, 0.1, 1), PreconditionError);
}

TEST(GeneratorsTest, WattsStrogatzClusteringBetweenRandomAndLattice) {
  double ws = 0.0, er = 0.0;
  const double lattice =
      oracle::average_clustering(generate_watts_strogatz(30, 10, 0.0, 0));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ws += oracle::average_clustering(generate_watts_strogatz(30, 10, 0.25, seed));
    er += oracle::average_clustering(generate_erdos_renyi(30, 10.0, seed));
  }
  ws /= 50;
  er /= 50;
  EXPECT_GT(ws, er);
  EXPECT_LT(ws, lattice);
}

TEST(GeneratorsTest, ErdosRenyiExtremesAndMean) {
  EXPECT_EQ(generate_erdos_renyi(6, 5.0, 1), complete_graph(6));
  EXPECT_EQ(generate_erdos_renyi(6, 0.0, 1).edge_count(), 0u);
  // Edge count ~ Binomial(435, 10/29): mean 150, sigma^2 = 435 p (1-p).
  const double p = 10.0 / 29.0;
  const double sigma = std::sqrt(435.0 * p * (1 - p));
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    total += static_cast<double>(generate_erdos_renyi(30, 10.0, seed).edge_count());
  }
  const double mean = total / 1000.0;
  EXPECT_NEAR(mean, 150.0, 3.0 * sigma / std::sqrt(1000.0));
  EXPECT_THROW(generate_erdos_renyi(6, 6.0, 1), PreconditionError);
}

TEST(GeneratorsTest, EqualSeedsGiveEqualGraphs) {
  EXPECT_EQ(generate_barabasi_albert(50, 3, 77), generate_barabasi_albert(50, 3, 77));
  EXPECT_EQ(generate_watts_strogatz(50, 6, 0.3, 77),
            generate_watts_strogatz(50, 6, 0.3, 77));
  EXPECT_EQ(generate_erdos_renyi(50, 4.0, 77), generate_erdos_renyi(50, 4.0, 77));
  EXPECT_NE(generate_erdos_renyi(50, 4.0, 77), generate_erdos_renyi(50, 4.0, 78));
}

TEST(EdgeListTest, ParsesPath) {
  std::istringstream in("0 1\n1 2");
  const LabeledGraph lg = parse_edge_list(in);
  EXPECT_EQ(lg.graph, path_graph(3));
}

TEST(EdgeListTest, CommentsAndNamedLabels) {
  std::istringstream in("# terrorists\nalice bob\n\nbob carol\n  # indented comment\n");
  const LabeledGraph lg = parse_edge_list(in);
  EXPECT_EQ(lg.graph, path_graph(3));
  EXPECT_EQ(lg.labels, (std::vector<std::string>{"alice", "bob", "carol"}));
}

TEST(EdgeListTest, SelfLoopReportsLine) {
  std::istringstream in("0 0\n");
  try {
    parse_edge_list(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
}

TEST(EdgeListTest, DuplicatesAndGarbageRejected) {
  std::istringstream dup("0 1\n1 0\n");
  EXPECT_THROW(parse_edge_list(dup), ParseError);
  std::istringstream lone("0 1\n2\n");
  try {
    parse_edge_list(lone);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream extra("0 1 7\n");
  EXPECT_THROW(parse_edge_list(extra), ParseError);
}

TEST(EdgeListTest, RoundTripKeepsIsolatedNodes) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = generate_erdos_renyi(25, 1.5, seed);
    std::stringstream buf;
    write_edge_list(buf, g);
    EXPECT_EQ(parse_edge_list(buf).graph, g);
  }
  const auto path = std::filesystem::temp_directory_path() / "seekev_roundtrip.txt";
  const Graph g = generate_barabasi_albert(30, 3, 4);
  save_edge_list(g, path.string());
  EXPECT_EQ(load_edge_list(path.string()).graph, g);
  std::filesystem::remove(path);
}

TEST(EdgeListTest, NamedLabelsRoundTrip) {
  std::istringstream in("x y\ny z\nz x\n");
  const LabeledGraph lg = parse_edge_list(in);
  std::stringstream buf;
  write_edge_list(buf, lg.graph, &lg.labels);
  const LabeledGraph again = parse_edge_list(buf);
  // Ids may be renumbered; the labelled edge set must survive.
  auto labelled = [](const LabeledGraph& x) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Edge& e : x.graph.edges()) {
      out.emplace_back(std::min(x.label(e.u), x.label(e.v)),
                       std::max(x.label(e.u), x.label(e.v)));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(labelled(again), labelled(lg));
  EXPECT_EQ(again.graph.node_count(), lg.graph.node_count());
}

}  // namespace
}  // namespace seekev
