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

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "seekev/hiding.hpp"
#include "seekev/strategy_file.hpp"

namespace seekev {
namespace {

TEST(EnumerateTest, DegreeTwoEvaderBudgetOne) {
  const auto inst = make_instance(path_graph(3), 1, 1, CentralityMeasure::kDegree, 1);
  const auto all = enumerate_strategies(inst);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_TRUE(all[0].is_noop());
  EXPECT_EQ(all[0].label, kNoopLabel);
  // Within one cost level, fewer additions come first.
  EXPECT_EQ(all[1].removals, (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(all[2].removals, (std::vector<Edge>{{1, 2}}));
  EXPECT_EQ(all[3].additions, (std::vector<Edge>{{0, 2}}));
  EXPECT_TRUE(all[3].removals.empty());
}

TEST(EnumerateTest, ZeroBudgetIsNoopOnly) {
  const auto inst = make_instance(star_graph(4), 0, 0, CentralityMeasure::kDegree, 1);
  const auto all = enumerate_strategies(inst);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(all[0].is_noop());
}

TEST(EnumerateTest, CanonicalOrder) {
  const auto inst = make_instance(star_graph(4), 0, 3, CentralityMeasure::kDegree, 1);
  const auto all = enumerate_strategies(inst);
  for (std::size_t i = 2; i < all.size(); ++i) {
    const auto& a = all[i - 1];
    const auto& b = all[i];
    if (a.cost() != b.cost()) {
      EXPECT_LT(a.cost(), b.cost());
    } else if (a.additions.size() != b.additions.size()) {
      EXPECT_LT(a.additions.size(), b.additions.size());
    } else {
      EXPECT_LT(std::tie(a.additions, a.removals), std::tie(b.additions, b.removals));
    }
  }
}

// Property: the full enumeration has exactly the closed-form size, its
// members are distinct, and applying any of them keeps the graph simple.
TEST(EnumerateTest, CountsMatchDirectCounting) {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_graph(8, 0.45, rng);
    const auto evader = static_cast<NodeId>(rng.below(8));
    const std::size_t b = rng.below(4);
    const auto inst = make_instance(g, evader, b, CentralityMeasure::kDegree, 1);
    const std::size_t na = inst.addable.size(), nr = inst.removable.size();
    std::uint64_t direct = 0;
    for (std::size_t a = 0; a <= na; ++a)
      for (std::size_t r = 0; r <= nr; ++r)
        if (a + r >= 1 && a + r <= b) direct += detail::binomial(na, a) * detail::binomial(nr, r);
    EXPECT_EQ(count_strategies(na, nr, b), direct);
    const auto all = enumerate_strategies(inst);
    ASSERT_EQ(all.size(), direct + 1);
    std::set<std::pair<std::vector<Edge>, std::vector<Edge>>> distinct;
    for (const auto& s : all) {
      EXPECT_LE(s.cost(), b);
      distinct.emplace(s.additions, s.removals);
      const Graph h = apply_strategy(g, s);
      EXPECT_EQ(h.edge_count(), g.edge_count() + s.additions.size() - s.removals.size());
      for (NodeId v = 0; v < h.node_count(); ++v) {
        for (NodeId w : h.neighbors(v)) {
          EXPECT_NE(v, w);
          EXPECT_TRUE(h.has_edge(w, v));
        }
      }
    }
    EXPECT_EQ(distinct.size(), all.size());
  }
}

TEST(EnumerateTest, SamplingIsExactSizeAndDeterministic) {
  const auto inst = make_instance(star_graph(6), 0, 3,
                                  CentralityMeasure::kDegree, 1);
  const auto full = enumerate_strategies(inst);
  const std::uint64_t total = full.size() - 1;
  const auto a = enumerate_strategies(inst, 0.1, 5);
  const auto b = enumerate_strategies(inst, 0.1, 5);
  const auto c = enumerate_strategies(inst, 0.1, 6);
  EXPECT_EQ(a.size(), static_cast<std::size_t>(std::llround(0.1 * total)) + 1);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_TRUE(a[0].is_noop());
  // The sample is a subsequence of the full enumeration.
  std::size_t j = 0;
  for (const auto& s : a) {
    while (j < full.size() && !(full[j] == s)) ++j;
    ASSERT_LT(j, full.size());
  }
  EXPECT_THROW(enumerate_strategies(inst, 0.0, 1), PreconditionError);
}

TEST(ApplyTest, Examples) {
  const Graph tri = complete_graph(3);
  EXPECT_EQ(apply_strategy(tri, {}), tri);
  EvaderStrategy drop;
  drop.removals = {{0, 1}};
  EXPECT_EQ(apply_strategy(tri, drop).edges(), (std::vector<Edge>{{0, 2}, {1, 2}}));
  EvaderStrategy close;
  close.additions = {{1, 2}};
  EXPECT_EQ(apply_strategy(star_graph(2), close), tri);
  EXPECT_THROW(apply_strategy(tri, close), PreconditionError);
}

TEST(InstanceTest, Validation) {
  auto inst = make_instance(star_graph(3), 0, 2, CentralityMeasure::kDegree, 1);
  EXPECT_EQ(inst.addable.size(), 3u);
  EXPECT_EQ(inst.removable.size(), 3u);
  inst.addable.push_back({0, 1});
  EXPECT_THROW(inst.validate(), PreconditionError);
  EXPECT_THROW(make_instance(star_graph(3), 0, 2, CentralityMeasure::kDegree, 4),
               PreconditionError);
}

TEST(RoamTest, StarCentre) {
  const auto s = roam_step(star_graph(4), 0, 2);
  EXPECT_EQ(s.removals, (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(s.additions, (std::vector<Edge>{{1, 2}, {1, 3}}));
  EXPECT_EQ(s.label, "ROAM(2)");
  const auto pure = roam_step(star_graph(4), 0, 0);
  EXPECT_EQ(pure.removals.size(), 1u);
  EXPECT_TRUE(pure.additions.empty());
}

TEST(RoamTest, PicksHighestDegreeNeighbour) {
  // Evader 0 with neighbours 1, 2, 3; node 3 also links to 4 and 5.
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}, {1, 4}};
  const Graph g = Graph::from_edges(6, edges);
  const auto s = roam_step(g, 0, 1);
  EXPECT_EQ(s.removals, (std::vector<Edge>{{0, 3}}));
  EXPECT_EQ(s.additions, (std::vector<Edge>{{1, 3}}));
}

TEST(RoamTest, NoEligibleTargets) {
  // Neighbour 1 is adjacent to the other neighbours 2 and 3.
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  const auto s = roam_step(Graph::from_edges(4, edges), 0, 3);
  EXPECT_EQ(s.removals, (std::vector<Edge>{{0, 1}}));
  EXPECT_TRUE(s.additions.empty());
  EXPECT_THROW(roam_step(Graph(2), 0, 1), PreconditionError);
}

TEST(RoamTest, SchedulesForBudgetTen) {
  std::vector<std::string> labels;
  for (const auto& s : roam_schedules(10)) labels.push_back(s.label());
  EXPECT_EQ(labels, (std::vector<std::string>{"ROAM(1)x5", "ROAM(2)x3+ROAM(0)",
                                              "ROAM(3)x2+ROAM(1)", "ROAM(4)x2"}));
}

TEST(RoamTest, SmallBudgets) {
  const auto four = roam_schedules(4);
  ASSERT_EQ(four.size(), 1u);
  EXPECT_EQ(four[0].label(), "ROAM(1)x2");
  const auto five = roam_schedules(5);
  ASSERT_EQ(five.size(), 1u);
  EXPECT_EQ(five[0].label(), "ROAM(1)x2+ROAM(0)");
  EXPECT_THROW(roam_schedules(3), PreconditionError);
}

TEST(RoamTest, ScheduleInvariants) {
  for (std::size_t b = 4; b <= 60; ++b) {
    for (const auto& s : roam_schedules(b)) {
      EXPECT_EQ(s.total_cost(), b);
      EXPECT_GE(s.iterations, 2u);
      EXPECT_GE(s.per_iteration_budget, 2u);
      EXPECT_LE(s.per_iteration_budget, b / 2);
      EXPECT_LT(s.remainder, s.per_iteration_budget);
    }
  }
}

TEST(ScheduleTest, PathTrace) {
  const Graph g = path_graph(3);  // 0-1-2, evader 1 plays the middle node
  const RoamSchedule two{2, 2, 0};
  const auto out = execute_schedule(g, 1, two);
  EXPECT_EQ(out.steps_completed, 2u);
  EXPECT_EQ(out.graph.degree(1), 0u);
  EXPECT_FALSE(out.stopped_early);
  EXPECT_EQ(out.spent, 3u);
  EXPECT_EQ(out.net.removals, (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(out.net.additions, (std::vector<Edge>{{0, 2}}));

  const auto longer = execute_schedule(g, 1, RoamSchedule{2, 3, 0});
  EXPECT_TRUE(longer.stopped_early);
  EXPECT_EQ(longer.steps_completed, 2u);

  const auto empty = execute_schedule(g, 1, RoamSchedule{2, 0, 0});
  EXPECT_EQ(empty.graph, g);
  EXPECT_TRUE(empty.net.is_noop());
}

TEST(ScheduleTest, NeverRaisesEvaderDegree) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_graph(20, 0.3, rng);
    const auto evader = static_cast<NodeId>(rng.below(20));
    for (const auto& s : roam_schedules(4 + rng.below(12))) {
      const auto out = execute_schedule(g, evader, s);
      EXPECT_LE(out.graph.degree(evader), g.degree(evader));
      EXPECT_LE(out.spent, s.total_cost());
      EXPECT_EQ(apply_strategy(g, out.net), out.graph);
    }
  }
}

TEST(BruteForceTest, TopNodeCannotHideWithoutBudget) {
  const auto inst = make_instance(star_graph(4), 0, 0, CentralityMeasure::kDegree, 4);
  EXPECT_FALSE(solve_local_hiding_bruteforce(inst).has_value());
}

TEST(BruteForceTest, StarCentreHides) {
  // A leaf still attached to the centre ends with degree 1 + a against the
  // centre's 4 - r, so strictly out-ranking it needs a + r >= 4.
  EXPECT_FALSE(solve_local_hiding_bruteforce(
                   make_instance(star_graph(4), 0, 3, CentralityMeasure::kDegree, 1))
                   .has_value());
  const auto inst = make_instance(star_graph(4), 0, 4, CentralityMeasure::kDegree, 1);
  const auto s = solve_local_hiding_bruteforce(inst);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->cost(), 4u);
  EXPECT_TRUE(is_hidden(apply_strategy(inst.graph, *s), 0, CentralityMeasure::kDegree, 1));
}

// Property: every answer of the brute-force solver really hides the evader,
// and a negative answer means no enumerated strategy does.
TEST(BruteForceTest, SelfConsistent) {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_graph(7, 0.5, rng);
    const auto evader = static_cast<NodeId>(rng.below(7));
    const auto measure = kAllMeasures[trial % kMeasureCount];
    if (measure == CentralityMeasure::kEigenvector && g.edge_count() < 2) continue;
    const auto inst = make_instance(g, evader, 1 + rng.below(3), measure, 1 + rng.below(3));
    bool any = false;
    for (const auto& s : enumerate_strategies(inst)) {
      const Graph h = apply_strategy(g, s);
      if (h.edge_count() == 0 && measure == CentralityMeasure::kEigenvector) continue;
      any = any || is_hidden(h, evader, measure, inst.safety_margin);
    }
    const auto found = solve_local_hiding_bruteforce(inst);
    if (found) {
      EXPECT_TRUE(is_hidden(apply_strategy(g, *found), evader, measure, inst.safety_margin));
    }
    EXPECT_EQ(found.has_value(), any);
  }
}

TEST(StrategyFileTest, RoundTrip) {
  const auto inst = make_instance(star_graph(4), 0, 2, CentralityMeasure::kDegree, 1);
  auto all = enumerate_strategies(inst);
  all.push_back(roam_step(star_graph(4), 0, 2));
  std::stringstream buf;
  write_strategies(buf, all);
  EXPECT_EQ(buf.str().substr(0, 13), "ADD|DEL|noop\n");
  const auto back = parse_strategies(buf);
  EXPECT_EQ(back, all);
}

TEST(StrategyFileTest, Grammar) {
  std::istringstream in("# replay\n\nADD 1-2;1-3|DEL 0-1|ROAM(2)\n");
  const auto s = parse_strategies(in);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].additions, (std::vector<Edge>{{1, 2}, {1, 3}}));
  EXPECT_EQ(s[0].removals, (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(s[0].label, "ROAM(2)");
}

TEST(StrategyFileTest, ErrorsCarryLineNumbers) {
  for (const char* bad : {"ADD 1-2|DEL\n", "ADD 1-x|DEL|l\n", "ADD 2-2|DEL|l\n", "PUT|DEL|l\n"}) {
    std::istringstream in(std::string("ADD|DEL|ok\n") + bad);
    try {
      parse_strategies(in);
      ADD_FAILURE() << bad;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u) << bad;
    }
  }
}

}  // namespace
}  // namespace seekev
