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

#include <cmath>

#include "oracles.hpp"
#include "seekev/influence.hpp"

namespace seekev {
namespace {

bool within_three_se(const InfluenceEstimate& est, double exact) {
  return std::abs(est.mean - exact) <= 3.0 * est.standard_error + 1e-12;
}

TEST(CascadeTest, TrivialProbabilities) {
  Rng rng(5);
  const Graph g = cycle_graph(7);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(simulate_cascade_once(g, 3, InfluenceModel::independent_cascade(0.0), rng), 1u);
    EXPECT_EQ(simulate_cascade_once(g, 3, InfluenceModel::independent_cascade(1.0), rng), 7u);
  }
}

TEST(CascadeTest, LinearThresholdOnSingleEdge) {
  Rng rng(6);
  const Graph g = path_graph(2);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(simulate_cascade_once(g, 0, InfluenceModel::linear_threshold(), rng), 2u);
  }
}

TEST(CascadeTest, IsolatedNodeUnderThreshold) {
  Rng rng(7);
  const std::vector<Edge> edges = {{0, 1}};
  const Graph g = Graph::from_edges(3, edges);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(simulate_cascade_once(g, 2, InfluenceModel::linear_threshold(), rng), 1u);
    EXPECT_EQ(simulate_cascade_once(g, 0, InfluenceModel::linear_threshold(), rng), 2u);
  }
}

TEST(InfluenceModelTest, RejectsBadProbability) {
  EXPECT_THROW(InfluenceModel::independent_cascade(1.5), PreconditionError);
  EXPECT_THROW(InfluenceModel::independent_cascade(-0.1), PreconditionError);
  EXPECT_THROW(estimate_influence(path_graph(2), 2, {}, 1), PreconditionError);
}

TEST(EstimateTest, StarCenter) {
  const auto est = estimate_influence(star_graph(10), 0, InfluenceModel::independent_cascade(0.15), 42);
  EXPECT_TRUE(within_three_se(est, 2.5)) << est.mean << " +- " << est.standard_error;
  EXPECT_GE(est.samples, 2000u);
}

TEST(EstimateTest, IsolatedNodeStopsAtMinimum) {
  for (const auto model : {InfluenceModel::independent_cascade(), InfluenceModel::linear_threshold()}) {
    const auto est = estimate_influence(Graph(4), 1, model, 3);
    EXPECT_EQ(est.mean, 1.0);
    EXPECT_EQ(est.samples, 2000u);
    EXPECT_FALSE(est.hit_sample_cap);
  }
}

TEST(EstimateTest, TriangleThresholdExact) {
  const Graph g = complete_graph(3);
  // Seed 0; the other two draw thresholds from {1, 2}. Unless both draw 2,
  // everything activates: E = 3 * 3/4 + 1 * 1/4.
  EXPECT_DOUBLE_EQ(oracle::exact_lt(g, 0), 2.5);
  const auto est = estimate_influence(g, 0, InfluenceModel::linear_threshold(), 11);
  EXPECT_TRUE(within_three_se(est, 2.5)) << est.mean;
}

TEST(EstimateTest, PathThresholdExact) {
  // 0-1-2-3 seeded at 0: node 1 fires with prob 1/2, node 2 then with 1/2,
  // node 3 always once 2 is active. E = 1 + 1/2 + 2 * 1/4 = 2.
  EXPECT_DOUBLE_EQ(oracle::exact_lt(path_graph(4), 0), 2.0);
  EXPECT_NEAR(oracle::exact_ic(path_graph(3), 0, 0.5), 1.75, 1e-15);
}

TEST(EstimateTest, Reproducible) {
  Rng rng(12);
  const Graph g = oracle::random_graph(25, 0.15, rng);
  for (const auto model : {InfluenceModel::independent_cascade(0.3), InfluenceModel::linear_threshold()}) {
    const auto a = estimate_influence(g, 4, model, 777);
    const auto b = estimate_influence(g, 4, model, 777);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.standard_error, b.standard_error);
    EXPECT_GE(a.mean, 1.0);
    EXPECT_LE(a.mean, 25.0);
  }
}

TEST(EstimateTest, SampleCapIsReported) {
  StoppingRule rule;
  rule.min_samples = 10;
  rule.lag = 5;
  rule.tolerance = 0.0;
  rule.max_samples = 50;
  const auto est = estimate_influence(cycle_graph(6), 0, InfluenceModel::independent_cascade(0.5), 9, rule);
  EXPECT_TRUE(est.hit_sample_cap);
  EXPECT_EQ(est.samples, 50u);
}

// Property: IC and LT estimates match exhaustive enumeration on every rooted
// graph with at most four nodes.
TEST(EstimateTest, SmallGraphsMatchExactEnumeration) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& [g, root] : oracle::rooted_graphs(n)) {
      const std::uint64_t seed = 1000 + checked;
      const double ic = oracle::exact_ic(g, root, 0.15);
      const auto est_ic = estimate_influence(g, root, InfluenceModel::independent_cascade(0.15), seed);
      EXPECT_TRUE(within_three_se(est_ic, ic)) << "IC n=" << n << " edges=" << g.edge_count();
      const double lt = oracle::exact_lt(g, root);
      const auto est_lt = estimate_influence(g, root, InfluenceModel::linear_threshold(), seed);
      EXPECT_TRUE(within_three_se(est_lt, lt)) << "LT n=" << n << " edges=" << g.edge_count();
      ++checked;
    }
  }
  EXPECT_EQ(checked, 1u + 2u + 6u + 20u);
}

// Property: with the same stream, a larger activation probability never
// gives a significantly smaller estimate.
TEST(EstimateTest, MonotoneInProbability) {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = oracle::random_graph(15, 0.25, rng);
    double prev_mean = 1.0;
    double prev_se = 0.0;
    for (double p : {0.05, 0.15, 0.3, 0.6}) {
      const auto est = estimate_influence(g, 0, InfluenceModel::independent_cascade(p), 500 + trial);
      EXPECT_GE(est.mean, prev_mean - 3.0 * std::hypot(est.standard_error, prev_se));
      prev_mean = est.mean;
      prev_se = est.standard_error;
    }
  }
}

}  // namespace
}  // namespace seekev
