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

#include "oracles.hpp"
#include "seekev/solver.hpp"

namespace seekev {
namespace {

PayoffMatrix matrix(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return {rows, cols, std::move(data)};
}

void expect_distribution(const std::vector<double>& p) {
  double total = 0.0;
  for (double x : p) {
    EXPECT_GE(x, -1e-12);
    total += x;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

// Each type's reported response is a best response to the seeker mixture,
// and lambda is that best value.
void expect_follower_rational(const PayoffTensor& t, const EquilibriumResult& r) {
  ASSERT_EQ(r.best_response.size(), t.type_count());
  for (std::size_t f = 0; f < t.type_count(); ++f) {
    double best = -kInfinity;
    for (std::size_t e = 0; e < t.strategy_count(); ++e) {
      best = std::max(best, detail::expected_evader(t, f, r.seeker_mixed, e));
    }
    EXPECT_NEAR(detail::expected_evader(t, f, r.seeker_mixed, r.best_response[f]), best, 1e-6);
    EXPECT_NEAR(r.evader_values[f], best, 1e-6);
  }
}

TEST(ZeroSumTest, MatchingPennies) {
  const auto r = solve_zero_sum(matrix(2, 2, {1, -1, -1, 1}));
  EXPECT_NEAR(r.seeker_value, 0.0, 1e-9);
  EXPECT_NEAR(r.seeker_mixed[0], 0.5, 1e-9);
  expect_distribution(r.seeker_mixed);
}

TEST(ZeroSumTest, DominantRow) {
  const auto r = solve_zero_sum(matrix(3, 2, {0, 0, 2, 3, 1, 1}));
  EXPECT_NEAR(r.seeker_mixed[1], 1.0, 1e-9);
  EXPECT_NEAR(r.seeker_value, 2.0, 1e-9);
  EXPECT_EQ(r.best_response, (std::vector<std::size_t>{0}));
}

TEST(ZeroSumTest, RejectsBadMatrix) {
  EXPECT_THROW(solve_zero_sum(matrix(0, 0, {})), PreconditionError);
  EXPECT_THROW(solve_zero_sum(matrix(1, 1, {std::nan("")})), PreconditionError);
}

// Property: the value is the worst column against the returned mixture, and
// no pure row guarantees more.
TEST(ZeroSumTest, DualitySelfCheck) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(6);
    PayoffMatrix u{rows, cols, std::vector<double>(rows * cols)};
    for (double& x : u.data) x = 2.0 * rng.uniform01() - 1.0;
    const auto r = solve_zero_sum(u);
    expect_distribution(r.seeker_mixed);
    double worst = kInfinity;
    for (std::size_t e = 0; e < cols; ++e) {
      double v = 0.0;
      for (std::size_t s = 0; s < rows; ++s) v += r.seeker_mixed[s] * u(s, e);
      worst = std::min(worst, v);
    }
    EXPECT_NEAR(r.seeker_value, worst, 1e-9);
    for (std::size_t s = 0; s < rows; ++s) {
      double row_min = kInfinity;
      for (std::size_t e = 0; e < cols; ++e) row_min = std::min(row_min, u(s, e));
      EXPECT_LE(row_min, r.seeker_value + 1e-9);
    }
  }
}

TEST(StackelbergTest, ConstantEvaderUtilities) {
  PayoffTensor t({{0.5, 1.0}}, 3, GameMode::kNonZeroSum);
  const double seeker[4][3] = {{0.1, 0.9, 0.2}, {0.5, 0.3, 0.4}, {0.0, 0.0, 0.95}, {0.2, 0.2, 0.2}};
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t e = 0; e < 3; ++e) {
      t.evader(0, s, e) = 0.25;
      t.seeker(0, s, e) = seeker[s][e];
    }
  const auto r = solve_stackelberg(t);
  EXPECT_NEAR(r.seeker_value, 0.95, 1e-9);
  EXPECT_NEAR(r.seeker_mixed[2], 1.0, 1e-9);
  EXPECT_EQ(r.best_response, (std::vector<std::size_t>{2}));
}

TEST(StackelbergTest, LeaderCommitmentBeatsPureStrategies) {
  // Rows U, D against columns L, R with payoffs (seeker, evader):
  //   U: (1, 1) (3, 0)    D: (0, 0) (2, 1)
  // Pure U earns 1, pure D earns 2; mixing U with weight 1/2 keeps R a best
  // response and earns 2.5. The two extra seeker rows are copies of D made
  // worse for the seeker.
  PayoffTensor t({{0.5, 1.0}}, 2, GameMode::kNonZeroSum);
  const double us[2][2] = {{1, 3}, {0, 2}};
  const double ue[2][2] = {{1, 0}, {0, 1}};
  for (std::size_t s = 0; s < kMeasureCount; ++s)
    for (std::size_t e = 0; e < 2; ++e) {
      const std::size_t row = s < 2 ? s : 1;
      t.evader(0, s, e) = ue[row][e];
      t.seeker(0, s, e) = us[row][e] - (s >= 2 ? 5.0 : 0.0);
    }
  const auto r = solve_stackelberg(t);
  EXPECT_NEAR(r.seeker_value, 2.5, 1e-7);
  EXPECT_NEAR(r.seeker_mixed[0], 0.5, 1e-7);
  EXPECT_NEAR(r.seeker_mixed[1], 0.5, 1e-7);
  EXPECT_EQ(r.best_response, (std::vector<std::size_t>{1}));
  EXPECT_NEAR(enumerate_oracle(t).seeker_value, 2.5, 1e-7);
}

TEST(StackelbergTest, SingleStrategyReducesToBestRow) {
  Rng rng(3);
  const PayoffTensor t = oracle::random_tensor(2, 1, GameMode::kNonZeroSum, rng);
  double best = -kInfinity;
  for (std::size_t s = 0; s < kMeasureCount; ++s) {
    double v = 0.0;
    for (std::size_t f = 0; f < 2; ++f) v += t.types()[f].probability * t.seeker(f, s, 0);
    best = std::max(best, v);
  }
  EXPECT_NEAR(solve_stackelberg(t).seeker_value, best, 1e-9);
  EXPECT_NEAR(enumerate_oracle(t).seeker_value, best, 1e-9);
}

// Property: branch and bound agrees with exhaustive enumeration of the
// followers' responses.
TEST(StackelbergTest, MatchesOracleOnRandomTensors) {
  Rng rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t types = 1 + rng.below(3);
    const std::size_t strategies = 3 + rng.below(4);
    const PayoffTensor t = oracle::random_tensor(types, strategies, GameMode::kNonZeroSum, rng);
    const auto milp = solve_stackelberg(t);
    const auto ref = enumerate_oracle(t);
    EXPECT_NEAR(milp.seeker_value, ref.seeker_value, 1e-6) << trial;
    expect_distribution(milp.seeker_mixed);
    expect_follower_rational(t, milp);
    expect_follower_rational(t, ref);
  }
}

// Property: in zero-sum games committing first gives no advantage, so the
// Stackelberg value equals the Bayesian maximin value.
TEST(StackelbergTest, ZeroSumMatchesMaximin) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t types = 1 + rng.below(3);
    const PayoffTensor t = oracle::random_tensor(types, 3 + rng.below(4), GameMode::kZeroSum, rng);
    LinearProgram lp;
    for (std::size_t s = 0; s < kMeasureCount; ++s) lp.add_variable(0.0);
    std::vector<LinearProgram::Term> simplex;
    for (std::size_t s = 0; s < kMeasureCount; ++s) simplex.push_back({s, 1.0});
    lp.add_row(simplex, RowSense::kEqual, 1.0);
    for (std::size_t f = 0; f < types; ++f) {
      const auto v = lp.add_variable(t.types()[f].probability, -2.0, 2.0);
      for (std::size_t e = 0; e < t.strategy_count(); ++e) {
        std::vector<LinearProgram::Term> row;
        for (std::size_t s = 0; s < kMeasureCount; ++s) row.push_back({s, t.seeker(f, s, e)});
        row.push_back({v, -1.0});
        lp.add_row(row, RowSense::kGreaterEqual, 0.0);
      }
    }
    const auto maximin = solve_lp(lp);
    ASSERT_EQ(maximin.status, LpStatus::kOptimal);
    EXPECT_NEAR(solve_stackelberg(t).seeker_value, maximin.objective, 1e-6) << trial;
    if (types == 1) {
      const auto zs = solve_zero_sum(t, 0);
      EXPECT_NEAR(zs.seeker_value, maximin.objective, 1e-9);
      expect_follower_rational(t, zs);
    }
  }
}

// Property: strictly dominated evader strategies never matter.
TEST(StackelbergTest, PruningKeepsTheValue) {
  Rng rng(9);
  std::size_t removed = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const PayoffTensor t = oracle::random_tensor(1 + rng.below(2), 6, GameMode::kNonZeroSum, rng, 0.5);
    const auto pruned = prune_dominated(t);
    removed += t.strategy_count() - pruned.kept.size();
    EXPECT_NEAR(solve_stackelberg(t).seeker_value, solve_stackelberg(pruned.tensor).seeker_value, 1e-9);
  }
  EXPECT_GT(removed, 0u);
}

// Property: positive rescaling of all utilities changes nothing but scale.
TEST(StackelbergTest, ScalingInvariance) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    PayoffTensor t = oracle::random_tensor(2, 4, GameMode::kNonZeroSum, rng);
    const auto base = solve_stackelberg(t);
    for (std::size_t f = 0; f < 2; ++f)
      for (std::size_t s = 0; s < kMeasureCount; ++s)
        for (std::size_t e = 0; e < 4; ++e) {
          t.evader(f, s, e) *= 3.5;
          t.seeker(f, s, e) *= 3.5;
        }
    const auto scaled = solve_stackelberg(t);
    EXPECT_EQ(scaled.best_response, base.best_response) << trial;
    EXPECT_NEAR(scaled.seeker_value, 3.5 * base.seeker_value, 1e-6);
    for (std::size_t s = 0; s < kMeasureCount; ++s) {
      EXPECT_EQ(scaled.seeker_mixed[s] > 1e-9, base.seeker_mixed[s] > 1e-9) << trial;
    }
  }
}

TEST(StackelbergTest, Guards) {
  PayoffTensor big({{0.5, 1.0}}, kStackelbergStrategyGuard + 1, GameMode::kNonZeroSum);
  EXPECT_THROW(solve_stackelberg(big), GuardExceeded);
  Rng rng(1);
  const PayoffTensor wide = oracle::random_tensor(3, 101, GameMode::kNonZeroSum, rng);
  EXPECT_THROW(enumerate_oracle(wide), GuardExceeded);
}

}  // namespace
}  // namespace seekev
