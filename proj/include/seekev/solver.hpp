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

#ifndef SEEKEV_SOLVER_HPP
#define SEEKEV_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "seekev/error.hpp"
#include "seekev/game.hpp"
#include "seekev/lp.hpp"

namespace seekev {

struct SolverStats {
  std::size_t nodes = 0;       // branch-and-bound nodes or oracle assignments
  std::size_t lps_solved = 0;
  std::size_t pivots = 0;
};

struct EquilibriumResult {
  std::vector<double> seeker_mixed;       // one probability per seeker measure
  std::vector<std::size_t> best_response; // evader strategy index per type
  double seeker_value = 0.0;
  std::vector<double> evader_values;      // lambda per type
  SolverStats stats;
};

// Row-major matrix of seeker payoffs: rows are seeker strategies, columns
// are evader strategies.
struct PayoffMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

inline PayoffMatrix seeker_matrix(const PayoffTensor& t, std::size_t type) {
  PayoffMatrix m{t.seeker_count(), t.strategy_count(), {}};
  m.data.resize(m.rows * m.cols);
  for (std::size_t s = 0; s < m.rows; ++s) {
    for (std::size_t j = 0; j < m.cols; ++j) m(s, j) = t.seeker(type, s, j);
  }
  return m;
}

namespace detail {

inline void normalize_distribution(std::vector<double>& p) {
  double total = 0.0;
  for (double& x : p) {
    x = std::max(0.0, x);
    total += x;
  }
  if (total <= 0.0) throw NumericalError("solver returned an empty distribution");
  for (double& x : p) x /= total;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_evader(const PayoffTensor& t) {
  double m = 0.0;
  for (std::size_t f = 0; f < t.type_count(); ++f) {
    for (std::size_t s = 0; s < t.seeker_count(); ++s) {
      for (std::size_t j = 0; j < t.strategy_count(); ++j) {
        m = std::max(m, std::abs(t.evader(f, s, j)));
      }
    }
  }
  return m;
}

inline double expected_evader(const PayoffTensor& t, std::size_t type,
                              const std::vector<double>& p, std::size_t j) {
  double v = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) v += p[s] * t.evader(type, s, j);
  return v;
}

// Fills evader_values and seeker_value from seeker_mixed and best_response.
inline void finish_result(const PayoffTensor& t, EquilibriumResult& r) {
  normalize_distribution(r.seeker_mixed);
  r.evader_values.assign(t.type_count(), 0.0);
  r.seeker_value = 0.0;
  for (std::size_t f = 0; f < t.type_count(); ++f) {
    double best = -kInfinity;
    for (std::size_t j = 0; j < t.strategy_count(); ++j) {
      best = std::max(best, expected_evader(t, f, r.seeker_mixed, j));
    }
    r.evader_values[f] = best;
    double sv = 0.0;
    for (std::size_t s = 0; s < t.seeker_count(); ++s) {
      sv += r.seeker_mixed[s] * t.seeker(f, s, r.best_response[f]);
    }
    r.seeker_value += t.types()[f].probability * sv;
  }
}

}  // namespace detail

// Maximin strategy of the row player: maximize v subject to
// sum_s p_s U(s, e) >= v for every column e. best_response lists one
// minimizing column (the first within 1e-9 of the minimum).
inline EquilibriumResult solve_zero_sum(const PayoffMatrix& u,
                                        const LpOptions& options = {}) {
  if (u.rows == 0 || u.cols == 0 || u.data.size() != u.rows * u.cols) {
    throw PreconditionError("zero-sum payoff matrix is empty or malformed");
  }
  for (double x : u.data) {
    if (!std::isfinite(x)) throw PreconditionError("payoff matrix not finite");
  }
  const double bound = detail::max_abs(u.data) + 1.0;
  LinearProgram lp;
  for (std::size_t s = 0; s < u.rows; ++s) lp.add_variable(0.0);
  const std::size_t v = lp.add_variable(1.0, -bound, bound);
  std::vector<LinearProgram::Term> simplex;
  for (std::size_t s = 0; s < u.rows; ++s) simplex.push_back({s, 1.0});
  lp.add_row(std::move(simplex), RowSense::kEqual, 1.0);
  for (std::size_t e = 0; e < u.cols; ++e) {
    std::vector<LinearProgram::Term> row;
    for (std::size_t s = 0; s < u.rows; ++s) row.push_back({s, u(s, e)});
    row.push_back({v, -1.0});
    lp.add_row(std::move(row), RowSense::kGreaterEqual, 0.0);
  }
  const LpResult sol = solve_lp(lp, options);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalError("maximin LP did not reach an optimum");
  }
  EquilibriumResult r;
  r.seeker_mixed.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(u.rows));
  detail::normalize_distribution(r.seeker_mixed);
  r.stats = {1, 1, sol.pivots};
  std::vector<double> col_value(u.cols, 0.0);
  for (std::size_t e = 0; e < u.cols; ++e) {
    for (std::size_t s = 0; s < u.rows; ++s) col_value[e] += r.seeker_mixed[s] * u(s, e);
  }
  const double worst = *std::min_element(col_value.begin(), col_value.end());
  for (std::size_t e = 0; e < u.cols; ++e) {
    if (col_value[e] <= worst + 1e-9) {
      r.best_response.push_back(e);
      break;
    }
  }
  r.seeker_value = worst;
  r.evader_values = {-worst};
  return r;
}

// Zero-sum game of one type slice of a tensor.
inline EquilibriumResult solve_zero_sum(const PayoffTensor& t, std::size_t type,
                                        const LpOptions& options = {}) {
  EquilibriumResult r = solve_zero_sum(seeker_matrix(t, type), options);
  const double lambda =
      detail::expected_evader(t, type, r.seeker_mixed, r.best_response[0]);
  r.evader_values = {lambda};
  return r;
}

inline constexpr std::size_t kStackelbergStrategyGuard = 10000;
inline constexpr std::size_t kStackelbergNodeLimit = 2000000;

struct StackelbergOptions {
  LpOptions lp;
  double gap = 1e-6;
  double integrality = 1e-7;
};

namespace detail {

// Variable layout of the linearized program: p_s, then z^f(s, e), then
// lambda^f.
struct MilpLayout {
  std::size_t types, seekers, strategies;
  std::size_t p(std::size_t s) const { return s; }
  std::size_t z(std::size_t f, std::size_t s, std::size_t e) const {
    return seekers + (f * seekers + s) * strategies + e;
  }
  std::size_t lambda(std::size_t f) const {
    return seekers + types * seekers * strategies + f;
  }
};

}  // namespace detail

// Bayesian Stackelberg equilibrium (seeker leads with a mixed strategy; each
// evader type best-responds with a pure strategy, ties resolved in the
// seeker's favour).
//
// The bilinear program is linearized with z^f(s,e) = p_s * q^f(e):
//
//   max  sum_f P(f) sum_{s,e} z^f(s,e) U_s(f,s,e)
//   s.t. sum_s p_s = 1
//        sum_e z^f(s,e) = p_s                          for all f, s
//        lambda^f >= sum_s p_s U_e(f,s,e)              for all f, e
//        lambda^f <= sum_s p_s U_e(f,s,e) + eta (1 - q^f(e))
//        q^f(e) = sum_s z^f(s,e) in {0, 1}
//
// and solved by depth-first branch and bound on q (most fractional first,
// q = 1 child explored first). eta = 2 (max |U_e| + 1).
inline EquilibriumResult solve_stackelberg(const PayoffTensor& t,
                                           const StackelbergOptions& options = {}) {
  const std::size_t nf = t.type_count();
  const std::size_t ns = t.seeker_count();
  const std::size_t ne = t.strategy_count();
  if (ne == 0) throw PreconditionError("tensor has no evader strategies");
  if (ne > kStackelbergStrategyGuard) {
    throw GuardExceeded("Stackelberg solver limited to " +
                        std::to_string(kStackelbergStrategyGuard) +
                        " evader strategies, got " + std::to_string(ne));
  }
  validate_types(t.types());
  const double umax = detail::max_abs_evader(t);
  if (!std::isfinite(umax)) throw PreconditionError("tensor not finite");
  const double eta = 2.0 * (umax + 1.0);
  const detail::MilpLayout L{nf, ns, ne};

  // fix[f * ne + e]: -1 free, 0 forced off, 1 forced on.
  using Fixing = std::vector<std::int8_t>;

  auto build = [&](const Fixing& fix) {
    LinearProgram lp;
    for (std::size_t s = 0; s < ns; ++s) lp.add_variable(0.0);
    for (std::size_t f = 0; f < nf; ++f) {
      std::size_t forced = ne;
      for (std::size_t e = 0; e < ne; ++e) {
        if (fix[f * ne + e] == 1) forced = e;
      }
      for (std::size_t s = 0; s < ns; ++s) {
        for (std::size_t e = 0; e < ne; ++e) {
          const bool off =
              fix[f * ne + e] == 0 || (forced != ne && forced != e);
          lp.add_variable(t.types()[f].probability * t.seeker(f, s, e), 0.0,
                          off ? 0.0 : kInfinity);
        }
      }
    }
    for (std::size_t f = 0; f < nf; ++f) {
      lp.add_variable(0.0, -(umax + 1.0), umax + 1.0);
    }
    std::vector<LinearProgram::Term> row;
    for (std::size_t s = 0; s < ns; ++s) row.push_back({L.p(s), 1.0});
    lp.add_row(row, RowSense::kEqual, 1.0);
    for (std::size_t f = 0; f < nf; ++f) {
      for (std::size_t s = 0; s < ns; ++s) {
        row.clear();
        for (std::size_t e = 0; e < ne; ++e) row.push_back({L.z(f, s, e), 1.0});
        row.push_back({L.p(s), -1.0});
        lp.add_row(row, RowSense::kEqual, 0.0);
      }
      for (std::size_t e = 0; e < ne; ++e) {
        row.clear();
        row.push_back({L.lambda(f), 1.0});
        for (std::size_t s = 0; s < ns; ++s) row.push_back({L.p(s), -t.evader(f, s, e)});
        lp.add_row(row, RowSense::kGreaterEqual, 0.0);
        for (std::size_t s = 0; s < ns; ++s) row.push_back({L.z(f, s, e), eta});
        lp.add_row(row, RowSense::kLessEqual, eta);
      }
    }
    return lp;
  };

  EquilibriumResult best;
  double incumbent = -kInfinity;
  SolverStats stats;
  std::vector<Fixing> stack{Fixing(nf * ne, -1)};
  while (!stack.empty()) {
    Fixing fix = std::move(stack.back());
    stack.pop_back();
    if (++stats.nodes > kStackelbergNodeLimit) {
      throw NumericalError("branch and bound exceeded " +
                           std::to_string(kStackelbergNodeLimit) + " nodes");
    }
    const LpResult sol = solve_lp(build(fix), options.lp);
    ++stats.lps_solved;
    stats.pivots += sol.pivots;
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status == LpStatus::kUnbounded) {
      throw NumericalError("Stackelberg relaxation unbounded after " +
                           std::to_string(stats.nodes) + " nodes");
    }
    if (sol.objective <= incumbent + options.gap) continue;

    std::size_t branch = nf * ne;
    double most = -1.0;
    std::vector<std::size_t> response(nf, 0);
    for (std::size_t f = 0; f < nf; ++f) {
      double top = -1.0;
      for (std::size_t e = 0; e < ne; ++e) {
        double q = 0.0;
        for (std::size_t s = 0; s < ns; ++s) q += sol.x[L.z(f, s, e)];
        if (q > top) {
          top = q;
          response[f] = e;
        }
        const double frac = std::min(q, 1.0 - q);
        if (frac > options.integrality && frac > most + 1e-12) {
          most = frac;
          branch = f * ne + e;
        }
      }
    }
    if (branch == nf * ne) {
      incumbent = sol.objective;
      best.seeker_mixed.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(ns));
      best.best_response = response;
      continue;
    }
    Fixing off = fix;
    off[branch] = 0;
    fix[branch] = 1;
    stack.push_back(std::move(off));
    stack.push_back(std::move(fix));
  }
  if (best.seeker_mixed.empty()) {
    throw NumericalError("Stackelberg program infeasible after " +
                         std::to_string(stats.nodes) + " nodes");
  }
  detail::finish_result(t, best);
  best.stats = stats;
  return best;
}

inline constexpr std::uint64_t kOracleAssignmentGuard = 1000000;

// Reference solver: for every joint assignment of one pure response per
// type, maximize the seeker's payoff over mixtures that make each assigned
// response a best response for its type; keep the best assignment.
inline EquilibriumResult enumerate_oracle(const PayoffTensor& t,
                                          const LpOptions& lp_options = {}) {
  const std::size_t nf = t.type_count();
  const std::size_t ns = t.seeker_count();
  const std::size_t ne = t.strategy_count();
  if (ne == 0) throw PreconditionError("tensor has no evader strategies");
  validate_types(t.types());
  std::uint64_t combos = 1;
  for (std::size_t f = 0; f < nf; ++f) {
    combos *= ne;
    if (combos > kOracleAssignmentGuard) {
      throw GuardExceeded("oracle limited to " +
                          std::to_string(kOracleAssignmentGuard) +
                          " response assignments");
    }
  }
  EquilibriumResult best;
  double best_value = -kInfinity;
  SolverStats stats;
  std::vector<std::size_t> assign(nf, 0);
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint64_t rest = c;
    for (std::size_t f = 0; f < nf; ++f) {
      assign[f] = static_cast<std::size_t>(rest % ne);
      rest /= ne;
    }
    LinearProgram lp;
    for (std::size_t s = 0; s < ns; ++s) {
      double obj = 0.0;
      for (std::size_t f = 0; f < nf; ++f) {
        obj += t.types()[f].probability * t.seeker(f, s, assign[f]);
      }
      lp.add_variable(obj);
    }
    std::vector<LinearProgram::Term> row;
    for (std::size_t s = 0; s < ns; ++s) row.push_back({s, 1.0});
    lp.add_row(row, RowSense::kEqual, 1.0);
    for (std::size_t f = 0; f < nf; ++f) {
      for (std::size_t e = 0; e < ne; ++e) {
        if (e == assign[f]) continue;
        row.clear();
        for (std::size_t s = 0; s < ns; ++s) {
          row.push_back({s, t.evader(f, s, assign[f]) - t.evader(f, s, e)});
        }
        lp.add_row(row, RowSense::kGreaterEqual, 0.0);
      }
    }
    const LpResult sol = solve_lp(lp, lp_options);
    ++stats.nodes;
    ++stats.lps_solved;
    stats.pivots += sol.pivots;
    if (sol.status != LpStatus::kOptimal) continue;
    if (sol.objective > best_value) {
      best_value = sol.objective;
      best.seeker_mixed = sol.x;
      best.best_response = assign;
    }
  }
  if (best.seeker_mixed.empty()) {
    throw NumericalError("no response assignment admits a seeker strategy");
  }
  detail::finish_result(t, best);
  best.stats = stats;
  return best;
}

}  // namespace seekev

#endif  // SEEKEV_SOLVER_HPP
