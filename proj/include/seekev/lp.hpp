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

#ifndef SEEKEV_LP_HPP
#define SEEKEV_LP_HPP

// Dense two-phase primal simplex for the small LPs of the game solvers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "seekev/error.hpp"

namespace seekev {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearProgram {
  struct Term {
    std::size_t var;
    double coeff;
  };
  struct Row {
    std::vector<Term> terms;
    RowSense sense = RowSense::kLessEqual;
    double rhs = 0.0;
  };

  bool maximize = true;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  std::size_t var_count() const { return objective.size(); }

  std::size_t add_variable(double obj, double lo = 0.0, double hi = kInfinity) {
    objective.push_back(obj);
    lower.push_back(lo);
    upper.push_back(hi);
    return objective.size() - 1;
  }

  void add_row(std::vector<Term> terms, RowSense sense, double rhs) {
    rows.push_back({std::move(terms), sense, rhs});
  }

  void validate() const {
    if (lower.size() != var_count() || upper.size() != var_count()) {
      throw PreconditionError("LP bound vectors do not match variable count");
    }
    for (std::size_t j = 0; j < var_count(); ++j) {
      if (!std::isfinite(objective[j]) || std::isnan(lower[j]) ||
          std::isnan(upper[j]) || lower[j] > upper[j] || lower[j] == kInfinity ||
          upper[j] == -kInfinity) {
        throw PreconditionError("LP variable " + std::to_string(j) +
                                " has invalid data");
      }
    }
    for (const Row& r : rows) {
      if (!std::isfinite(r.rhs)) throw PreconditionError("LP rhs not finite");
      for (const Term& t : r.terms) {
        if (t.var >= var_count() || !std::isfinite(t.coeff)) {
          throw PreconditionError("LP row references bad variable/coefficient");
        }
      }
    }
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

enum class PivotRule {
  kBland,              // smallest eligible index; never cycles
  kDantzigThenBland,   // largest reduced cost, Bland after degenerate stalls
};

struct LpOptions {
  PivotRule rule = PivotRule::kDantzigThenBland;
  double tolerance = 1e-9;
  std::size_t max_pivots = 200000;
  std::size_t degenerate_switch = 50;  // stall length that triggers Bland
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& cost) {
    const std::size_t w = n_ + 1;
    double* prow = &a_[r * w];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &a_[i * w];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = cost[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < w; ++j) cost[j] -= f * prow[j];
      cost[c] = 0.0;
    }
    basis_[r] = c;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

// Maximizes over the tableau with reduced-cost row `cost` (cost[j] > 0 means
// column j improves; cost[n] holds minus the objective value). Columns with
// allowed[j] == false never enter.
inline LpStatus run_simplex(Tableau& t, std::vector<double>& cost,
                            const std::vector<bool>& allowed,
                            const LpOptions& opt, std::size_t& pivots) {
  const double eps = opt.tolerance;
  std::size_t stall = 0;
  while (true) {
    const bool bland =
        opt.rule == PivotRule::kBland || stall >= opt.degenerate_switch;
    std::size_t enter = t.cols();
    double best = eps;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j] || cost[j] <= eps) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (cost[j] > best) {
        best = cost[j];
        enter = j;
      }
    }
    if (enter == t.cols()) return LpStatus::kOptimal;

    std::size_t leave = t.rows();
    double ratio = kInfinity;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= eps) continue;
      const double r = std::max(0.0, t.rhs(i)) / a;
      // Minimum ratio; near-ties go to the smallest basic index (Bland).
      if (leave == t.rows() || r < ratio - eps) {
        ratio = r;
        leave = i;
      } else if (r <= ratio + eps && t.basis()[i] < t.basis()[leave]) {
        ratio = std::min(ratio, r);
        leave = i;
      }
    }
    if (leave == t.rows()) return LpStatus::kUnbounded;
    stall = ratio <= eps ? stall + 1 : 0;
    t.pivot(leave, enter, cost);
    if (++pivots > opt.max_pivots) {
      throw NumericalError("simplex exceeded " + std::to_string(opt.max_pivots) +
                           " pivots");
    }
  }
}

}  // namespace detail

// Solves the LP. Variables are shifted to their finite bound (x = l + y or
// x = u - y), free variables are split, finite two-sided bounds become rows.
// Phase 1 minimizes the artificial sum; phase 2 optimizes the objective.
inline LpResult solve_lp(const LinearProgram& lp, const LpOptions& opt = {}) {
  lp.validate();
  const double eps = opt.tolerance;
  const std::size_t nv = lp.var_count();

  // Column map: x_j = offset_j + sum sign * y_col.
  struct Map {
    double offset = 0.0;
    std::size_t pos = SIZE_MAX;  // column with +1
    std::size_t neg = SIZE_MAX;  // column with -1
    bool fixed = false;
  };
  std::vector<Map> map(nv);
  std::size_t ncols = 0;
  struct BoundRow {
    std::size_t col;
    double cap;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = lp.lower[j], hi = lp.upper[j];
    Map& mp = map[j];
    if (lo == hi) {
      mp.fixed = true;
      mp.offset = lo;
    } else if (std::isfinite(lo)) {
      mp.offset = lo;
      mp.pos = ncols++;
      if (std::isfinite(hi)) bound_rows.push_back({mp.pos, hi - lo});
    } else if (std::isfinite(hi)) {
      mp.offset = hi;
      mp.neg = ncols++;
    } else {
      mp.pos = ncols++;
      mp.neg = ncols++;
    }
  }

  // Rows in terms of y, normalized to rhs >= 0.
  struct DenseRow {
    std::vector<std::pair<std::size_t, double>> terms;
    RowSense sense;
    double rhs;
  };
  std::vector<DenseRow> rows;
  rows.reserve(lp.rows.size() + bound_rows.size());
  for (const auto& r : lp.rows) {
    DenseRow d{{}, r.sense, r.rhs};
    for (const auto& term : r.terms) {
      const Map& mp = map[term.var];
      d.rhs -= term.coeff * mp.offset;
      if (mp.pos != SIZE_MAX) d.terms.emplace_back(mp.pos, term.coeff);
      if (mp.neg != SIZE_MAX) d.terms.emplace_back(mp.neg, -term.coeff);
    }
    rows.push_back(std::move(d));
  }
  for (const auto& b : bound_rows) {
    rows.push_back({{{b.col, 1.0}}, RowSense::kLessEqual, b.cap});
  }
  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      r.rhs = -r.rhs;
      for (auto& term : r.terms) term.second = -term.second;
      if (r.sense == RowSense::kLessEqual) {
        r.sense = RowSense::kGreaterEqual;
      } else if (r.sense == RowSense::kGreaterEqual) {
        r.sense = RowSense::kLessEqual;
      }
    }
  }

  const std::size_t m = rows.size();
  std::size_t slack_count = 0, art_count = 0;
  for (const auto& r : rows) {
    if (r.sense != RowSense::kEqual) ++slack_count;
    if (r.sense != RowSense::kLessEqual) ++art_count;
  }
  const std::size_t first_slack = ncols;
  const std::size_t first_art = ncols + slack_count;
  const std::size_t total = first_art + art_count;

  detail::Tableau t(m, total);
  std::vector<double> phase1(total + 1, 0.0);
  {
    std::size_t s = first_slack, a = first_art;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& r = rows[i];
      for (const auto& [col, c] : r.terms) t.at(i, col) += c;
      t.rhs(i) = r.rhs;
      if (r.sense == RowSense::kLessEqual) {
        t.at(i, s) = 1.0;
        t.basis()[i] = s++;
      } else {
        if (r.sense == RowSense::kGreaterEqual) t.at(i, s++) = -1.0;
        t.at(i, a) = 1.0;
        t.basis()[i] = a++;
        // Phase-1 objective: maximize -sum(artificials), priced out.
        for (std::size_t j = 0; j <= total; ++j) {
          if (j < first_art || j == total) phase1[j] += t.at(i, j);
        }
      }
    }
  }

  LpResult result;
  std::vector<bool> allowed(total, true);
  if (art_count > 0) {
    detail::run_simplex(t, phase1, allowed, opt, result.pivots);
    const double infeasibility = phase1[total];
    if (infeasibility > 1e-7 * std::max(1.0, static_cast<double>(m))) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    for (std::size_t j = first_art; j < total; ++j) allowed[j] = false;
    // Drive artificials (at level zero) out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (std::abs(t.at(i, j)) > eps) {
          t.pivot(i, j, phase1);
          break;
        }
      }
      // A row left with an artificial is redundant; it stays inert because
      // its artificial can never re-enter and all its entries are ~0.
    }
  }

  // Phase 2 reduced costs: cost_j = c_j - c_B B^-1 A_j, cost[total] = -z.
  std::vector<double> obj_y(total, 0.0);
  double obj_offset = 0.0;
  const double sense = lp.maximize ? 1.0 : -1.0;
  for (std::size_t j = 0; j < nv; ++j) {
    const double c = sense * lp.objective[j];
    obj_offset += c * map[j].offset;
    if (map[j].pos != SIZE_MAX) obj_y[map[j].pos] += c;
    if (map[j].neg != SIZE_MAX) obj_y[map[j].neg] -= c;
  }
  std::vector<double> cost(total + 1, 0.0);
  for (std::size_t j = 0; j < total; ++j) cost[j] = obj_y[j];
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = obj_y[t.basis()[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= total; ++j) cost[j] -= cb * t.at(i, j);
  }
  for (std::size_t j = first_art; j < total; ++j) cost[j] = 0.0;

  if (detail::run_simplex(t, cost, allowed, opt, result.pivots) ==
      LpStatus::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  std::vector<double> y(total, 0.0);
  for (std::size_t i = 0; i < m; ++i) y[t.basis()[i]] = std::max(0.0, t.rhs(i));
  result.x.assign(nv, 0.0);
  double value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) {
    double x = map[j].offset;
    if (map[j].pos != SIZE_MAX) x += y[map[j].pos];
    if (map[j].neg != SIZE_MAX) x -= y[map[j].neg];
    result.x[j] = x;
    value += lp.objective[j] * x;
  }
  result.objective = value;
  result.status = LpStatus::kOptimal;
  return result;
}

}  // namespace seekev

#endif  // SEEKEV_LP_HPP
