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

#ifndef SEEKEV_HIDING_HPP
#define SEEKEV_HIDING_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seekev/centrality.hpp"
#include "seekev/error.hpp"
#include "seekev/graph.hpp"
#include "seekev/rng.hpp"

namespace seekev {

// A Local Hiding problem: rewire at most `budget` edges around `evader`,
// adding only from `addable` and removing only from `removable`, so that at
// least `safety_margin` nodes end up with strictly greater centrality.
struct LocalHidingInstance {
  Graph graph;
  NodeId evader = 0;
  std::size_t budget = 0;
  CentralityMeasure measure = CentralityMeasure::kDegree;
  std::vector<Edge> addable;    // non-edges between two neighbours of evader
  std::vector<Edge> removable;  // edges incident to evader
  std::size_t safety_margin = 1;

  void validate() const {
    const std::size_t n = graph.node_count();
    if (evader >= n) throw PreconditionError("evader out of range");
    if (safety_margin < 1 || safety_margin >= n) {
      throw PreconditionError("safety margin must satisfy 1 <= d < n");
    }
    for (const Edge& e : addable) {
      if (e.u == evader || e.v == evader) {
        throw PreconditionError("addable edge " + to_string(e) +
                                " is incident to the evader");
      }
      if (!graph.has_edge(evader, e.u) || !graph.has_edge(evader, e.v)) {
        throw PreconditionError("addable edge " + to_string(e) +
                                " leaves the evader's neighbourhood");
      }
      if (graph.has_edge(e)) {
        throw PreconditionError("addable edge " + to_string(e) +
                                " already exists");
      }
    }
    for (const Edge& e : removable) {
      if ((e.u != evader && e.v != evader) || !graph.has_edge(e)) {
        throw PreconditionError("removable edge " + to_string(e) +
                                " is not an evader edge");
      }
    }
  }
};

// All non-edges among the evader's neighbours, lexicographic.
inline std::vector<Edge> default_addable(const Graph& g, NodeId evader) {
  std::vector<Edge> out;
  const auto nb = g.neighbors(evader);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (!g.has_edge(nb[i], nb[j])) out.emplace_back(nb[i], nb[j]);
    }
  }
  return out;
}

// All edges incident to the evader, lexicographic.
inline std::vector<Edge> default_removable(const Graph& g, NodeId evader) {
  std::vector<Edge> out;
  for (NodeId w : g.neighbors(evader)) out.emplace_back(evader, w);
  std::sort(out.begin(), out.end());
  return out;
}

inline LocalHidingInstance make_instance(Graph g, NodeId evader,
                                         std::size_t budget,
                                         CentralityMeasure measure,
                                         std::size_t safety_margin) {
  LocalHidingInstance inst;
  inst.addable = default_addable(g, evader);
  inst.removable = default_removable(g, evader);
  inst.graph = std::move(g);
  inst.evader = evader;
  inst.budget = budget;
  inst.measure = measure;
  inst.safety_margin = safety_margin;
  inst.validate();
  return inst;
}

// One pure evader strategy: the edges it adds and removes.
struct EvaderStrategy {
  std::vector<Edge> additions;
  std::vector<Edge> removals;
  std::string label;

  std::size_t cost() const { return additions.size() + removals.size(); }
  bool is_noop() const { return additions.empty() && removals.empty(); }

  friend bool operator==(const EvaderStrategy&, const EvaderStrategy&) = default;
};

inline constexpr std::string_view kNoopLabel = "noop";

// (V, (E + additions) - removals).
inline Graph apply_strategy(Graph g, const EvaderStrategy& s) {
  for (const Edge& e : s.additions) g.insert_edge(e);
  for (const Edge& e : s.removals) g.erase_edge(e);
  return g;
}

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r * (n-k+i) is divisible by i
  }
  return r;
}

// Calls fn(indices) for each k-subset of {0..n-1}, lexicographic; stops when
// fn returns false. Returns false iff stopped.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Number of strategies with 1 <= cost <= budget (the no-op excluded).
inline std::uint64_t count_strategies(std::size_t addable, std::size_t removable,
                                      std::size_t budget) {
  std::uint64_t total = 0;
  for (std::size_t c = 1; c <= budget; ++c) {
    for (std::size_t a = 0; a <= c; ++a) {
      total += detail::binomial(addable, a) * detail::binomial(removable, c - a);
    }
  }
  return total;
}

// Visits strategies in the canonical order: the no-op first, then by total
// cost, then by number of additions (ascending), then lexicographically by
// addition indices, then by removal indices. fn(additions, removals) gets
// index subsets into inst.addable / inst.removable and returns false to stop.
template <class Fn>
void for_each_strategy(const LocalHidingInstance& inst, Fn&& fn) {
  const std::span<const std::size_t> none;
  if (!fn(none, none)) return;
  const std::size_t na = inst.addable.size();
  const std::size_t nr = inst.removable.size();
  for (std::size_t c = 1; c <= inst.budget; ++c) {
    for (std::size_t a = 0; a <= c; ++a) {
      const std::size_t r = c - a;
      if (a > na || r > nr) continue;
      const bool go_on = detail::for_each_combination(
          na, a, [&](std::span<const std::size_t> adds) {
            return detail::for_each_combination(
                nr, r, [&](std::span<const std::size_t> dels) {
                  return fn(adds, dels);
                });
          });
      if (!go_on) return;
    }
  }
}

inline EvaderStrategy make_strategy(const LocalHidingInstance& inst,
                                    std::span<const std::size_t> adds,
                                    std::span<const std::size_t> dels) {
  EvaderStrategy s;
  s.additions.reserve(adds.size());
  s.removals.reserve(dels.size());
  for (std::size_t i : adds) s.additions.push_back(inst.addable[i]);
  for (std::size_t i : dels) s.removals.push_back(inst.removable[i]);
  if (s.is_noop()) {
    s.label = kNoopLabel;
  } else {
    s.label = "A" + std::to_string(adds.size()) + "R" + std::to_string(dels.size());
  }
  return s;
}

inline constexpr std::uint64_t kMaxEnumeratedStrategies = 10000000;

// Every strategy of cost 1..budget in canonical order, preceded by the no-op.
// With sample_fraction < 1, exactly round(fraction * total) of the non-trivial
// strategies are kept by selection sampling (uniform over subsets of that
// size, deterministic in rng_seed); the no-op is always kept.
inline std::vector<EvaderStrategy> enumerate_strategies(
    const LocalHidingInstance& inst, double sample_fraction = 1.0,
    std::uint64_t rng_seed = 0) {
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    throw PreconditionError("sample fraction must lie in (0, 1]");
  }
  const std::uint64_t total =
      count_strategies(inst.addable.size(), inst.removable.size(), inst.budget);
  std::uint64_t wanted = total;
  if (sample_fraction < 1.0) {
    wanted = static_cast<std::uint64_t>(
        std::llround(sample_fraction * static_cast<double>(total)));
    if (wanted == 0 && total > 0) wanted = 1;
  }
  if (wanted > kMaxEnumeratedStrategies) {
    throw GuardExceeded("strategy space has " + std::to_string(wanted) +
                        " members; limit is " +
                        std::to_string(kMaxEnumeratedStrategies));
  }
  std::vector<EvaderStrategy> out;
  out.reserve(static_cast<std::size_t>(wanted) + 1);
  Rng rng(rng_seed);
  std::uint64_t seen = 0;
  bool first = true;
  for_each_strategy(inst, [&](std::span<const std::size_t> adds,
                              std::span<const std::size_t> dels) {
    if (first) {
      first = false;
      out.push_back(make_strategy(inst, adds, dels));
      return true;
    }
    const std::uint64_t taken = out.size() - 1;
    if (taken == wanted) return false;
    const bool keep =
        wanted == total || rng.below(total - seen) < wanted - taken;
    ++seen;
    if (keep) out.push_back(make_strategy(inst, adds, dels));
    return true;
  });
  return out;
}

// True if the evader is out-ranked by at least d nodes under `measure`.
inline bool is_hidden(const Graph& g, NodeId evader, CentralityMeasure measure,
                      std::size_t d) {
  const CentralityVector cv = compute_centrality(g, measure);
  return node_rank(cv.values, evader) > d;
}

inline constexpr std::uint64_t kBruteForceGuard = 10000000;

// First strategy in canonical order (no-op included) that hides the evader,
// or nullopt when none within the budget does.
inline std::optional<EvaderStrategy> solve_local_hiding_bruteforce(
    const LocalHidingInstance& inst) {
  inst.validate();
  const std::size_t pool = inst.addable.size() + inst.removable.size();
  std::uint64_t work = 0;
  for (std::size_t c = 0; c <= std::min(inst.budget, pool); ++c) {
    work += detail::binomial(pool, c);
    if (work > kBruteForceGuard) {
      throw GuardExceeded("local hiding instance too large for brute force");
    }
  }
  std::optional<EvaderStrategy> found;
  for_each_strategy(inst, [&](std::span<const std::size_t> adds,
                              std::span<const std::size_t> dels) {
    EvaderStrategy s = make_strategy(inst, adds, dels);
    const Graph h = apply_strategy(inst.graph, s);
    if (is_hidden(h, inst.evader, inst.measure, inst.safety_margin)) {
      found = std::move(s);
      return false;
    }
    return true;
  });
  return found;
}

// --- ROAM (Remove One, Add Many) -------------------------------------------

// One ROAM(x) iteration: drop the edge to neighbour v0 (highest degree,
// lowest id on ties) and connect v0 to up to x other neighbours of the evader
// that are not yet adjacent to v0, highest degree first, lowest id on ties.
inline EvaderStrategy roam_step(const Graph& g, NodeId evader,
                                std::size_t additions) {
  if (evader >= g.node_count()) throw PreconditionError("evader out of range");
  const auto nb = g.neighbors(evader);
  if (nb.empty()) {
    throw PreconditionError("ROAM needs an evader with at least one neighbour");
  }
  auto by_degree = [&](NodeId a, NodeId b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  };
  const NodeId v0 = *std::min_element(nb.begin(), nb.end(), by_degree);
  std::vector<NodeId> targets;
  for (NodeId w : nb) {
    if (w != v0 && !g.has_edge(v0, w)) targets.push_back(w);
  }
  std::sort(targets.begin(), targets.end(), by_degree);
  if (targets.size() > additions) targets.resize(additions);

  EvaderStrategy s;
  s.removals.emplace_back(evader, v0);
  for (NodeId w : targets) s.additions.emplace_back(v0, w);
  s.label = "ROAM(" + std::to_string(additions) + ")";
  return s;
}

// `iterations` rounds of ROAM(per_iteration_budget - 1), then, when
// remainder > 0, one ROAM(remainder - 1).
struct RoamSchedule {
  std::size_t per_iteration_budget = 2;
  std::size_t iterations = 0;
  std::size_t remainder = 0;

  std::size_t total_cost() const {
    return iterations * per_iteration_budget + remainder;
  }

  // Additions count of each step, in execution order.
  std::vector<std::size_t> steps() const {
    std::vector<std::size_t> out(iterations, per_iteration_budget - 1);
    if (remainder > 0) out.push_back(remainder - 1);
    return out;
  }

  std::string label() const {
    std::string s;
    if (iterations > 0) {
      s = "ROAM(" + std::to_string(per_iteration_budget - 1) + ")x" +
          std::to_string(iterations);
    }
    if (remainder > 0) {
      if (!s.empty()) s += "+";
      s += "ROAM(" + std::to_string(remainder - 1) + ")";
    }
    return s;
  }
};

// One schedule per single-iteration budget c in 2..floor(b/2), so every
// schedule spends exactly b over at least two iterations.
inline std::vector<RoamSchedule> roam_schedules(std::size_t budget) {
  if (budget < 4) {
    throw PreconditionError("ROAM schedules need a budget of at least 4");
  }
  std::vector<RoamSchedule> out;
  for (std::size_t c = 2; c <= budget / 2; ++c) {
    out.push_back({c, budget / c, budget % c});
  }
  return out;
}

struct ScheduleOutcome {
  Graph graph;
  EvaderStrategy net;   // accumulated edits relative to the input graph
  std::size_t spent = 0;
  std::size_t steps_completed = 0;
  bool stopped_early = false;  // evader became isolated before the end
};

// Runs the schedule step by step; each step sees the previous step's graph.
inline ScheduleOutcome execute_schedule(const Graph& g, NodeId evader,
                                        const RoamSchedule& schedule) {
  ScheduleOutcome out;
  out.graph = g;
  out.net.label = schedule.label();
  for (std::size_t x : schedule.steps()) {
    if (out.graph.degree(evader) == 0) {
      out.stopped_early = true;
      break;
    }
    const EvaderStrategy step = roam_step(out.graph, evader, x);
    out.graph = apply_strategy(std::move(out.graph), step);
    out.spent += step.cost();
    ++out.steps_completed;
    out.net.additions.insert(out.net.additions.end(), step.additions.begin(),
                             step.additions.end());
    out.net.removals.insert(out.net.removals.end(), step.removals.begin(),
                            step.removals.end());
  }
  std::sort(out.net.additions.begin(), out.net.additions.end());
  std::sort(out.net.removals.begin(), out.net.removals.end());
  return out;
}

// Evader strategies for the ROAM game: one per schedule of roam_schedules(b),
// expressed as net edits of the original graph.
inline std::vector<EvaderStrategy> roam_strategies(const Graph& g, NodeId evader,
                                                   std::size_t budget) {
  std::vector<EvaderStrategy> out;
  for (const RoamSchedule& s : roam_schedules(budget)) {
    out.push_back(execute_schedule(g, evader, s).net);
  }
  return out;
}

}  // namespace seekev

#endif  // SEEKEV_HIDING_HPP
