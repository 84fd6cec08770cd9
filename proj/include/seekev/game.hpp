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

#ifndef SEEKEV_GAME_HPP
#define SEEKEV_GAME_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <system_error>
#include <string_view>
#include <thread>
#include <vector>

#include "seekev/centrality.hpp"
#include "seekev/error.hpp"
#include "seekev/format.hpp"
#include "seekev/graph.hpp"
#include "seekev/hiding.hpp"
#include "seekev/influence.hpp"
#include "seekev/rng.hpp"

namespace seekev {

// Parameters of the evader's rank utility: a logistic curve in the rank r
// with inflection point d and steepness k, shifted and scaled so that
// rank 1 is worth 0 and rank d is worth 1/2.
struct UtilityParams {
  double d = 15.0;
  double k = 0.2;

  static UtilityParams with_inflection(double d) { return {d, 3.0 / d}; }

  double sigmoid(double r) const { return 1.0 / (1.0 + std::exp(-k * (r - d))); }
  double beta() const { return sigmoid(1.0); }
  double alpha() const { return 1.0 - 2.0 * beta(); }

  void validate() const {
    if (!(d >= 1.0) || !(k > 0.0) || !std::isfinite(d) || !std::isfinite(k)) {
      throw PreconditionError("utility parameters need d >= 1 and k > 0");
    }
    if (alpha() == 0.0) {
      throw PreconditionError("utility parameters give alpha = 0 (d = 1)");
    }
  }
};

inline double rank_utility(double rank, const UtilityParams& p) {
  const double beta = p.beta();
  return (p.sigmoid(rank) - beta) / (1.0 - 2.0 * beta);
}

// delta is the relative change of the evader's influence. Gains count
// linearly, losses quadratically.
inline double influence_utility(double delta) {
  return delta > 0.0 ? delta : -delta * delta;
}

struct EvaderType {
  double phi = 0.5;
  double probability = 1.0;
};

inline std::vector<EvaderType> uniform_types(std::span<const double> phis) {
  std::vector<EvaderType> out;
  for (double phi : phis) {
    out.push_back({phi, 1.0 / static_cast<double>(phis.size())});
  }
  return out;
}

inline std::vector<EvaderType> default_types() {
  static constexpr std::array<double, 4> kPhis = {0.2, 0.4, 0.6, 0.8};
  return uniform_types(kPhis);
}

inline void validate_types(std::span<const EvaderType> types) {
  if (types.empty()) throw PreconditionError("at least one evader type needed");
  double total = 0.0;
  for (const EvaderType& t : types) {
    if (!(t.phi > 0.0 && t.phi < 1.0)) {
      throw PreconditionError("type weight phi must lie in (0, 1)");
    }
    if (!(t.probability >= 0.0)) {
      throw PreconditionError("type probabilities must be non-negative");
    }
    total += t.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw PreconditionError("type probabilities must sum to 1");
  }
}

enum class GameMode { kZeroSum, kNonZeroSum };

inline std::string_view mode_name(GameMode m) {
  return m == GameMode::kZeroSum ? "zero_sum" : "non_zero_sum";
}

// Payoffs U_e and U_s indexed by (type, seeker measure, evader strategy),
// plus the per-strategy quantities they were computed from.
class PayoffTensor {
 public:
  PayoffTensor() = default;
  PayoffTensor(std::vector<EvaderType> types, std::size_t strategies,
               GameMode mode)
      : types_(std::move(types)),
        strategies_(strategies),
        mode_(mode),
        evader_(types_.size() * kMeasureCount * strategies),
        seeker_(evader_.size()),
        ranks_(strategies),
        influence_(strategies, 1.0),
        delta_(strategies, 0.0),
        labels_(strategies) {}

  std::size_t type_count() const { return types_.size(); }
  std::size_t seeker_count() const { return kMeasureCount; }
  std::size_t strategy_count() const { return strategies_; }
  GameMode mode() const { return mode_; }
  const std::vector<EvaderType>& types() const { return types_; }

  double evader(std::size_t type, std::size_t seeker, std::size_t strategy) const {
    return evader_[index(type, seeker, strategy)];
  }
  double seeker(std::size_t type, std::size_t seeker, std::size_t strategy) const {
    return seeker_[index(type, seeker, strategy)];
  }
  double& evader(std::size_t type, std::size_t seeker, std::size_t strategy) {
    return evader_[index(type, seeker, strategy)];
  }
  double& seeker(std::size_t type, std::size_t seeker, std::size_t strategy) {
    return seeker_[index(type, seeker, strategy)];
  }

  // Evader rank under each measure after playing the strategy.
  std::array<std::size_t, kMeasureCount>& ranks(std::size_t s) { return ranks_[s]; }
  const std::array<std::size_t, kMeasureCount>& ranks(std::size_t s) const {
    return ranks_[s];
  }
  double& influence(std::size_t s) { return influence_[s]; }
  double influence(std::size_t s) const { return influence_[s]; }
  double& influence_delta(std::size_t s) { return delta_[s]; }
  double influence_delta(std::size_t s) const { return delta_[s]; }
  std::string& label(std::size_t s) { return labels_[s]; }
  const std::string& label(std::size_t s) const { return labels_[s]; }

  double initial_influence = 1.0;
  std::size_t influence_samples_capped = 0;  // estimates that hit the cap

  // Same tensor restricted to the listed strategies, in the given order.
  PayoffTensor select(std::span<const std::size_t> keep) const {
    PayoffTensor out(types_, keep.size(), mode_);
    out.initial_influence = initial_influence;
    out.influence_samples_capped = influence_samples_capped;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      const std::size_t src = keep[j];
      for (std::size_t f = 0; f < type_count(); ++f) {
        for (std::size_t s = 0; s < kMeasureCount; ++s) {
          out.evader(f, s, j) = evader(f, s, src);
          out.seeker(f, s, j) = seeker(f, s, src);
        }
      }
      out.ranks_[j] = ranks_[src];
      out.influence_[j] = influence_[src];
      out.delta_[j] = delta_[src];
      out.labels_[j] = labels_[src];
    }
    return out;
  }

 private:
  std::size_t index(std::size_t type, std::size_t seeker, std::size_t strategy) const {
    return (type * kMeasureCount + seeker) * strategies_ + strategy;
  }

  std::vector<EvaderType> types_;
  std::size_t strategies_ = 0;
  GameMode mode_ = GameMode::kNonZeroSum;
  std::vector<double> evader_;
  std::vector<double> seeker_;
  std::vector<std::array<std::size_t, kMeasureCount>> ranks_;
  std::vector<double> influence_;
  std::vector<double> delta_;
  std::vector<std::string> labels_;
};

// Fills U_e and U_s entries of every type and seeker measure from the
// strategy's ranks and influence delta.
inline void fill_payoffs(PayoffTensor& t, std::size_t strategy,
                         const UtilityParams& params) {
  const double ui = influence_utility(t.influence_delta(strategy));
  for (std::size_t s = 0; s < kMeasureCount; ++s) {
    const double ur =
        rank_utility(static_cast<double>(t.ranks(strategy)[s]), params);
    for (std::size_t f = 0; f < t.type_count(); ++f) {
      const double phi = t.types()[f].phi;
      const double ue = phi * ur + (1.0 - phi) * ui;
      t.evader(f, s, strategy) = ue;
      t.seeker(f, s, strategy) = t.mode() == GameMode::kZeroSum ? -ue : -ur;
    }
  }
}

struct TensorOptions {
  StoppingRule stopping;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Evaluates every strategy on its rewired graph. All influence estimates use
// the same random streams (common random numbers), so the no-op has delta
// exactly 0 and payoff differences are not blurred by independent noise.
// Results do not depend on the thread count.
inline PayoffTensor build_payoff_tensor(const Graph& g, NodeId evader,
                                        std::span<const EvaderStrategy> strategies,
                                        std::vector<EvaderType> types,
                                        const UtilityParams& params,
                                        const InfluenceModel& model, GameMode mode,
                                        std::uint64_t rng_seed,
                                        const TensorOptions& options = {}) {
  params.validate();
  validate_types(types);
  if (evader >= g.node_count()) throw PreconditionError("evader out of range");
  PayoffTensor tensor(std::move(types), strategies.size(), mode);
  const std::uint64_t influence_seed = derive_seed(rng_seed, 0);
  const InfluenceEstimate base =
      estimate_influence(g, evader, model, influence_seed, options.stopping);
  tensor.initial_influence = base.mean;
  std::atomic<std::size_t> capped{base.hit_sample_cap ? 1u : 0u};

  auto evaluate = [&](std::size_t j) {
    try {
      const Graph h = apply_strategy(g, strategies[j]);
      auto& ranks = tensor.ranks(j);
      for (CentralityMeasure m : kAllMeasures) {
        const CentralityVector cv = compute_centrality(h, m);
        ranks[static_cast<std::size_t>(m)] = node_rank(cv.values, evader);
      }
      const InfluenceEstimate est =
          estimate_influence(h, evader, model, influence_seed, options.stopping);
      if (est.hit_sample_cap) ++capped;
      tensor.influence(j) = est.mean;
      tensor.influence_delta(j) = (est.mean - base.mean) / base.mean;
      tensor.label(j) = strategies[j].label;
      fill_payoffs(tensor, j, params);
    } catch (const Error& e) {
      throw Error(e.kind(), "strategy " + std::to_string(j) + " (" +
                                strategies[j].label + "): " + e.what());
    }
  };

  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, strategies.size())));
  if (threads <= 1) {
    for (std::size_t j = 0; j < strategies.size(); ++j) evaluate(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < strategies.size(); j = next++) {
          try {
            evaluate(j);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = strategies.size();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  tensor.influence_samples_capped = capped;
  return tensor;
}

namespace detail {

// Strategies not strictly dominated, considering only the listed types.
// A dominator has a strictly larger payoff sum, so scanning in decreasing
// sum order and comparing against the survivors so far is enough: any
// dominated dominator is itself dominated by an earlier survivor.
inline std::vector<std::size_t> undominated(const PayoffTensor& t,
                                            std::span<const std::size_t> types) {
  const std::size_t n = t.strategy_count();
  std::vector<double> total(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t f : types) {
      for (std::size_t s = 0; s < kMeasureCount; ++s) total[j] += t.evader(f, s, j);
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return total[a] > total[b]; });
  auto dominates = [&](std::size_t a, std::size_t b) {
    for (std::size_t f : types) {
      for (std::size_t s = 0; s < kMeasureCount; ++s) {
        if (!(t.evader(f, s, a) > t.evader(f, s, b))) return false;
      }
    }
    return true;
  };
  std::vector<std::size_t> kept;
  for (std::size_t j : order) {
    bool dominated = false;
    for (std::size_t k : kept) {
      if (dominates(k, j)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(j);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace detail

struct PrunedTensor {
  PayoffTensor tensor;
  std::vector<std::size_t> kept;  // original indices of surviving strategies
};

// Removes evader strategies that are strictly dominated for every type and
// every pure seeker strategy. Dominance over pure seeker strategies implies
// dominance over mixtures, and removing evader strategies cannot create new
// dominance among evader strategies, so one pass reaches the fixpoint.
inline PrunedTensor prune_dominated(const PayoffTensor& t) {
  std::vector<std::size_t> all_types(t.type_count());
  std::iota(all_types.begin(), all_types.end(), 0);
  PrunedTensor out;
  out.kept = detail::undominated(t, all_types);
  out.tensor = t.select(out.kept);
  return out;
}

// Number of strategies left undominated when each type is judged alone.
inline std::vector<std::size_t> undominated_per_type(const PayoffTensor& t) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < t.type_count(); ++f) {
    const std::array<std::size_t, 1> one = {f};
    out.push_back(detail::undominated(t, one).size());
  }
  return out;
}

// Node with the smallest sum of its four centrality ranks; ties broken
// uniformly at random from rng_seed.
inline NodeId select_evader(const Graph& g, std::uint64_t rng_seed) {
  const std::size_t n = g.node_count();
  if (n < 2) throw PreconditionError("select_evader needs at least two nodes");
  std::vector<std::size_t> rank_sum(n, 0);
  for (CentralityMeasure m : kAllMeasures) {
    const auto ranks = rank_nodes(compute_centrality(g, m));
    for (std::size_t v = 0; v < n; ++v) rank_sum[v] += ranks[v];
  }
  const std::size_t best = *std::min_element(rank_sum.begin(), rank_sum.end());
  std::vector<NodeId> tied;
  for (NodeId v = 0; v < n; ++v) {
    if (rank_sum[v] == best) tied.push_back(v);
  }
  Rng rng(rng_seed);
  return tied[rng.below(tied.size())];
}

inline constexpr std::string_view kTensorCsvHeader =
    "type,seeker,strategy_index,evader_utility,seeker_utility,rank_degree,"
    "rank_closeness,rank_betweenness,rank_eigenvector,influence_delta";

// One row per (type index, seeker measure, strategy index).
inline void write_tensor_csv(std::ostream& out, const PayoffTensor& t) {
  out << kTensorCsvHeader << '\n';
  for (std::size_t f = 0; f < t.type_count(); ++f) {
    for (std::size_t s = 0; s < kMeasureCount; ++s) {
      for (std::size_t j = 0; j < t.strategy_count(); ++j) {
        const auto& r = t.ranks(j);
        out << f << ',' << measure_name(kAllMeasures[s]) << ',' << j << ','
            << format_double(t.evader(f, s, j)) << ','
            << format_double(t.seeker(f, s, j)) << ',' << r[0] << ',' << r[1]
            << ',' << r[2] << ',' << r[3] << ','
            << format_double(t.influence_delta(j)) << '\n';
      }
    }
  }
}

// Reads a tensor written by write_tensor_csv. The file does not record the
// type weights or the game mode, so the caller supplies them; the number of
// types must match the file. Strategy labels are not stored and come back
// empty.
inline PayoffTensor read_tensor_csv(std::istream& in, std::vector<EvaderType> types,
                                    GameMode mode) {
  validate_types(types);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kTensorCsvHeader) {
    throw ParseError("expected tensor CSV header", line_no);
  }
  struct Row {
    std::size_t type, seeker, strategy;
    double evader, seeker_value, delta;
    std::array<std::size_t, kMeasureCount> ranks;
  };
  auto field_number = [&](std::string_view f, auto& out) {
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw ParseError("bad number '" + std::string(f) + "'", line_no);
    }
  };
  std::vector<Row> rows;
  std::size_t strategies = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      f.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    f.push_back(rest);
    if (f.size() != 10) throw ParseError("expected 10 fields", line_no);
    Row r{};
    field_number(f[0], r.type);
    try {
      r.seeker = static_cast<std::size_t>(parse_measure(f[1]));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), line_no);
    }
    field_number(f[2], r.strategy);
    field_number(f[3], r.evader);
    field_number(f[4], r.seeker_value);
    for (std::size_t s = 0; s < kMeasureCount; ++s) field_number(f[5 + s], r.ranks[s]);
    field_number(f[9], r.delta);
    if (r.type >= types.size()) {
      throw ParseError("type index " + std::to_string(r.type) + " out of range", line_no);
    }
    strategies = std::max(strategies, r.strategy + 1);
    rows.push_back(r);
  }
  if (rows.size() != types.size() * kMeasureCount * strategies) {
    throw ParseError("tensor CSV is incomplete or has duplicate rows", line_no);
  }
  PayoffTensor t(std::move(types), strategies, mode);
  std::vector<bool> seen(rows.size(), false);
  for (const Row& r : rows) {
    const std::size_t key = (r.type * kMeasureCount + r.seeker) * strategies + r.strategy;
    if (seen[key]) throw ParseError("duplicate tensor CSV row", line_no);
    seen[key] = true;
    t.evader(r.type, r.seeker, r.strategy) = r.evader;
    t.seeker(r.type, r.seeker, r.strategy) = r.seeker_value;
    t.ranks(r.strategy) = r.ranks;
    t.influence_delta(r.strategy) = r.delta;
  }
  return t;
}

}  // namespace seekev

#endif  // SEEKEV_GAME_HPP
