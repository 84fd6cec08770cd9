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

#ifndef SEEKEV_EXPERIMENT_HPP
#define SEEKEV_EXPERIMENT_HPP

// End-to-end experiment pipeline: network -> evader -> strategies -> payoff
// tensor -> dominance pruning -> equilibrium, repeated over networks and
// budgets, with CSV/JSON outputs.
//
// Configs are flat JSON objects; see README.md for the key list.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "seekev/centrality.hpp"
#include "seekev/edge_list.hpp"
#include "seekev/error.hpp"
#include "seekev/format.hpp"
#include "seekev/game.hpp"
#include "seekev/generators.hpp"
#include "seekev/hiding.hpp"
#include "seekev/influence.hpp"
#include "seekev/rng.hpp"
#include "seekev/solver.hpp"
#include "seekev/version.hpp"

namespace seekev {

enum class StrategySource { kFullEnumeration, kRoamSchedules };

inline std::string_view source_name(StrategySource s) {
  return s == StrategySource::kFullEnumeration ? "full_enum" : "roam";
}

inline constexpr std::array<std::size_t, 6> kReplicationBudgets = {5, 10, 15, 20, 25, 35};

struct ExperimentConfig {
  std::string network = "ba";  // ba | ws | er | file
  std::size_t nodes = 30;
  std::size_t links_per_node = 3;
  double mean_degree = 10.0;
  double rewire_probability = kDefaultRewireProbability;
  std::string edge_list;
  GameMode mode = GameMode::kNonZeroSum;
  std::vector<std::size_t> budgets = {10};
  double budget_cap = 0.25;  // ROAM budgets above cap * |E| are skipped
  double d = 15.0;
  double k = 0.0;  // 0 selects 3 / d
  std::vector<double> phis = {0.2, 0.4, 0.6, 0.8};
  std::vector<double> phi_probabilities;  // empty: uniform
  InfluenceModel influence;
  StrategySource source = StrategySource::kRoamSchedules;
  double sample_fraction = 1.0;
  std::uint64_t seed = 1;
  std::size_t networks = 1;
  StoppingRule stopping;
  unsigned threads = 0;
  bool write_tensors = true;
  std::string output = "out";

  UtilityParams utility() const { return {d, k > 0.0 ? k : 3.0 / d}; }

  std::vector<EvaderType> types() const {
    if (phi_probabilities.empty()) return uniform_types(phis);
    std::vector<EvaderType> out;
    for (std::size_t i = 0; i < phis.size(); ++i) {
      out.push_back({phis[i], phi_probabilities[i]});
    }
    return out;
  }

  void validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (network != "ba" && network != "ws" && network != "er" && network != "file") {
      fail("network must be one of ba, ws, er, file");
    }
    if (network == "file" && edge_list.empty()) fail("network 'file' needs edge_list");
    if (network != "file" && nodes < 2) fail("nodes must be at least 2");
    if (budgets.empty()) fail("at least one budget is required");
    if (!(budget_cap > 0.0 && budget_cap <= 1.0)) fail("budget_cap must lie in (0, 1]");
    if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
      fail("sample_fraction must lie in (0, 1]");
    }
    if (networks == 0) fail("networks must be positive");
    if (k < 0.0) fail("k must be positive (0 selects 3 / d)");
    if (!phi_probabilities.empty() && phi_probabilities.size() != phis.size()) {
      fail("phi_probabilities must match phis in length");
    }
    if (stopping.lag == 0 || stopping.max_samples == 0) {
      fail("mc_lag and mc_max_samples must be positive");
    }
    try {
      utility().validate();
      validate_types(types());
      if (influence.kind == InfluenceKind::kIndependentCascade) {
        InfluenceModel::independent_cascade(influence.ic_probability);
      }
    } catch (const PreconditionError& e) {
      fail(e.what());
    }
  }
};

// Canonical JSON form. Leaves out `output` and `threads`, which do not
// influence results, so the hash identifies the computation.
inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["network"] = c.network;
  j["nodes"] = c.nodes;
  j["links_per_node"] = c.links_per_node;
  j["mean_degree"] = c.mean_degree;
  j["rewire_probability"] = c.rewire_probability;
  j["edge_list"] = c.edge_list;
  j["mode"] = mode_name(c.mode);
  j["budgets"] = c.budgets;
  j["budget_cap"] = c.budget_cap;
  j["d"] = c.d;
  j["k"] = c.utility().k;
  j["phis"] = c.phis;
  j["phi_probabilities"] = c.phi_probabilities;
  j["influence_model"] = model_name(c.influence);
  j["ic_probability"] = c.influence.ic_probability;
  j["strategy_source"] = source_name(c.source);
  j["sample_fraction"] = c.sample_fraction;
  j["seed"] = c.seed;
  j["networks"] = c.networks;
  j["mc_lag"] = c.stopping.lag;
  j["mc_tolerance"] = c.stopping.tolerance;
  j["mc_min_samples"] = c.stopping.min_samples;
  j["mc_max_samples"] = c.stopping.max_samples;
  j["write_tensors"] = c.write_tensors;
  return j;
}

// 64-bit FNV-1a of the canonical config dump, as 16 hex digits.
inline std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

namespace detail {

template <class T>
T config_value(const nlohmann::json& v, const std::string& key) {
  try {
    if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
      if (!v.is_number_unsigned()) throw ConfigError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace detail

// Applies the keys of a flat JSON object on top of `base`. Unknown keys are
// errors so typos do not pass silently.
inline ExperimentConfig apply_config(ExperimentConfig c, const nlohmann::json& j) {
  using detail::config_value;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) throw ConfigError("config key '" + key + "' must not be nested");
    if (key == "network") {
      c.network = config_value<std::string>(v, key);
    } else if (key == "nodes") {
      c.nodes = config_value<std::size_t>(v, key);
    } else if (key == "links_per_node") {
      c.links_per_node = config_value<std::size_t>(v, key);
    } else if (key == "mean_degree") {
      c.mean_degree = config_value<double>(v, key);
    } else if (key == "rewire_probability") {
      c.rewire_probability = config_value<double>(v, key);
    } else if (key == "edge_list") {
      c.edge_list = config_value<std::string>(v, key);
    } else if (key == "mode") {
      const auto m = config_value<std::string>(v, key);
      if (m == "zero_sum") {
        c.mode = GameMode::kZeroSum;
      } else if (m == "non_zero_sum") {
        c.mode = GameMode::kNonZeroSum;
      } else {
        throw ConfigError("mode must be zero_sum or non_zero_sum");
      }
    } else if (key == "budget") {
      c.budgets = {config_value<std::size_t>(v, key)};
    } else if (key == "budgets") {
      c.budgets = config_value<std::vector<std::size_t>>(v, key);
    } else if (key == "budget_cap") {
      c.budget_cap = config_value<double>(v, key);
    } else if (key == "d") {
      c.d = config_value<double>(v, key);
    } else if (key == "k") {
      c.k = config_value<double>(v, key);
    } else if (key == "phis") {
      c.phis = config_value<std::vector<double>>(v, key);
    } else if (key == "phi_probabilities") {
      c.phi_probabilities = config_value<std::vector<double>>(v, key);
    } else if (key == "influence_model") {
      const auto m = config_value<std::string>(v, key);
      if (m == "ic") {
        c.influence.kind = InfluenceKind::kIndependentCascade;
      } else if (m == "lt") {
        c.influence.kind = InfluenceKind::kLinearThreshold;
      } else {
        throw ConfigError("influence_model must be ic or lt");
      }
    } else if (key == "ic_probability") {
      c.influence.ic_probability = config_value<double>(v, key);
    } else if (key == "strategy_source") {
      const auto s = config_value<std::string>(v, key);
      if (s == "full_enum") {
        c.source = StrategySource::kFullEnumeration;
      } else if (s == "roam") {
        c.source = StrategySource::kRoamSchedules;
      } else {
        throw ConfigError("strategy_source must be full_enum or roam");
      }
    } else if (key == "sample_fraction") {
      c.sample_fraction = config_value<double>(v, key);
    } else if (key == "seed") {
      c.seed = config_value<std::uint64_t>(v, key);
    } else if (key == "networks") {
      c.networks = config_value<std::size_t>(v, key);
    } else if (key == "mc_lag") {
      c.stopping.lag = config_value<std::size_t>(v, key);
    } else if (key == "mc_tolerance") {
      c.stopping.tolerance = config_value<double>(v, key);
    } else if (key == "mc_min_samples") {
      c.stopping.min_samples = config_value<std::size_t>(v, key);
    } else if (key == "mc_max_samples") {
      c.stopping.max_samples = config_value<std::size_t>(v, key);
    } else if (key == "threads") {
      c.threads = config_value<unsigned>(v, key);
    } else if (key == "write_tensors") {
      c.write_tensors = config_value<bool>(v, key);
    } else if (key == "output") {
      c.output = config_value<std::string>(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return apply_config(std::move(base), j);
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, std::move(base));
}

inline std::vector<std::string> preset_names() {
  return {"scalefree30", "smallworld30", "er30", "roam-budgets"};
}

// Named replication setups: 100 networks of 30 nodes, ROAM strategies,
// all replication budgets, four uniform types, independent cascade.
inline ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig c;
  c.mode = GameMode::kNonZeroSum;
  c.source = StrategySource::kRoamSchedules;
  c.budgets.assign(kReplicationBudgets.begin(), kReplicationBudgets.end());
  c.networks = 100;
  c.write_tensors = false;
  if (name == "scalefree30") {
    c.network = "ba";
    c.links_per_node = 3;
  } else if (name == "smallworld30") {
    c.network = "ws";
    c.mean_degree = 10.0;
  } else if (name == "er30") {
    c.network = "er";
    c.mean_degree = 10.0;
  } else if (name == "roam-budgets") {
    c.network = "er";
    c.nodes = 100;
    c.mean_degree = 10.0;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  c.output = "out/" + std::string(name);
  return c;
}

// Everything recorded about one (network, budget) game.
struct CellResult {
  std::size_t network = 0;
  std::uint64_t network_seed = 0;
  std::size_t budget = 0;
  bool skipped = false;
  std::string note;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  NodeId evader = 0;
  std::uint64_t strategy_space = 0;  // excludes the no-op
  std::size_t strategies = 0;        // evaluated, excludes the no-op
  std::size_t undominated = 0;
  std::vector<std::size_t> undominated_per_type;
  std::optional<std::size_t> solved_type;  // zero-sum: the sampled type
  EquilibriumResult equilibrium;
  std::vector<std::size_t> responses;       // original strategy indices
  std::vector<std::string> response_labels;
  double initial_influence = 0.0;
  std::size_t influence_capped = 0;
  std::vector<double> payoff_half;  // phi = 0.5 payoff per strategy
  std::vector<std::pair<std::size_t, std::size_t>> shape;  // (removed, added)
};

namespace detail {

template <class Fn>
auto run_stage(const ExperimentConfig& cfg, std::string_view stage,
               std::size_t network, std::optional<std::size_t> budget, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    std::string where = "network " + std::to_string(network);
    if (budget) where += ", budget " + std::to_string(*budget);
    throw Error(e.kind(), "stage '" + std::string(stage) + "' failed (" + where +
                              "): " + e.what() + "; config: " + to_json(cfg).dump());
  }
}

inline Graph make_network(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.network == "ba") {
    return generate_barabasi_albert(cfg.nodes, cfg.links_per_node, seed);
  }
  if (cfg.network == "ws") {
    return generate_watts_strogatz(cfg.nodes, static_cast<std::size_t>(cfg.mean_degree),
                                   cfg.rewire_probability, seed);
  }
  if (cfg.network == "er") return generate_erdos_renyi(cfg.nodes, cfg.mean_degree, seed);
  return load_edge_list(cfg.edge_list).graph;
}

}  // namespace detail

// Runs every budget of one network. Stream layout under network_seed:
// 1 graph, 2 evader tie-break, 3 strategy sampling, 4 influence, 5 type draw.
inline std::vector<CellResult> run_network(
    const ExperimentConfig& cfg, std::size_t index, std::uint64_t network_seed,
    const std::function<void(const CellResult&, const PayoffTensor&)>& on_tensor = {}) {
  using detail::run_stage;
  const Graph g = run_stage(cfg, "network", index, std::nullopt, [&] {
    return detail::make_network(cfg, derive_seed(network_seed, 1));
  });
  const NodeId evader = run_stage(cfg, "evader", index, std::nullopt, [&] {
    return select_evader(g, derive_seed(network_seed, 2));
  });
  std::vector<CellResult> cells;
  for (std::size_t b : cfg.budgets) {
    CellResult cell;
    cell.network = index;
    cell.network_seed = network_seed;
    cell.budget = b;
    cell.nodes = g.node_count();
    cell.edges = g.edge_count();
    cell.evader = evader;

    std::vector<EvaderStrategy> strategies;
    if (cfg.source == StrategySource::kRoamSchedules) {
      const double cap = cfg.budget_cap * static_cast<double>(g.edge_count());
      if (b < 4) {
        cell.skipped = true;
        cell.note = "ROAM schedules need a budget of at least 4";
      } else if (static_cast<double>(b) > cap) {
        cell.skipped = true;
        cell.note = "budget exceeds " + format_double(cfg.budget_cap) + " of edges";
      } else if (g.degree(evader) == 0) {
        cell.skipped = true;
        cell.note = "evader is isolated";
      } else {
        strategies = run_stage(cfg, "strategies", index, b,
                               [&] { return roam_strategies(g, evader, b); });
        cell.strategy_space = strategies.size();
      }
    } else {
      strategies = run_stage(cfg, "strategies", index, b, [&] {
        const auto inst = make_instance(g, evader, b, CentralityMeasure::kDegree, 1);
        cell.strategy_space =
            count_strategies(inst.addable.size(), inst.removable.size(), b);
        return enumerate_strategies(inst, cfg.sample_fraction,
                                    derive_seed(network_seed, 3));
      });
    }
    if (cell.skipped) {
      cells.push_back(std::move(cell));
      continue;
    }
    cell.strategies = static_cast<std::size_t>(std::count_if(
        strategies.begin(), strategies.end(), [](const auto& s) { return !s.is_noop(); }));

    const PayoffTensor tensor = run_stage(cfg, "tensor", index, b, [&] {
      return build_payoff_tensor(g, evader, strategies, cfg.types(), cfg.utility(),
                                 cfg.influence, cfg.mode, derive_seed(network_seed, 4),
                                 {cfg.stopping, cfg.threads});
    });
    cell.initial_influence = tensor.initial_influence;
    cell.influence_capped = tensor.influence_samples_capped;
    if (on_tensor) on_tensor(cell, tensor);

    const PrunedTensor pruned = prune_dominated(tensor);
    cell.undominated = pruned.kept.size();
    cell.undominated_per_type = undominated_per_type(tensor);

    cell.equilibrium = run_stage(cfg, "solve", index, b, [&] {
      if (cfg.mode == GameMode::kZeroSum) {
        Rng rng(derive_seed(network_seed, 5));
        double u = rng.uniform01();
        std::size_t f = 0;
        const auto& types = tensor.types();
        while (f + 1 < types.size() && u >= types[f].probability) u -= types[f++].probability;
        cell.solved_type = f;
        return solve_zero_sum(pruned.tensor, f);
      }
      return solve_stackelberg(pruned.tensor);
    });
    for (std::size_t r : cell.equilibrium.best_response) {
      cell.responses.push_back(pruned.kept[r]);
      cell.response_labels.push_back(tensor.label(pruned.kept[r]));
    }

    const UtilityParams params = cfg.utility();
    const auto& p = cell.equilibrium.seeker_mixed;
    for (std::size_t j = 0; j < tensor.strategy_count(); ++j) {
      const double ui = influence_utility(tensor.influence_delta(j));
      double v = 0.0;
      for (std::size_t s = 0; s < kMeasureCount; ++s) {
        const double ur = rank_utility(static_cast<double>(tensor.ranks(j)[s]), params);
        v += p[s] * (0.5 * ur + 0.5 * ui);
      }
      cell.payoff_half.push_back(v);
      cell.shape.emplace_back(strategies[j].removals.size(), strategies[j].additions.size());
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

// Runs one network per seed; network i uses seeds[i] and reports index i.
// Networks run in parallel when cfg.threads allows it, each with a
// single-threaded tensor fill; the cells come back in network order either
// way, and the lowest-index failure is the one rethrown. `on_tensor` calls
// are serialized.
inline std::vector<CellResult> batch_run(
    const ExperimentConfig& cfg, std::span<const std::uint64_t> seeds,
    const std::function<void(const CellResult&, const PayoffTensor&)>& on_tensor = {}) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(
      cfg.threads != 0 ? cfg.threads : hw, std::max<std::size_t>(1, seeds.size())));
  std::vector<std::vector<CellResult>> per_network(seeds.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      per_network[i] = run_network(cfg, i, seeds[i], on_tensor);
    }
  } else {
    ExperimentConfig inner = cfg;
    inner.threads = 1;
    std::mutex sink_mutex;
    auto sink = [&](const CellResult& cell, const PayoffTensor& t) {
      std::lock_guard lock(sink_mutex);
      on_tensor(cell, t);
    };
    std::vector<std::exception_ptr> failures(seeds.size());
    std::atomic<std::size_t> next{0};
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
              per_network[i] = on_tensor ? run_network(inner, i, seeds[i], sink)
                                         : run_network(inner, i, seeds[i]);
            } catch (...) {
              failures[i] = std::current_exception();
            }
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  std::vector<CellResult> out;
  for (auto& cells : per_network) std::move(cells.begin(), cells.end(), std::back_inserter(out));
  return out;
}

inline std::vector<std::uint64_t> network_seeds(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < cfg.networks; ++i) seeds.push_back(derive_seed(cfg.seed, i));
  return seeds;
}

// Mean seeker probability per measure over solved cells.
struct AggregateRow {
  std::string budget;  // a budget value or "all"
  std::size_t cells = 0;
  std::size_t skipped = 0;
  std::array<double, kMeasureCount> mean{};
  std::array<double, kMeasureCount> standard_error{};
  double mean_strategies = 0.0;
  double mean_undominated = 0.0;
};

namespace detail {

// Sums in sorted order, so the result does not depend on input order.
inline double stable_mean(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline AggregateRow aggregate_group(std::string label, const std::vector<const CellResult*>& cells) {
  AggregateRow row;
  row.budget = std::move(label);
  std::array<std::vector<double>, kMeasureCount> probs;
  std::vector<double> strategies, undominated;
  for (const CellResult* c : cells) {
    if (c->skipped) {
      ++row.skipped;
      continue;
    }
    ++row.cells;
    for (std::size_t s = 0; s < kMeasureCount; ++s) probs[s].push_back(c->equilibrium.seeker_mixed[s]);
    strategies.push_back(static_cast<double>(c->strategies));
    undominated.push_back(static_cast<double>(c->undominated));
  }
  for (std::size_t s = 0; s < kMeasureCount; ++s) {
    row.mean[s] = stable_mean(probs[s]);
    if (probs[s].size() > 1) {
      std::vector<double> sq;
      for (double x : probs[s]) sq.push_back((x - row.mean[s]) * (x - row.mean[s]));
      const double var = stable_mean(sq) * static_cast<double>(sq.size()) /
                         static_cast<double>(sq.size() - 1);
      row.standard_error[s] = std::sqrt(var / static_cast<double>(sq.size()));
    }
  }
  row.mean_strategies = stable_mean(strategies);
  row.mean_undominated = stable_mean(undominated);
  return row;
}

}  // namespace detail

// One row per budget (ascending), then an "all" row over every cell.
inline std::vector<AggregateRow> aggregate(const std::vector<CellResult>& cells) {
  std::vector<std::size_t> budgets;
  for (const auto& c : cells) budgets.push_back(c.budget);
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  std::vector<AggregateRow> out;
  std::vector<const CellResult*> all;
  for (const auto& c : cells) all.push_back(&c);
  for (std::size_t b : budgets) {
    std::vector<const CellResult*> group;
    for (const auto& c : cells) {
      if (c.budget == b) group.push_back(&c);
    }
    out.push_back(detail::aggregate_group(std::to_string(b), group));
  }
  out.push_back(detail::aggregate_group("all", all));
  return out;
}

// Measure with the highest mean probability in the "all" row.
inline CentralityMeasure favourite_measure(const std::vector<AggregateRow>& rows) {
  const auto& m = rows.back().mean;
  return kAllMeasures[static_cast<std::size_t>(std::max_element(m.begin(), m.end()) - m.begin())];
}

// --- Output -----------------------------------------------------------------

inline void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "budget,cells,skipped";
  for (CentralityMeasure m : kAllMeasures) out << ",mean_p_" << measure_name(m);
  for (CentralityMeasure m : kAllMeasures) out << ",se_p_" << measure_name(m);
  out << ",mean_strategies,mean_undominated\n";
  for (const auto& r : rows) {
    out << r.budget << ',' << r.cells << ',' << r.skipped;
    for (double x : r.mean) out << ',' << format_double(x);
    for (double x : r.standard_error) out << ',' << format_double(x);
    out << ',' << format_double(r.mean_strategies) << ','
        << format_double(r.mean_undominated) << '\n';
  }
}

inline void write_summary_csv(std::ostream& out, const std::vector<CellResult>& cells) {
  out << "network,network_seed,budget,status,nodes,edges,evader,strategy_space,"
         "strategies,undominated,solved_type";
  for (CentralityMeasure m : kAllMeasures) out << ",p_" << measure_name(m);
  out << ",seeker_value,best_responses,influence_capped,note\n";
  for (const auto& c : cells) {
    out << c.network << ',' << c.network_seed << ',' << c.budget << ','
        << (c.skipped ? "skipped" : "solved") << ',' << c.nodes << ',' << c.edges << ','
        << c.evader << ',' << c.strategy_space << ',' << c.strategies << ','
        << c.undominated << ',';
    if (c.solved_type) out << *c.solved_type;
    for (std::size_t s = 0; s < kMeasureCount; ++s) {
      out << ',';
      if (!c.skipped) out << format_double(c.equilibrium.seeker_mixed[s]);
    }
    out << ',';
    if (!c.skipped) out << format_double(c.equilibrium.seeker_value);
    out << ',';
    for (std::size_t i = 0; i < c.response_labels.size(); ++i) {
      out << (i ? ";" : "") << c.response_labels[i];
    }
    out << ',' << c.influence_capped << ',' << c.note << '\n';
  }
}

inline constexpr std::size_t kHistogramBins = 20;

// Per solved cell, the distribution of phi = 0.5 payoffs against the
// seeker's equilibrium mixture, in equal-width bins between min and max.
inline void write_histogram_csv(std::ostream& out, const std::vector<CellResult>& cells) {
  out << "network,budget,bin,lower,upper,count\n";
  for (const auto& c : cells) {
    if (c.skipped || c.payoff_half.empty()) continue;
    const auto [lo_it, hi_it] = std::minmax_element(c.payoff_half.begin(), c.payoff_half.end());
    const double lo = *lo_it, hi = *hi_it;
    const std::size_t bins = hi > lo ? kHistogramBins : 1;
    const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 0.0;
    std::vector<std::size_t> counts(bins, 0);
    for (double x : c.payoff_half) {
      std::size_t b = width > 0.0 ? static_cast<std::size_t>((x - lo) / width) : 0;
      ++counts[std::min(b, bins - 1)];
    }
    for (std::size_t b = 0; b < bins; ++b) {
      const double upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
      out << c.network << ',' << c.budget << ',' << b << ','
          << format_double(lo + width * static_cast<double>(b)) << ','
          << format_double(upper) << ',' << counts[b] << '\n';
    }
  }
}

// Mean phi = 0.5 payoff by (edges removed, edges added), per solved cell.
inline void write_heatmap_csv(std::ostream& out, const std::vector<CellResult>& cells) {
  out << "network,budget,removed,added,strategies,mean_payoff\n";
  for (const auto& c : cells) {
    if (c.skipped) continue;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> rows;
    for (std::size_t j = 0; j < c.shape.size(); ++j) rows.push_back({c.shape[j], c.payoff_half[j]});
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < rows.size();) {
      std::size_t j = i;
      std::vector<double> vals;
      while (j < rows.size() && rows[j].first == rows[i].first) vals.push_back(rows[j++].second);
      out << c.network << ',' << c.budget << ',' << rows[i].first.first << ','
          << rows[i].first.second << ',' << vals.size() << ','
          << format_double(detail::stable_mean(vals)) << '\n';
      i = j;
    }
  }
}

inline nlohmann::ordered_json equilibrium_json(const ExperimentConfig& cfg,
                                               const std::vector<CellResult>& cells) {
  nlohmann::ordered_json doc;
  doc["version"] = std::string(kVersion);
  doc["config_hash"] = config_hash(cfg);
  doc["mode"] = mode_name(cfg.mode);
  auto& arr = doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json j;
    j["network"] = c.network;
    j["budget"] = c.budget;
    j["status"] = c.skipped ? "skipped" : "solved";
    if (c.skipped) {
      j["note"] = c.note;
      arr.push_back(std::move(j));
      continue;
    }
    j["evader"] = c.evader;
    nlohmann::ordered_json mixed;
    for (std::size_t s = 0; s < kMeasureCount; ++s) {
      mixed[std::string(measure_name(kAllMeasures[s]))] = c.equilibrium.seeker_mixed[s];
    }
    j["seeker_mixed"] = mixed;
    if (c.solved_type) j["solved_type"] = *c.solved_type;
    j["best_response"] = c.responses;
    j["best_response_labels"] = c.response_labels;
    j["seeker_value"] = c.equilibrium.seeker_value;
    j["evader_values"] = c.equilibrium.evader_values;
    j["strategies"] = c.strategies;
    j["undominated"] = c.undominated;
    j["undominated_per_type"] = c.undominated_per_type;
    j["initial_influence"] = c.initial_influence;
    j["solver"] = {{"nodes", c.equilibrium.stats.nodes},
                   {"lps_solved", c.equilibrium.stats.lps_solved},
                   {"pivots", c.equilibrium.stats.pivots}};
    arr.push_back(std::move(j));
  }
  return doc;
}

// Writes through a temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::function<void(std::ostream&)>& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw PreconditionError("cannot write '" + tmp.string() + "'");
    body(out);
    out.flush();
    if (!out) throw PreconditionError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::vector<AggregateRow> aggregate;
  std::vector<std::string> files;  // written, relative to the output dir
};

// Full pipeline over cfg.networks networks, writing all outputs into
// cfg.output. Output bytes depend only on the config (not on threads or
// wall time).
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output);
  fs::create_directories(dir);
  ExperimentResult res;
  auto tensor_sink = [&](const CellResult& cell, const PayoffTensor& t) {
    if (!cfg.write_tensors) return;
    fs::create_directories(dir / "tensors");
    const std::string name = "tensors/tensor_n" + std::to_string(cell.network) + "_b" +
                             std::to_string(cell.budget) + ".csv";
    write_file_atomic(dir / name, [&](std::ostream& o) { write_tensor_csv(o, t); });
    res.files.push_back(name);
  };
  const auto seeds = network_seeds(cfg);
  res.cells = batch_run(cfg, seeds, tensor_sink);
  res.aggregate = aggregate(res.cells);

  auto emit = [&](const std::string& name, const std::function<void(std::ostream&)>& body) {
    write_file_atomic(dir / name, body);
    res.files.push_back(name);
  };
  emit("summary.csv", [&](std::ostream& o) { write_summary_csv(o, res.cells); });
  emit("aggregate.csv", [&](std::ostream& o) { write_aggregate_csv(o, res.aggregate); });
  emit("payoff_histogram.csv", [&](std::ostream& o) { write_histogram_csv(o, res.cells); });
  emit("heatmap.csv", [&](std::ostream& o) { write_heatmap_csv(o, res.cells); });
  emit("equilibrium.json",
       [&](std::ostream& o) { o << equilibrium_json(cfg, res.cells).dump(2) << '\n'; });
  std::sort(res.files.begin(), res.files.end());
  nlohmann::ordered_json manifest;
  manifest["tool"] = "seekev";
  manifest["version"] = std::string(kVersion);
  manifest["config_hash"] = config_hash(cfg);
  manifest["seed"] = cfg.seed;
  manifest["config"] = to_json(cfg);
  manifest["files"] = res.files;
  write_file_atomic(dir / "manifest.json",
                    [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
  res.files.push_back("manifest.json");
  return res;
}

}  // namespace seekev

#endif  // SEEKEV_EXPERIMENT_HPP
