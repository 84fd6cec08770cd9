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

// seekev command-line tool. See README.md for the verbs and flags.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seekev/centrality.hpp"
#include "seekev/edge_list.hpp"
#include "seekev/error.hpp"
#include "seekev/experiment.hpp"
#include "seekev/format.hpp"
#include "seekev/gadgets.hpp"
#include "seekev/game.hpp"
#include "seekev/generators.hpp"
#include "seekev/hiding.hpp"
#include "seekev/influence.hpp"
#include "seekev/solver.hpp"
#include "seekev/strategy_file.hpp"
#include "seekev/version.hpp"

namespace {

using namespace seekev;

enum ExitCode {
  kOk = 0,
  kOtherError = 1,
  kConfigError = 2,
  kGuardError = 3,
  kNumericalError = 4,
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kGuardExceeded:
      return kGuardError;
    case ErrorKind::kNumerical:
      return kNumericalError;
    default:
      return kConfigError;
  }
}

// Writes to `path`, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  write_file_atomic(p, body);
}

LabeledGraph read_graph(const std::string& path) {
  if (path == "-") return parse_edge_list(std::cin);
  return load_edge_list(path);
}

// Accepts a node label from the edge list; plain ids work for unlabeled files.
NodeId resolve_node(const LabeledGraph& lg, const std::string& name) {
  for (NodeId v = 0; v < lg.labels.size(); ++v) {
    if (lg.labels[v] == name) return v;
  }
  throw PreconditionError("no node labelled '" + name + "'");
}

struct InfluenceFlags {
  std::string model = "ic";
  double ic_probability = 0.15;
  StoppingRule stopping;

  void add(CLI::App* app) {
    app->add_option("--influence-model", model, "ic or lt")
        ->check(CLI::IsMember({"ic", "lt"}))
        ->capture_default_str();
    app->add_option("--ic-probability", ic_probability)->capture_default_str();
    app->add_option("--mc-lag", stopping.lag)->capture_default_str();
    app->add_option("--mc-tolerance", stopping.tolerance)->capture_default_str();
    app->add_option("--mc-min-samples", stopping.min_samples)->capture_default_str();
    app->add_option("--mc-max-samples", stopping.max_samples)->capture_default_str();
  }
  InfluenceModel resolve() const {
    return model == "lt" ? InfluenceModel::linear_threshold()
                         : InfluenceModel::independent_cascade(ic_probability);
  }
};

struct TypeFlags {
  std::vector<double> phis = {0.2, 0.4, 0.6, 0.8};
  std::vector<double> probabilities;

  void add(CLI::App* app) {
    app->add_option("--phis", phis, "evader type weights on hiding")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--phi-probabilities", probabilities, "default: uniform")
        ->delimiter(',');
  }
  std::vector<EvaderType> resolve() const {
    if (probabilities.empty()) return uniform_types(phis);
    if (probabilities.size() != phis.size()) {
      throw PreconditionError("--phi-probabilities must match --phis in length");
    }
    std::vector<EvaderType> out;
    for (std::size_t i = 0; i < phis.size(); ++i) out.push_back({phis[i], probabilities[i]});
    return out;
  }
};

GameMode parse_mode(const std::string& m) {
  return m == "zero_sum" ? GameMode::kZeroSum : GameMode::kNonZeroSum;
}

// --- generate ---------------------------------------------------------------

struct GenerateCmd {
  std::string model = "ba";
  std::size_t nodes = 30;
  std::size_t links_per_node = 3;
  double mean_degree = 10.0;
  double rewire_probability = kDefaultRewireProbability;
  std::uint64_t seed = 1;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("generate", "Generate a random network as an edge list");
    app->add_option("--model", model, "ba, ws or er")
        ->check(CLI::IsMember({"ba", "ws", "er"}))
        ->capture_default_str();
    app->add_option("--nodes", nodes)->capture_default_str();
    app->add_option("--links-per-node", links_per_node, "ba only")->capture_default_str();
    app->add_option("--mean-degree", mean_degree, "ws and er")->capture_default_str();
    app->add_option("--rewire-probability", rewire_probability, "ws only")
        ->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
    app->add_option("-o,--output", output, "edge list path (default stdout)");
    app->callback([this] { run(); });
  }
  void run() const {
    Graph g;
    if (model == "ba") {
      g = generate_barabasi_albert(nodes, links_per_node, seed);
    } else if (model == "ws") {
      g = generate_watts_strogatz(nodes, static_cast<std::size_t>(mean_degree),
                                  rewire_probability, seed);
    } else {
      g = generate_erdos_renyi(nodes, mean_degree, seed);
    }
    emit(output, [&](std::ostream& o) { write_edge_list(o, g); });
  }
};

// --- centrality -------------------------------------------------------------

struct CentralityCmd {
  std::string graph;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("centrality", "Centrality values and ranks of every node");
    app->add_option("graph", graph, "edge list ('-' for stdin)")->required();
    app->add_option("-o,--output", output, "CSV path (default stdout)");
    app->callback([this] { run(); });
  }
  void run() const {
    const LabeledGraph lg = read_graph(graph);
    std::vector<CentralityVector> values;
    std::vector<std::vector<std::size_t>> ranks;
    for (CentralityMeasure m : kAllMeasures) {
      values.push_back(compute_centrality(lg.graph, m));
      ranks.push_back(rank_nodes(values.back()));
    }
    emit(output, [&](std::ostream& o) {
      o << "node,label";
      for (CentralityMeasure m : kAllMeasures) o << ',' << measure_name(m);
      for (CentralityMeasure m : kAllMeasures) o << ",rank_" << measure_name(m);
      o << '\n';
      for (NodeId v = 0; v < lg.graph.node_count(); ++v) {
        o << v << ',' << lg.labels[v];
        for (const auto& cv : values) o << ',' << format_double(cv.values[v]);
        for (const auto& r : ranks) o << ',' << r[v];
        o << '\n';
      }
    });
  }
};

// --- influence --------------------------------------------------------------

struct InfluenceCmd {
  std::string graph;
  std::string node;
  std::uint64_t seed = 1;
  InfluenceFlags flags;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("influence", "Monte-Carlo influence of one seed node");
    app->add_option("graph", graph, "edge list ('-' for stdin)")->required();
    app->add_option("--node", node, "seed node label")->required();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    flags.add(app);
    app->add_option("-o,--output", output, "CSV path (default stdout)");
    app->callback([this] { run(); });
  }
  void run() const {
    const LabeledGraph lg = read_graph(graph);
    const InfluenceEstimate est = estimate_influence(lg.graph, resolve_node(lg, node),
                                                     flags.resolve(), seed, flags.stopping);
    emit(output, [&](std::ostream& o) {
      o << "node,model,mean,standard_error,samples,hit_sample_cap\n"
        << node << ',' << model_name(est.model) << ',' << format_double(est.mean) << ','
        << format_double(est.standard_error) << ',' << est.samples << ','
        << (est.hit_sample_cap ? "true" : "false") << '\n';
    });
  }
};

// --- strategies -------------------------------------------------------------

struct StrategySpaceFlags {
  std::string evader;
  std::size_t budget = 5;
  std::string source = "roam";
  double sample_fraction = 1.0;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("--evader", evader, "evader label (default: lowest rank sum)");
    app->add_option("--budget", budget)->capture_default_str();
    app->add_option("--strategy-source", source, "full_enum or roam")
        ->check(CLI::IsMember({"full_enum", "roam"}))
        ->capture_default_str();
    app->add_option("--sample-fraction", sample_fraction, "full_enum only")
        ->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
  }
  NodeId resolve_evader(const LabeledGraph& lg) const {
    if (!evader.empty()) return resolve_node(lg, evader);
    return select_evader(lg.graph, derive_seed(seed, 2));
  }
  std::vector<EvaderStrategy> build(const Graph& g, NodeId ev) const {
    if (source == "roam") return roam_strategies(g, ev, budget);
    const auto inst = make_instance(g, ev, budget, CentralityMeasure::kDegree, 1);
    return enumerate_strategies(inst, sample_fraction, derive_seed(seed, 3));
  }
};

struct StrategiesCmd {
  std::string graph;
  StrategySpaceFlags space;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("strategies", "List evader strategies");
    app->add_option("graph", graph, "edge list ('-' for stdin)")->required();
    space.add(app);
    app->add_option("-o,--output", output, "strategy file path (default stdout)");
    app->callback([this] { run(); });
  }
  void run() const {
    const LabeledGraph lg = read_graph(graph);
    const NodeId ev = space.resolve_evader(lg);
    const auto strategies = space.build(lg.graph, ev);
    emit(output, [&](std::ostream& o) {
      o << "# evader " << lg.labels[ev] << " (id " << ev << "), budget " << space.budget
        << ", " << strategies.size() << " strategies\n";
      write_strategies(o, strategies);
    });
  }
};

// --- tensor -----------------------------------------------------------------

struct TensorCmd {
  std::string graph;
  std::string strategies;
  StrategySpaceFlags space;
  TypeFlags types;
  InfluenceFlags flags;
  double d = 15.0;
  double k = 0.0;
  std::string mode = "non_zero_sum";
  unsigned threads = 0;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("tensor", "Build the payoff tensor");
    app->add_option("graph", graph, "edge list ('-' for stdin)")->required();
    app->add_option("--strategies", strategies, "strategy file (default: generate)");
    space.add(app);
    types.add(app);
    flags.add(app);
    app->add_option("--d", d, "rank at which hiding utility is 0.5")->capture_default_str();
    app->add_option("--k", k, "sigmoid slope (default 3 / d)");
    app->add_option("--mode", mode, "zero_sum or non_zero_sum")
        ->check(CLI::IsMember({"zero_sum", "non_zero_sum"}))
        ->capture_default_str();
    app->add_option("--threads", threads, "0: all cores");
    app->add_option("-o,--output", output, "tensor CSV path (default stdout)");
    app->callback([this] { run(); });
  }
  void run() const {
    const LabeledGraph lg = read_graph(graph);
    const NodeId ev = space.resolve_evader(lg);
    std::vector<EvaderStrategy> list;
    if (strategies.empty()) {
      list = space.build(lg.graph, ev);
    } else {
      std::ifstream in(strategies);
      if (!in) throw PreconditionError("cannot open strategy file '" + strategies + "'");
      list = parse_strategies(in);
    }
    const PayoffTensor t = build_payoff_tensor(
        lg.graph, ev, list, types.resolve(), {d, k > 0.0 ? k : 3.0 / d}, flags.resolve(),
        parse_mode(mode), derive_seed(space.seed, 4), {flags.stopping, threads});
    emit(output, [&](std::ostream& o) { write_tensor_csv(o, t); });
  }
};

// --- solve ------------------------------------------------------------------

struct SolveCmd {
  std::string tensor;
  TypeFlags types;
  std::string mode = "non_zero_sum";
  std::size_t type = 0;
  bool prune = true;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("solve", "Solve a payoff tensor for the seeker's equilibrium");
    app->add_option("tensor", tensor, "tensor CSV ('-' for stdin)")->required();
    types.add(app);
    app->add_option("--mode", mode, "zero_sum or non_zero_sum")
        ->check(CLI::IsMember({"zero_sum", "non_zero_sum"}))
        ->capture_default_str();
    app->add_option("--type", type, "zero_sum: index of the type to solve")
        ->capture_default_str();
    app->add_flag("!--no-prune", prune, "skip dominated-strategy pruning");
    app->add_option("-o,--output", output, "JSON path (default stdout)");
    app->callback([this] { run(); });
  }
  void run() const {
    PayoffTensor t;
    const GameMode m = parse_mode(mode);
    if (tensor == "-") {
      t = read_tensor_csv(std::cin, types.resolve(), m);
    } else {
      std::ifstream in(tensor);
      if (!in) throw PreconditionError("cannot open tensor '" + tensor + "'");
      t = read_tensor_csv(in, types.resolve(), m);
    }
    std::vector<std::size_t> kept(t.strategy_count());
    std::iota(kept.begin(), kept.end(), 0);
    PayoffTensor work = t;
    if (prune) {
      PrunedTensor p = prune_dominated(t);
      kept = std::move(p.kept);
      work = std::move(p.tensor);
    }
    if (m == GameMode::kZeroSum && type >= t.type_count()) {
      throw PreconditionError("--type out of range");
    }
    const EquilibriumResult r =
        m == GameMode::kZeroSum ? solve_zero_sum(work, type) : solve_stackelberg(work);
    nlohmann::ordered_json j;
    j["mode"] = mode_name(m);
    if (m == GameMode::kZeroSum) j["type"] = type;
    nlohmann::ordered_json mixed;
    for (std::size_t s = 0; s < kMeasureCount; ++s) {
      mixed[std::string(measure_name(kAllMeasures[s]))] = r.seeker_mixed[s];
    }
    j["seeker_mixed"] = mixed;
    std::vector<std::size_t> responses;
    for (std::size_t e : r.best_response) responses.push_back(kept[e]);
    j["best_response"] = responses;
    j["seeker_value"] = r.seeker_value;
    j["evader_values"] = r.evader_values;
    j["strategies"] = t.strategy_count();
    j["undominated"] = kept.size();
    emit(output, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  }
};

// --- experiment -------------------------------------------------------------

struct ExperimentCmd {
  std::string config;
  std::string preset;
  std::vector<std::string> overrides;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> networks;
  std::optional<unsigned> threads;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("experiment", "Run the full experiment pipeline");
    auto* cfg = app->add_option("--config", config, "flat JSON config file");
    app->add_option("--preset", preset, "named setup")
        ->check(CLI::IsMember(preset_names()))
        ->excludes(cfg);
    app->add_option("--set", overrides, "override a config key: key=value (value as JSON)");
    app->add_option("--output", output, "output directory");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--networks", networks, "number of networks");
    app->add_option("--threads", threads, "0: all cores");
    app->callback([this] { run(); });
  }
  void run() const {
    ExperimentConfig c = preset.empty() ? ExperimentConfig{} : preset_config(preset);
    if (!config.empty()) c = load_config(config, c);
    nlohmann::json extra = nlohmann::json::object();
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--set expects key=value, got '" + kv + "'");
      }
      const std::string value = kv.substr(eq + 1);
      extra[kv.substr(0, eq)] = nlohmann::json::accept(value)
                                    ? nlohmann::json::parse(value)
                                    : nlohmann::json(value);
    }
    if (output) extra["output"] = *output;
    if (seed) extra["seed"] = *seed;
    if (networks) extra["networks"] = *networks;
    if (threads) extra["threads"] = *threads;
    c = apply_config(c, extra);

    const auto start = std::chrono::steady_clock::now();
    const ExperimentResult res = run_experiment(c);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t skipped = 0;
    for (const auto& cell : res.cells) skipped += cell.skipped ? 1 : 0;
    std::cerr << "seekev: " << res.cells.size() << " cells (" << skipped << " skipped), "
              << res.files.size() << " files in " << c.output << ", "
              << format_double(seconds) << " s\n";
    const auto& all = res.aggregate.back();
    for (std::size_t s = 0; s < kMeasureCount; ++s) {
      std::cerr << "  mean p_" << measure_name(kAllMeasures[s]) << " = "
                << format_double(all.mean[s]) << '\n';
    }
  }
};

// --- gadget -----------------------------------------------------------------

std::vector<TripleSet> parse_sets(const std::string& text) {
  std::vector<TripleSet> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    std::stringstream one(item);
    std::string num;
    std::vector<std::uint32_t> elems;
    while (std::getline(one, num, ',')) {
      try {
        elems.push_back(static_cast<std::uint32_t>(std::stoul(num)));
      } catch (const std::exception&) {
        throw PreconditionError("bad set element '" + num + "'");
      }
    }
    if (elems.size() != 3) throw PreconditionError("every set needs exactly 3 elements");
    out.push_back({elems[0], elems[1], elems[2]});
  }
  return out;
}

struct GadgetCmd {
  std::string kind;
  std::string graph;
  std::size_t universe = 0;
  std::string sets;
  std::size_t k = 2;
  bool solve = false;
  std::string output;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand(
        "gadget", "Build a hardness gadget: a Local Hiding instance from k-clique or set cover");
    app->add_option("kind", kind, "degree, closeness or betweenness")
        ->check(CLI::IsMember({"degree", "closeness", "betweenness"}))
        ->required();
    app->add_option("--graph", graph, "degree: edge list of the clique instance");
    app->add_option("--universe", universe, "closeness/betweenness: universe size l");
    app->add_option("--sets", sets, "closeness/betweenness: e.g. \"0,1,2;1,2,3\"");
    app->add_option("--k", k, "clique size or cover size")->capture_default_str();
    app->add_flag("--solve", solve, "also decide the instance by brute force");
    app->add_option("-o,--output", output, "edge list path (default stdout)");
    app->callback([this] { run(); });
  }
  void run() const {
    Gadget gadget;
    if (kind == "degree") {
      if (graph.empty()) throw PreconditionError("degree gadget needs --graph");
      gadget = build_degree_gadget(read_graph(graph).graph, k);
    } else if (kind == "closeness") {
      gadget = build_closeness_gadget(universe, parse_sets(sets), k);
    } else {
      gadget = build_betweenness_gadget(universe, parse_sets(sets), k);
    }
    const LocalHidingInstance& inst = gadget.instance;
    emit(output, [&](std::ostream& o) {
      o << "# " << kind << " gadget: evader " << gadget.labels[inst.evader] << ", budget "
        << inst.budget << ", d " << inst.safety_margin << ", "
        << inst.addable.size() << " addable, " << inst.removable.size() << " removable\n";
      write_edge_list(o, inst.graph, &gadget.labels);
    });
    if (solve) {
      const auto found = solve_local_hiding_bruteforce(inst);
      std::cerr << "solvable: " << (found ? "yes" : "no") << '\n';
      if (found) {
        write_strategy(std::cerr, *found);
      }
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seekev: seeker-evader games on social networks"};
  app.set_version_flag("--version", std::string(seekev::kVersion));
  app.require_subcommand(1);
  GenerateCmd generate;
  CentralityCmd centrality;
  InfluenceCmd influence;
  StrategiesCmd strategies;
  TensorCmd tensor;
  SolveCmd solve;
  ExperimentCmd experiment;
  GadgetCmd gadget;
  generate.add(app);
  centrality.add(app);
  influence.add(app);
  strategies.add(app);
  tensor.add(app);
  solve.add(app);
  experiment.add(app);
  gadget.add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  } catch (const seekev::Error& e) {
    std::cerr << "seekev: error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "seekev: error: " << e.what() << '\n';
    return kOtherError;
  }
  return kOk;
}
