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

#ifndef SEEKEV_INFLUENCE_HPP
#define SEEKEV_INFLUENCE_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seekev/error.hpp"
#include "seekev/graph.hpp"
#include "seekev/rng.hpp"

namespace seekev {

enum class InfluenceKind { kIndependentCascade, kLinearThreshold };

struct InfluenceModel {
  InfluenceKind kind = InfluenceKind::kIndependentCascade;
  double ic_probability = 0.15;

  static InfluenceModel independent_cascade(double p = 0.15) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw PreconditionError("activation probability must lie in [0, 1]");
    }
    return {InfluenceKind::kIndependentCascade, p};
  }
  static InfluenceModel linear_threshold() {
    return {InfluenceKind::kLinearThreshold, 0.15};
  }
};

inline std::string_view model_name(const InfluenceModel& m) {
  return m.kind == InfluenceKind::kIndependentCascade ? "ic" : "lt";
}

// Monte-Carlo stopping rule: stop once the running mean moved by less than
// `tolerance` over the last `lag` samples (and at least `min_samples` were
// drawn), or when `max_samples` is reached.
struct StoppingRule {
  std::size_t lag = 1000;
  double tolerance = 1e-5;
  std::size_t min_samples = 2000;
  std::size_t max_samples = 1000000;
};

struct InfluenceEstimate {
  double mean = 1.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  bool hit_sample_cap = false;
  InfluenceModel model;
};

// Reusable per-thread buffers for cascade simulation.
class CascadeWorkspace {
 public:
  std::vector<std::uint8_t> active;
  std::vector<NodeId> queue;
  std::vector<std::uint32_t> threshold;
  std::vector<std::uint32_t> hits;
};

// One full propagation from {seed_node}; returns the number of active nodes
// when the process stops.
//
// Independent cascade: every newly activated node gets one chance to
// activate each inactive neighbour with probability p.
// Linear threshold: each node with neighbours draws a threshold uniformly
// from {1, ..., |N(v)|} and activates once that many neighbours are active.
// Activation is monotone, so processing newly active nodes from a queue
// reaches the same final set as synchronous rounds.
inline std::size_t simulate_cascade_once(const Graph& g, NodeId seed_node,
                                         const InfluenceModel& model, Rng& rng,
                                         CascadeWorkspace& ws) {
  const std::size_t n = g.node_count();
  ws.active.assign(n, 0);
  ws.queue.clear();
  ws.active[seed_node] = 1;
  ws.queue.push_back(seed_node);

  if (model.kind == InfluenceKind::kIndependentCascade) {
    const double p = model.ic_probability;
    for (std::size_t head = 0; head < ws.queue.size(); ++head) {
      const NodeId v = ws.queue[head];
      for (NodeId w : g.neighbors(v)) {
        if (ws.active[w]) continue;
        if (rng.bernoulli(p)) {
          ws.active[w] = 1;
          ws.queue.push_back(w);
        }
      }
    }
    return ws.queue.size();
  }

  ws.threshold.resize(n);
  ws.hits.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t deg = g.degree(v);
    ws.threshold[v] =
        deg == 0 ? 0 : static_cast<std::uint32_t>(1 + rng.below(deg));
  }
  for (std::size_t head = 0; head < ws.queue.size(); ++head) {
    const NodeId v = ws.queue[head];
    for (NodeId w : g.neighbors(v)) {
      if (ws.active[w]) continue;
      if (++ws.hits[w] >= ws.threshold[w]) {
        ws.active[w] = 1;
        ws.queue.push_back(w);
      }
    }
  }
  return ws.queue.size();
}

inline std::size_t simulate_cascade_once(const Graph& g, NodeId seed_node,
                                         const InfluenceModel& model, Rng& rng) {
  CascadeWorkspace ws;
  return simulate_cascade_once(g, seed_node, model, rng, ws);
}

// Expected final active count from {seed_node}. Run i draws from the stream
// derive_seed(rng_seed, i), so the estimate depends only on rng_seed and is
// reproducible bit for bit.
inline InfluenceEstimate estimate_influence(const Graph& g, NodeId seed_node,
                                            const InfluenceModel& model,
                                            std::uint64_t rng_seed,
                                            const StoppingRule& rule = {}) {
  if (seed_node >= g.node_count()) {
    throw PreconditionError("seed node " + std::to_string(seed_node) +
                            " out of range");
  }
  if (rule.lag == 0 || rule.max_samples == 0) {
    throw PreconditionError("stopping rule needs positive lag and sample cap");
  }
  CascadeWorkspace ws;
  // Integer sums keep the running mean exact and order independent.
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  std::vector<std::uint64_t> lagged(rule.lag, 0);  // prefix sums, ring buffer
  std::size_t t = 0;
  bool converged = false;
  while (t < rule.max_samples) {
    Rng rng(derive_seed(rng_seed, t));
    const std::uint64_t x = simulate_cascade_once(g, seed_node, model, rng, ws);
    lagged[t % rule.lag] = sum;  // S_t, the sum of the first t samples
    sum += x;
    sum_sq += x * x;
    ++t;
    if (t >= rule.min_samples && t > rule.lag) {
      // S_{t-lag} sits at slot (t - lag) % lag until step t overwrites it.
      const std::uint64_t past = lagged[(t - rule.lag) % rule.lag];
      const double mean_now = static_cast<double>(sum) / static_cast<double>(t);
      const double mean_past =
          static_cast<double>(past) / static_cast<double>(t - rule.lag);
      if (std::abs(mean_now - mean_past) < rule.tolerance) {
        converged = true;
        break;
      }
    }
  }
  InfluenceEstimate est;
  est.model = model;
  est.samples = t;
  est.hit_sample_cap = !converged;
  const double tn = static_cast<double>(t);
  est.mean = static_cast<double>(sum) / tn;
  const double var =
      t > 1 ? std::max(0.0, (static_cast<double>(sum_sq) - tn * est.mean * est.mean) /
                                (tn - 1.0))
            : 0.0;
  est.standard_error = std::sqrt(var / tn);
  return est;
}

}  // namespace seekev

#endif  // SEEKEV_INFLUENCE_HPP
