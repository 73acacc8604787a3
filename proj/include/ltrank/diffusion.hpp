#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltrank/centrality.hpp"
#include "ltrank/graph.hpp"
#include "ltrank/parallel.hpp"
#include "ltrank/rng.hpp"

namespace ltrank {

/// Threshold assignment rule for one sweep: a shared fixed value or per-node
/// uniform draws re-sampled every run from a seeded stream.
struct ThresholdSpec {
  enum class Kind { kFixed, kUniformRandom };

  Kind kind = Kind::kFixed;
  double theta = 0.0;             // kFixed only
  std::uint64_t master_seed = 0;  // kUniformRandom only

  static ThresholdSpec fixed(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
      throw std::invalid_argument("threshold must be in [0, 1]");
    return {Kind::kFixed, theta, 0};
  }

  static ThresholdSpec uniform_random(std::uint64_t master_seed) {
    return {Kind::kUniformRandom, 0.0, master_seed};
  }

  bool is_fixed() const { return kind == Kind::kFixed; }
};

/// One simulation's trace: cumulative activation counts per round.
struct LTOutcome {
  std::size_t final_active = 0;
  std::size_t seed_count = 0;
  std::size_t rounds = 0;                     // rounds that activated someone
  std::vector<std::size_t> per_round_active;  // A(0..rounds), non-decreasing
  std::vector<char> active;                   // final state per node
};

/// Seed budget: round-half-up of fraction * N.
inline std::size_t seed_count_for(double fraction, NodeId n_nodes) {
  std::size_t s = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n_nodes) + 0.5));
  return std::min<std::size_t>(s, n_nodes);
}

/// Top round(f*N) nodes of the ranking. Prefixes nest: f1 <= f2 implies
/// seeds(f1) is a prefix of seeds(f2).
inline std::vector<NodeId> select_seeds(const Ranking& ranking, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("select_seeds: fraction must be in [0, 1]");
  const std::size_t s =
      seed_count_for(fraction, static_cast<NodeId>(ranking.order.size()));
  return {ranking.order.begin(), ranking.order.begin() + s};
}

/// Per-node thresholds drawn uniformly from [0, 1), node order, one stream.
inline std::vector<double> draw_thresholds(NodeId n_nodes, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> theta(n_nodes);
  for (NodeId v = 0; v < n_nodes; ++v) theta[v] = rng.next_double();
  return theta;
}

/// Synchronous Linear Threshold dynamics. At round t every inactive node v
/// with at least theta_v * k_v active neighbors (states as of the end of round
/// t-1) activates; the process stops on the first unproductive round. Active
/// nodes never deactivate. Degree-0 nodes activate only if seeded.
inline LTOutcome lt_simulate(const Graph& g, std::span<const NodeId> seeds,
                             std::span<const double> thresholds) {
  const NodeId n = g.num_nodes();
  if (thresholds.size() != n)
    throw std::invalid_argument("lt_simulate: thresholds must cover all nodes");

  LTOutcome out;
  out.active.assign(n, 0);
  std::vector<NodeId> frontier;
  for (NodeId s : seeds) {
    if (s >= n) throw std::invalid_argument("lt_simulate: seed out of range");
    if (!out.active[s]) {
      out.active[s] = 1;
      frontier.push_back(s);
    }
  }
  out.seed_count = frontier.size();
  out.final_active = frontier.size();
  out.per_round_active.push_back(out.final_active);

  std::vector<NodeId> active_neighbors(n, 0);
  std::vector<char> queued(n, 0);
  std::vector<NodeId> candidates, next;
  bool first_round = true;
  while (!frontier.empty() || first_round) {
    candidates.clear();
    for (NodeId u : frontier) {
      for (NodeId w : g.neighbors(u)) {
        ++active_neighbors[w];
        if (!out.active[w] && !queued[w]) {
          queued[w] = 1;
          candidates.push_back(w);
        }
      }
    }
    if (first_round) {
      // A zero threshold is met with zero active neighbors; only the first
      // round can trigger it, afterwards these nodes are already active.
      for (NodeId v = 0; v < n; ++v) {
        if (thresholds[v] <= 0.0 && !out.active[v] && !queued[v] &&
            g.degree(v) > 0) {
          queued[v] = 1;
          candidates.push_back(v);
        }
      }
      first_round = false;
    }
    next.clear();
    for (NodeId v : candidates) {
      queued[v] = 0;
      const double share =
          static_cast<double>(active_neighbors[v]) / g.degree(v);
      if (share >= thresholds[v]) next.push_back(v);
    }
    if (next.empty()) break;
    for (NodeId v : next) out.active[v] = 1;
    out.final_active += next.size();
    out.per_round_active.push_back(out.final_active);
    ++out.rounds;
    frontier.swap(next);
  }
  return out;
}

/// Aggregated sweep output for one (graph, ranking, threshold spec).
struct SweepRow {
  double fraction = 0;
  std::size_t seed_count = 0;
  double mean_final_active = 0;  // raw node count
  double mean_activation = 0;    // normalized by N
  double std_activation = 0;     // sample std of the normalized size
  unsigned runs = 1;
};

struct SweepTable {
  ThresholdSpec spec;
  unsigned runs = 1;
  std::vector<SweepRow> rows;  // one per fraction, ascending
};

/// Runs the LT model at every fraction of the grid. A fixed threshold is
/// deterministic, so it forces runs = 1; random thresholds are re-drawn per
/// run from child seeds mixed out of (master_seed, stream_salt, fraction
/// index, run index); execution order and worker count cannot change them.
inline SweepTable lt_sweep(const Graph& g, const Ranking& ranking,
                           std::span<const double> fractions,
                           const ThresholdSpec& spec, unsigned runs,
                           std::uint64_t stream_salt = 0, unsigned workers = 1) {
  if (runs == 0) throw std::invalid_argument("lt_sweep: runs must be >= 1");
  for (std::size_t i = 1; i < fractions.size(); ++i)
    if (fractions[i] < fractions[i - 1])
      throw std::invalid_argument("lt_sweep: fractions must be ascending");

  const NodeId n = g.num_nodes();
  const unsigned effective_runs = spec.is_fixed() ? 1 : runs;
  const std::size_t cells = fractions.size() * effective_runs;
  std::vector<double> final_raw(cells, 0.0);

  std::vector<double> fixed_theta;
  if (spec.is_fixed()) fixed_theta.assign(n, spec.theta);

  parallel_for(cells, workers, [&](std::size_t cell) {
    const std::size_t fi = cell / effective_runs;
    const std::size_t run = cell % effective_runs;
    const std::size_t s = seed_count_for(fractions[fi], n);
    std::span<const NodeId> seeds{ranking.order.data(), s};
    LTOutcome outcome;
    if (spec.is_fixed()) {
      outcome = lt_simulate(g, seeds, fixed_theta);
    } else {
      const std::uint64_t child =
          mix_seed({spec.master_seed, stream_salt, fi, run});
      outcome = lt_simulate(g, seeds, draw_thresholds(n, child));
    }
    final_raw[cell] = static_cast<double>(outcome.final_active);
  });

  SweepTable table{spec, effective_runs, {}};
  table.rows.reserve(fractions.size());
  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    SweepRow row;
    row.fraction = fractions[fi];
    row.seed_count = seed_count_for(fractions[fi], n);
    row.runs = effective_runs;
    double sum = 0;
    for (unsigned r = 0; r < effective_runs; ++r)
      sum += final_raw[fi * effective_runs + r];
    row.mean_final_active = sum / effective_runs;
    row.mean_activation = row.mean_final_active / static_cast<double>(n);
    if (effective_runs > 1) {
      double ss = 0;
      for (unsigned r = 0; r < effective_runs; ++r) {
        const double d =
            final_raw[fi * effective_runs + r] / static_cast<double>(n) -
            row.mean_activation;
        ss += d * d;
      }
      row.std_activation = std::sqrt(ss / (effective_runs - 1));
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace ltrank
