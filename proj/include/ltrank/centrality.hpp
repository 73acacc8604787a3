#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltrank/graph.hpp"
#include "ltrank/kcore.hpp"
#include "ltrank/partition.hpp"

namespace ltrank {

enum class Measure : int {
  kComm = 0,  // Comm Centrality
  kCBC,       // Community-based Centrality
  kCBM,       // Community-based Mediator
  kCHB,       // Community Hub-Bridge
  kMV,        // Modularity Vitality
  kPC,        // Participation Coefficient
  kKSC,       // K-shell with Community
};

inline constexpr std::array<Measure, 7> kAllMeasures = {
    Measure::kComm, Measure::kCBC, Measure::kCBM, Measure::kCHB,
    Measure::kMV,   Measure::kPC,  Measure::kKSC};

inline constexpr std::array<std::string_view, 7> kMeasureNames = {
    "COMM", "CBC", "CBM", "CHB", "MV", "PC", "KSC"};

inline std::string_view measure_name(Measure m) {
  return kMeasureNames[static_cast<int>(m)];
}

inline std::optional<Measure> parse_measure(std::string_view s) {
  for (std::size_t i = 0; i < kMeasureNames.size(); ++i)
    if (s == kMeasureNames[i]) return static_cast<Measure>(i);
  return std::nullopt;
}

struct MeasureParams {
  double comm_r = 1.0;    // Comm Centrality scaling factor
  double ksc_delta = 0.5; // intra/inter k-shell weight
};

struct CentralityScores {
  Measure measure;
  std::vector<double> values;
  MeasureParams params;
};

/// Deterministic descending-score order; equal scores order by node index.
struct Ranking {
  std::vector<NodeId> order;
  std::vector<double> scores;  // by node index, not by position
};

inline Ranking rank(const CentralityScores& scores) {
  for (double v : scores.values)
    if (!std::isfinite(v))
      throw std::invalid_argument("rank: scores must be finite");
  Ranking r;
  r.scores = scores.values;
  r.order.resize(scores.values.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
    if (r.scores[a] != r.scores[b]) return r.scores[a] > r.scores[b];
    return a < b;
  });
  return r;
}

/// Comm Centrality: intra term scaled against the community's intra hub, plus
/// a squared inter (bridge) term, blended by the community mixing. A term
/// whose in-community maximum is 0 contributes 0.
inline CentralityScores comm_centrality(const Graph& g, const Partition& p,
                                        const LinkCensus& census, double r) {
  if (!(r > 0) || !std::isfinite(r))
    throw std::invalid_argument("comm_centrality: R must be positive");
  const NodeId n = g.num_nodes();
  std::vector<std::uint32_t> max_intra(p.n_communities, 0),
      max_inter(p.n_communities, 0);
  for (NodeId v = 0; v < n; ++v) {
    CommunityId c = p.of(v);
    max_intra[c] = std::max(max_intra[c], census.intra_degree[v]);
    max_inter[c] = std::max(max_inter[c], census.inter_degree[v]);
  }
  CentralityScores out{Measure::kComm, std::vector<double>(n, 0.0), {}};
  out.params.comm_r = r;
  for (NodeId v = 0; v < n; ++v) {
    const CommunityId c = p.of(v);
    const double mu = census.mixing[c];
    double intra_term = 0, inter_term = 0;
    if (max_intra[c] > 0)
      intra_term = static_cast<double>(census.intra_degree[v]) / max_intra[c] * r;
    if (max_inter[c] > 0) {
      const double b =
          static_cast<double>(census.inter_degree[v]) / max_inter[c] * r;
      inter_term = b * b;
    }
    out.values[v] = (1.0 + mu) * intra_term + (1.0 - mu) * inter_term;
  }
  return out;
}

/// Community-based Centrality: links into each community weighted by that
/// community's relative size.
inline CentralityScores community_based_centrality(const Graph& g,
                                                   const Partition& p,
                                                   const LinkCensus& census) {
  const NodeId n = g.num_nodes();
  CentralityScores out{Measure::kCBC, std::vector<double>(n, 0.0), {}};
  for (NodeId v = 0; v < n; ++v) {
    double s = 0;
    for (const auto& [c, k] : census.counts(v))
      s += static_cast<double>(k) *
           (static_cast<double>(p.sizes[c]) / static_cast<double>(n));
    out.values[v] = s;
  }
  return out;
}

/// Community-based Mediator: entropy of the intra/inter link split, scaled by
/// the node's share of total degree. Natural logarithm; 0*ln(0) == 0.
inline CentralityScores community_based_mediator(const Graph& g,
                                                 const Partition& p,
                                                 const LinkCensus& census) {
  (void)p;
  const NodeId n = g.num_nodes();
  const double total_degree = 2.0 * static_cast<double>(g.num_edges());
  CentralityScores out{Measure::kCBM, std::vector<double>(n, 0.0), {}};
  for (NodeId v = 0; v < n; ++v) {
    const NodeId k = g.degree(v);
    if (k == 0) continue;
    const double rho_intra = static_cast<double>(census.intra_degree[v]) / k;
    const double rho_inter = static_cast<double>(census.inter_degree[v]) / k;
    double h = 0;
    if (rho_intra > 0) h -= rho_intra * std::log(rho_intra);
    if (rho_inter > 0) h -= rho_inter * std::log(rho_inter);
    out.values[v] = h * static_cast<double>(k) / total_degree;
  }
  return out;
}

/// Community Hub-Bridge: intra links weighted by own community size, inter
/// links weighted by the count of neighboring communities.
inline CentralityScores community_hub_bridge(const Graph& g, const Partition& p,
                                             const LinkCensus& census) {
  const NodeId n = g.num_nodes();
  CentralityScores out{Measure::kCHB, std::vector<double>(n, 0.0), {}};
  for (NodeId v = 0; v < n; ++v) {
    out.values[v] =
        static_cast<double>(p.sizes[p.of(v)]) * census.intra_degree[v] +
        static_cast<double>(census.neighbor_communities[v]) *
            census.inter_degree[v];
  }
  return out;
}

/// Modularity Vitality: change of modularity caused by removing the node (its
/// edges and its community membership). Computed incrementally from the
/// community link/degree tallies; identical to full recomputation.
/// `absolute` (default) takes |ΔM|; the signed variant reports M(G_v) - M(G).
/// If removing a node empties the edge set, M(G_v) is defined as 0 and the
/// node is appended to `emptied` when provided.
inline CentralityScores modularity_vitality(const Graph& g, const Partition& p,
                                            bool absolute = true,
                                            std::vector<NodeId>* emptied = nullptr) {
  const NodeId n = g.num_nodes();
  const std::size_t m = g.num_edges();
  if (m == 0)
    throw std::runtime_error("modularity_vitality: undefined for empty edge set");

  std::vector<std::uint64_t> intra(p.n_communities, 0), deg(p.n_communities, 0);
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (p.of(u) == p.of(v)) ++intra[p.of(u)];
  });
  for (NodeId v = 0; v < n; ++v) deg[p.of(v)] += g.degree(v);

  // M = L/m - S/(4m^2) with L = total intra edges, S = sum of squared
  // community degrees. Removing v touches only the communities it links to,
  // so L and S are patched per node in O(deg(v)) community terms.
  std::uint64_t total_intra = 0, sum_deg_sq = 0;
  for (CommunityId c = 0; c < p.n_communities; ++c) {
    total_intra += intra[c];
    sum_deg_sq += deg[c] * deg[c];
  }
  const double base =
      static_cast<double>(total_intra) / static_cast<double>(m) -
      static_cast<double>(sum_deg_sq) /
          (4.0 * static_cast<double>(m) * static_cast<double>(m));

  const LinkCensus census = link_census(g, p);
  CentralityScores out{Measure::kMV, std::vector<double>(n, 0.0), {}};
  for (NodeId v = 0; v < n; ++v) {
    const NodeId k = g.degree(v);
    const CommunityId own = p.of(v);
    const std::size_t m_after = m - k;
    double q_after = 0;
    if (m_after == 0) {
      if (emptied) emptied->push_back(v);
    } else {
      // Own community loses v's degree plus one degree per intra neighbor;
      // a foreign community c loses one degree per link from v into c.
      std::uint64_t s = sum_deg_sq;
      for (const auto& [c, kc] : census.counts(v)) {
        std::uint64_t before = deg[c];
        std::uint64_t after = before - kc - (c == own ? k : 0);
        s -= before * before;
        s += after * after;
      }
      if (census.intra_degree[v] == 0 && k > 0) {
        // No intra links: the own-community term still loses v's degree.
        std::uint64_t before = deg[own];
        std::uint64_t after = before - k;
        s -= before * before;
        s += after * after;
      }
      const std::uint64_t l_after = total_intra - census.intra_degree[v];
      const double md = static_cast<double>(m_after);
      q_after = static_cast<double>(l_after) / md -
                static_cast<double>(s) / (4.0 * md * md);
    }
    const double delta = q_after - base;
    out.values[v] = absolute ? std::abs(delta) : delta;
  }
  return out;
}

/// Participation Coefficient: 1 minus the sum of squared per-community link
/// shares. Degree-0 nodes score 0.
inline CentralityScores participation_coefficient(const Graph& g,
                                                  const Partition& p,
                                                  const LinkCensus& census) {
  (void)p;
  const NodeId n = g.num_nodes();
  CentralityScores out{Measure::kPC, std::vector<double>(n, 0.0), {}};
  for (NodeId v = 0; v < n; ++v) {
    const NodeId k = g.degree(v);
    if (k == 0) continue;
    double s = 0;
    for (const auto& [c, kc] : census.counts(v)) {
      const double share = static_cast<double>(kc) / k;
      s += share * share;
    }
    out.values[v] = 1.0 - s;
  }
  return out;
}

/// K-shell with Community: shell indices of the intra-only and inter-only
/// subgraphs blended by delta in [0, 1].
inline CentralityScores kshell_with_community(const Graph& g, const Partition& p,
                                              double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("kshell_with_community: delta must be in [0, 1]");
  const NodeId n = g.num_nodes();
  std::vector<std::pair<NodeId, NodeId>> intra_edges, inter_edges;
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (p.of(u) == p.of(v))
      intra_edges.emplace_back(u, v);
    else
      inter_edges.emplace_back(u, v);
  });
  const auto shell_intra =
      k_core_decomposition(Graph::from_edges(n, std::move(intra_edges)));
  const auto shell_inter =
      k_core_decomposition(Graph::from_edges(n, std::move(inter_edges)));
  CentralityScores out{Measure::kKSC, std::vector<double>(n, 0.0), {}};
  out.params.ksc_delta = delta;
  for (NodeId v = 0; v < n; ++v)
    out.values[v] = delta * shell_intra[v] + (1.0 - delta) * shell_inter[v];
  return out;
}

/// Dispatcher used by the harness; MV uses the absolute-value convention.
inline CentralityScores compute_centrality(Measure m, const Graph& g,
                                           const Partition& p,
                                           const LinkCensus& census,
                                           const MeasureParams& params = {}) {
  switch (m) {
    case Measure::kComm: return comm_centrality(g, p, census, params.comm_r);
    case Measure::kCBC:  return community_based_centrality(g, p, census);
    case Measure::kCBM:  return community_based_mediator(g, p, census);
    case Measure::kCHB:  return community_hub_bridge(g, p, census);
    case Measure::kMV:   return modularity_vitality(g, p);
    case Measure::kPC:   return participation_coefficient(g, p, census);
    case Measure::kKSC:  return kshell_with_community(g, p, params.ksc_delta);
  }
  throw std::invalid_argument("compute_centrality: unknown measure");
}

}  // namespace ltrank
