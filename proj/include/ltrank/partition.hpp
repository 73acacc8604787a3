#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltrank/graph.hpp"
#include "ltrank/rng.hpp"

namespace ltrank {

using CommunityId = std::uint32_t;

/// Total assignment of nodes to densely numbered, nonempty communities.
struct Partition {
  std::vector<CommunityId> community;  // size N
  CommunityId n_communities = 0;
  std::vector<std::uint32_t> sizes;    // per community, sums to N

  /// Renumbers an arbitrary assignment densely, in order of first appearance
  /// by node index.
  static Partition from_assignment(std::span<const CommunityId> raw) {
    Partition p;
    p.community.resize(raw.size());
    std::vector<std::int64_t> remap;
    for (std::size_t v = 0; v < raw.size(); ++v) {
      CommunityId c = raw[v];
      if (c >= remap.size()) remap.resize(c + 1, -1);
      if (remap[c] < 0) {
        remap[c] = p.n_communities++;
        p.sizes.push_back(0);
      }
      p.community[v] = static_cast<CommunityId>(remap[c]);
      ++p.sizes[p.community[v]];
    }
    return p;
  }

  CommunityId of(NodeId v) const { return community[v]; }
};

/// Reads `label<whitespace>community_token` lines (# comments allowed).
/// Communities are renumbered densely in file first-appearance order. Every
/// known label must appear exactly once.
inline Partition load_partition(std::istream& in, const LabelMap& labels) {
  const std::size_t n = labels.size();
  constexpr CommunityId kUnset = static_cast<CommunityId>(-1);
  Partition p;
  p.community.assign(n, kUnset);
  std::unordered_map<std::string, CommunityId> token_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string label, token, junk;
    if (!(ss >> label)) continue;
    if (label[0] == '#') continue;
    if (!(ss >> token) || (ss >> junk))
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": expected `label community`");
    auto id = labels.find(label);
    if (!id)
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": unknown node label '" + label + "'");
    if (p.community[*id] != kUnset)
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": duplicate assignment for '" + label + "'");
    auto [it, fresh] = token_ids.emplace(token, p.n_communities);
    if (fresh) {
      ++p.n_communities;
      p.sizes.push_back(0);
    }
    p.community[*id] = it->second;
    ++p.sizes[it->second];
  }
  std::vector<std::string> missing;
  for (NodeId v = 0; v < n; ++v)
    if (p.community[v] == kUnset) missing.push_back(labels.label_of(v));
  if (!missing.empty()) {
    std::string msg = "partition is missing " + std::to_string(missing.size()) +
                      " node(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i)
      msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw std::runtime_error(msg);
  }
  return p;
}

/// Fallback community detector: asynchronous label propagation. Nodes are
/// visited in a freshly seeded-shuffled order each sweep; a node adopts the
/// plurality label among its neighbors, ties broken by smallest label. Stops
/// when a sweep changes nothing or after 100 sweeps. Deterministic given the
/// seed. Not a substitute for flow-based detectors; adequate for smoke use.
inline Partition detect_label_propagation(const Graph& g, std::uint64_t seed) {
  const NodeId n = g.num_nodes();
  std::vector<CommunityId> label(n);
  std::iota(label.begin(), label.end(), 0);
  SplitMix64 rng(mix_seed({0x1abe1u, seed}));
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::uint32_t> count(n, 0);
  std::vector<CommunityId> touched;
  for (int sweep = 0; sweep < 100; ++sweep) {
    shuffle(order, rng);
    bool changed = false;
    for (NodeId v : order) {
      if (g.degree(v) == 0) continue;
      touched.clear();
      for (NodeId w : g.neighbors(v)) {
        CommunityId c = label[w];
        if (count[c]++ == 0) touched.push_back(c);
      }
      CommunityId best = label[v];
      std::uint32_t best_count = 0;
      for (CommunityId c : touched) {
        if (count[c] > best_count || (count[c] == best_count && c < best)) {
          best = c;
          best_count = count[c];
        }
      }
      for (CommunityId c : touched) count[c] = 0;
      if (best != label[v]) {
        label[v] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return Partition::from_assignment(label);
}

/// Per-node decomposition of degree by community, plus per-community mixing.
struct LinkCensus {
  std::vector<std::uint32_t> intra_degree;          // k_i into own community
  std::vector<std::uint32_t> inter_degree;          // k_i - intra
  std::vector<std::uint32_t> neighbor_communities;  // distinct foreign communities
  std::vector<double> mixing;                       // per community, in [0,1]

  // Per-node (community, count) runs, sorted by community id.
  std::vector<std::size_t> offsets;
  std::vector<std::pair<CommunityId, std::uint32_t>> entries;

  std::span<const std::pair<CommunityId, std::uint32_t>> counts(NodeId v) const {
    return {entries.data() + offsets[v], entries.data() + offsets[v + 1]};
  }

  std::uint32_t count_into(NodeId v, CommunityId c) const {
    for (const auto& [cc, k] : counts(v))
      if (cc == c) return k;
    return 0;
  }
};

/// Counts every node's links by target community. The mixing term for a
/// degree-0 node is 0.
inline LinkCensus link_census(const Graph& g, const Partition& p) {
  const NodeId n = g.num_nodes();
  if (p.community.size() != n)
    throw std::invalid_argument("link_census: partition does not cover graph");
  LinkCensus cs;
  cs.intra_degree.assign(n, 0);
  cs.inter_degree.assign(n, 0);
  cs.neighbor_communities.assign(n, 0);
  cs.offsets.assign(n + 1, 0);

  std::vector<std::uint32_t> count(p.n_communities, 0);
  std::vector<CommunityId> touched;
  for (NodeId v = 0; v < n; ++v) {
    touched.clear();
    for (NodeId w : g.neighbors(v)) {
      CommunityId c = p.of(w);
      if (count[c]++ == 0) touched.push_back(c);
    }
    std::sort(touched.begin(), touched.end());
    const CommunityId own = p.of(v);
    for (CommunityId c : touched) {
      cs.entries.emplace_back(c, count[c]);
      if (c == own)
        cs.intra_degree[v] = count[c];
      else
        ++cs.neighbor_communities[v];
      count[c] = 0;
    }
    cs.inter_degree[v] = g.degree(v) - cs.intra_degree[v];
    cs.offsets[v + 1] = cs.entries.size();
  }

  cs.mixing.assign(p.n_communities, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId k = g.degree(v);
    if (k > 0)
      cs.mixing[p.of(v)] += static_cast<double>(cs.inter_degree[v]) / k;
  }
  for (CommunityId c = 0; c < p.n_communities; ++c)
    cs.mixing[c] /= static_cast<double>(p.sizes[c]);
  return cs;
}

/// Newman-Girvan modularity: sum over communities of l_q/m - (d_q/2m)^2.
inline double modularity(const Graph& g, const Partition& p) {
  const std::size_t m = g.num_edges();
  if (m == 0) throw std::runtime_error("modularity: undefined for empty edge set");
  std::vector<std::uint64_t> intra(p.n_communities, 0), deg(p.n_communities, 0);
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (p.of(u) == p.of(v)) ++intra[p.of(u)];
  });
  for (NodeId v = 0; v < g.num_nodes(); ++v) deg[p.of(v)] += g.degree(v);
  double q = 0;
  const double md = static_cast<double>(m);
  for (CommunityId c = 0; c < p.n_communities; ++c) {
    const double frac = static_cast<double>(deg[c]) / (2.0 * md);
    q += static_cast<double>(intra[c]) / md - frac * frac;
  }
  return q;
}

/// Stable 64-bit partition identity: FNV-1a over the byte stream of
/// (node index, community id) pairs, both as little-endian uint32, in node
/// index order. Comparable across runs and platforms.
inline std::uint64_t partition_fingerprint(const Partition& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint32_t x) {
    for (int b = 0; b < 4; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (std::uint32_t v = 0; v < p.community.size(); ++v) {
    feed(v);
    feed(p.community[v]);
  }
  return h;
}

inline std::string fingerprint_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace ltrank
