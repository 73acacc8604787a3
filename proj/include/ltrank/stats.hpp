#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ltrank/graph.hpp"
#include "ltrank/parallel.hpp"

namespace ltrank {

/// Macroscopic topological summary of a connected graph.
struct NetworkStats {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double avg_degree = 0;    // 2|E|/N
  double avg_distance = 0;  // mean shortest-path length over unordered pairs
  double density = 0;       // 2|E|/(N(N-1))
  double transitivity = 0;  // 3 * triangles / connected triples
  double assortativity = 0; // Pearson correlation of endpoint degrees
};

namespace detail {

/// Sum of BFS distances from `source` to every other node. Throws if some node
/// is unreachable.
inline std::uint64_t bfs_distance_sum(const Graph& g, NodeId source,
                                      std::vector<NodeId>& dist,
                                      std::vector<NodeId>& queue) {
  const NodeId n = g.num_nodes();
  const NodeId unseen = n;
  dist.assign(n, unseen);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  std::uint64_t sum = 0;
  std::size_t head = 0;
  while (head < queue.size()) {
    NodeId u = queue[head++];
    sum += dist[u];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == unseen) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n)
    throw std::runtime_error("network_stats: graph is disconnected");
  return sum;
}

}  // namespace detail

/// Exhaustive statistics: average distance runs a BFS from every node,
/// O(N*|E|). `workers` parallelizes the per-source BFS; results are identical
/// for any worker count.
inline NetworkStats network_stats(const Graph& g, unsigned workers = 1) {
  const NodeId n = g.num_nodes();
  if (n < 2) throw std::runtime_error("network_stats: undefined for N < 2");

  NetworkStats s;
  s.n_nodes = n;
  s.n_edges = g.num_edges();
  s.avg_degree = 2.0 * static_cast<double>(s.n_edges) / static_cast<double>(n);
  s.density = 2.0 * static_cast<double>(s.n_edges) /
              (static_cast<double>(n) * static_cast<double>(n - 1));

  // Distances: per-source sums land in disjoint slots, reduced serially.
  std::vector<std::uint64_t> per_source(n, 0);
  parallel_for(n, workers, [&](std::size_t src) {
    thread_local std::vector<NodeId> dist, queue;
    per_source[src] =
        detail::bfs_distance_sum(g, static_cast<NodeId>(src), dist, queue);
  });
  std::uint64_t total = 0;
  for (std::uint64_t v : per_source) total += v;
  s.avg_distance = static_cast<double>(total) /
                   (static_cast<double>(n) * static_cast<double>(n - 1));

  // Transitivity: each triangle contributes one common neighbor per edge.
  std::uint64_t closed = 0;  // sum over edges of |N(u) ∩ N(v)| == 3*triangles
  g.for_each_edge([&](NodeId u, NodeId v) {
    auto a = g.neighbors(u);
    auto b = g.neighbors(v);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (a[i] > b[j]) ++j;
      else { ++closed; ++i; ++j; }
    }
  });
  std::uint64_t wedges = 0;
  for (NodeId v = 0; v < n; ++v) {
    std::uint64_t k = g.degree(v);
    wedges += k * (k - 1) / 2;
  }
  s.transitivity = wedges == 0 ? 0.0
                               : static_cast<double>(closed) /
                                     static_cast<double>(wedges);

  // Degree assortativity: Pearson correlation over directed endpoint pairs
  // (each edge counted in both orders, so the two marginals coincide).
  // Zero degree variance (regular graph) is reported as 0.
  std::uint64_t sum_x = 0, sum_x2 = 0, sum_xy = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    std::uint64_t ku = g.degree(u), kv = g.degree(v);
    sum_x += ku + kv;
    sum_x2 += ku * ku + kv * kv;
    sum_xy += 2 * ku * kv;
  });
  const double m = 2.0 * static_cast<double>(s.n_edges);
  const double num = m * static_cast<double>(sum_xy) -
                     static_cast<double>(sum_x) * static_cast<double>(sum_x);
  const double den = m * static_cast<double>(sum_x2) -
                     static_cast<double>(sum_x) * static_cast<double>(sum_x);
  s.assortativity = den == 0.0 ? 0.0 : num / den;
  return s;
}

}  // namespace ltrank
