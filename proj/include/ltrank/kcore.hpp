#pragma once

#include <cstdint>
#include <vector>

#include "ltrank/graph.hpp"

namespace ltrank {

/// Shell index (core number) per node via Batagelj-Zaversnik bucket peeling.
/// shell(v) is the deepest level s at which v survives iterative removal of
/// all nodes with degree <= s. Isolated nodes get shell 0. Works on
/// disconnected graphs.
inline std::vector<std::uint32_t> k_core_decomposition(const Graph& g) {
  const NodeId n = g.num_nodes();
  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }

  // Counting sort of nodes by degree.
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (NodeId v = 0; v < n; ++v) ++bin[deg[v] + 1];
  for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
  std::vector<NodeId> vert(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> cursor(bin.begin(), bin.end() - 1);
    for (NodeId v = 0; v < n; ++v) {
      pos[v] = cursor[deg[v]]++;
      vert[pos[v]] = v;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = vert[i];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        // Move u to the front of its degree bucket, then shrink its degree.
        std::size_t pu = pos[u];
        std::size_t pw = bin[deg[u]];
        NodeId w = vert[pw];
        if (u != w) {
          std::swap(vert[pu], vert[pw]);
          pos[u] = pw;
          pos[w] = pu;
        }
        ++bin[deg[u]];
        --deg[u];
      }
    }
  }
  return deg;  // residual degree at removal time == shell index
}

}  // namespace ltrank
