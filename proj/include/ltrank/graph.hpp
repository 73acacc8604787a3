#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ltrank {

using NodeId = std::uint32_t;

/// Immutable undirected simple graph with dense node indexing.
/// Adjacency is stored CSR-style with per-node sorted neighbor runs.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds a graph from an edge list. Self-loops are dropped and duplicate
  /// edges collapsed; both endpoint orders are accepted.
  static Graph from_edges(NodeId n_nodes,
                          std::vector<std::pair<NodeId, NodeId>> edges) {
    for (auto& [a, b] : edges) {
      if (a >= n_nodes || b >= n_nodes)
        throw std::invalid_argument("edge endpoint out of range");
      if (a > b) std::swap(a, b);
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_edges_ = edges.size();
    std::vector<std::size_t> deg(n_nodes, 0);
    for (const auto& [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    g.offsets_.assign(n_nodes + 1, 0);
    for (NodeId v = 0; v < n_nodes; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
      g.adj_[cursor[a]++] = b;
      g.adj_[cursor[b]++] = a;
    }
    for (NodeId v = 0; v < n_nodes; ++v)
      std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
    return g;
  }

  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::size_t num_edges() const { return n_edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  NodeId degree(NodeId v) const {
    return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }

  bool has_edge(NodeId u, NodeId v) const {
    auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  /// Visits each edge once with u < v.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < num_nodes(); ++u)
      for (NodeId v : neighbors(u))
        if (v > u) f(u, v);
  }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;  // size n+1
  std::vector<NodeId> adj_;           // size 2|E|, sorted per node
  std::size_t n_edges_ = 0;
};

/// Bijective original-label <-> dense-index map.
struct LabelMap {
  std::vector<std::string> labels;  // index -> label
  std::unordered_map<std::string, NodeId> index;

  NodeId add(const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    NodeId id = static_cast<NodeId>(labels.size());
    labels.push_back(label);
    index.emplace(label, id);
    return id;
  }

  std::optional<NodeId> find(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  const std::string& label_of(NodeId v) const { return labels[v]; }
  std::size_t size() const { return labels.size(); }
};

struct LoadedGraph {
  Graph graph;
  LabelMap labels;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  bool weight_column_seen = false;  // third column present and ignored
};

/// Parses a line-oriented edge list: two whitespace- or comma-separated node
/// labels per line, `#` comment lines ignored. An optional third (weight)
/// column is ignored and flagged. Anything else is a parse error.
inline LoadedGraph load_edge_list(std::istream& in) {
  LoadedGraph out;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::string a, b, extra, junk;
    if (!(ss >> a)) continue;     // blank line
    if (a[0] == '#') continue;    // comment
    if (!(ss >> b))
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": expected two node labels");
    if (ss >> extra) {
      if (ss >> junk)
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": too many fields");
      out.weight_column_seen = true;
    }
    NodeId u = out.labels.add(a);
    NodeId v = out.labels.add(b);
    if (u == v) {
      ++out.self_loops_dropped;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (out.labels.size() == 0)
    throw std::runtime_error("edge list is empty");
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  out.duplicates_dropped = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  out.graph = Graph::from_edges(static_cast<NodeId>(out.labels.size()),
                                std::move(edges));
  return out;
}

/// Component id per node plus the component count.
inline std::pair<std::vector<NodeId>, NodeId> connected_components(const Graph& g) {
  const NodeId n = g.num_nodes();
  std::vector<NodeId> comp(n, n);
  NodeId count = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(u)) {
        if (comp[w] == n) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

struct LccResult {
  Graph graph;
  std::vector<NodeId> kept;  // kept[new index] = original index, ascending
};

/// Induced subgraph on the largest connected component, densely re-indexed in
/// original index order. Equal-size components tie-break on the smallest
/// contained original index (the component discovered first).
inline LccResult largest_connected_component_with_map(const Graph& g) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::runtime_error("largest_connected_component: empty graph");
  auto [comp, count] = connected_components(g);
  std::vector<std::size_t> size(count, 0);
  for (NodeId v = 0; v < n; ++v) ++size[comp[v]];
  NodeId best = 0;
  for (NodeId c = 1; c < count; ++c)
    if (size[c] > size[best]) best = c;  // strict: first max has smallest index

  LccResult out;
  std::vector<NodeId> remap(n, n);
  for (NodeId v = 0; v < n; ++v) {
    if (comp[v] == best) {
      remap[v] = static_cast<NodeId>(out.kept.size());
      out.kept.push_back(v);
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (comp[u] == best) edges.emplace_back(remap[u], remap[v]);
  });
  out.graph = Graph::from_edges(static_cast<NodeId>(out.kept.size()), std::move(edges));
  return out;
}

inline Graph largest_connected_component(const Graph& g) {
  return largest_connected_component_with_map(g).graph;
}

/// Restricts a label map to the kept nodes of an induced subgraph.
inline LabelMap restrict_labels(const LabelMap& labels, std::span<const NodeId> kept) {
  LabelMap out;
  for (NodeId old : kept) out.add(labels.label_of(old));
  return out;
}

}  // namespace ltrank
