#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ltrank/partition.hpp"
#include "oracles.hpp"

using namespace ltrank;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

LabelMap abc_labels() {
  LabelMap lm;
  lm.add("a");
  lm.add("b");
  lm.add("c");
  return lm;
}

Graph path4() { return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}); }

Partition halves4() {
  return Partition::from_assignment(std::vector<CommunityId>{0, 0, 1, 1});
}

}  // namespace

TEST_CASE("partition file loading") {
  LabelMap lm = abc_labels();
  SECTION("direct read") {
    std::istringstream in("a 0\nb 0\nc 1\n");
    Partition p = load_partition(in, lm);
    CHECK(p.n_communities == 2);
    CHECK(p.sizes == std::vector<std::uint32_t>{2, 1});
  }
  SECTION("one community") {
    std::istringstream in("a x\nb x\nc x\n");
    Partition p = load_partition(in, lm);
    CHECK(p.n_communities == 1);
  }
  SECTION("tokens renumber densely in first-appearance order") {
    std::istringstream in("a x\nb y\nc x\n");
    Partition p = load_partition(in, lm);
    CHECK(p.community == std::vector<CommunityId>{0, 1, 0});
  }
  SECTION("unknown label") {
    std::istringstream in("a 0\nq 0\nb 0\nc 0\n");
    CHECK_THROWS_WITH(load_partition(in, lm), ContainsSubstring("unknown"));
  }
  SECTION("missing labels are listed") {
    std::istringstream in("a 0\n");
    CHECK_THROWS_WITH(load_partition(in, lm),
                      ContainsSubstring("missing 2 node(s): b c"));
  }
  SECTION("duplicate assignment") {
    std::istringstream in("a 0\na 1\nb 0\nc 0\n");
    CHECK_THROWS_WITH(load_partition(in, lm), ContainsSubstring("duplicate"));
  }
}

TEST_CASE("label propagation fallback detector") {
  SECTION("two triangles joined by an edge split apart") {
    Graph g = Graph::from_edges(
        6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
    Partition p = detect_label_propagation(g, 3);
    CHECK(p.community.size() == 6);
    std::uint32_t total = 0;
    for (auto s : p.sizes) {
      CHECK(s > 0);
      total += s;
    }
    CHECK(total == 6);
    CHECK(modularity(g, p) > 0.0);
  }
  SECTION("complete graph collapses to one community") {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < 5; ++u)
      for (NodeId v = u + 1; v < 5; ++v) edges.emplace_back(u, v);
    Partition p = detect_label_propagation(Graph::from_edges(5, edges), 1);
    CHECK(p.n_communities == 1);
  }
  SECTION("deterministic given the seed; valid on random graphs") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Graph g = oracle::random_connected_graph(
          4 + static_cast<NodeId>(rng.next_below(40)), 12, rng);
      Partition a = detect_label_propagation(g, 99);
      Partition b = detect_label_propagation(g, 99);
      CHECK(a.community == b.community);
      std::uint32_t total = 0;
      for (auto s : a.sizes) {
        CHECK(s > 0);
        total += s;
      }
      CHECK(total == g.num_nodes());
    }
  }
}

TEST_CASE("link census on the split path") {
  Graph g = path4();
  Partition p = halves4();
  LinkCensus c = link_census(g, p);
  CHECK(c.intra_degree[1] == 1);
  CHECK(c.inter_degree[1] == 1);
  CHECK(c.neighbor_communities[1] == 1);
  CHECK(c.intra_degree[0] == 1);
  CHECK(c.inter_degree[0] == 0);
  CHECK(c.neighbor_communities[0] == 0);
  CHECK_THAT(c.mixing[0], WithinAbs(0.25, 1e-15));  // (0/1 + 1/2) / 2
  CHECK(c.count_into(1, 0) == 1);
  CHECK(c.count_into(1, 1) == 1);
  CHECK(c.count_into(0, 1) == 0);
}

TEST_CASE("link census with a single community") {
  Graph g = path4();
  Partition p = Partition::from_assignment(std::vector<CommunityId>{0, 0, 0, 0});
  LinkCensus c = link_census(g, p);
  for (NodeId v = 0; v < 4; ++v) {
    CHECK(c.inter_degree[v] == 0);
    CHECK(c.intra_degree[v] == g.degree(v));
  }
  CHECK(c.mixing[0] == 0.0);
}

TEST_CASE("link census is consistent with direct counts on random pairs") {
  SplitMix64 rng(63);
  for (int trial = 0; trial < 500; ++trial) {
    const NodeId n = 2 + static_cast<NodeId>(rng.next_below(24));
    Graph g = oracle::random_graph(n, 0.2, rng);
    Partition p = oracle::random_partition(n, 5, rng);
    LinkCensus c = link_census(g, p);
    for (NodeId v = 0; v < n; ++v) {
      CHECK(c.intra_degree[v] == oracle::intra_links(g, v, p));
      CHECK(c.inter_degree[v] == oracle::inter_links(g, v, p));
      CHECK(c.intra_degree[v] + c.inter_degree[v] == g.degree(v));
      std::uint32_t sum = 0;
      for (const auto& [cc, k] : c.counts(v)) {
        CHECK(k == oracle::links_into(g, v, cc, p));
        sum += k;
      }
      CHECK(sum == g.degree(v));
      CHECK(c.count_into(v, p.of(v)) == c.intra_degree[v]);
    }
    for (CommunityId q = 0; q < p.n_communities; ++q) {
      CHECK(c.mixing[q] >= 0.0);
      CHECK(c.mixing[q] <= 1.0);
    }
  }
}

TEST_CASE("modularity") {
  Graph g = path4();
  SECTION("single community scores zero") {
    Partition p =
        Partition::from_assignment(std::vector<CommunityId>{0, 0, 0, 0});
    CHECK_THAT(modularity(g, p), WithinAbs(0.0, 1e-15));
  }
  SECTION("split path") {
    CHECK_THAT(modularity(g, halves4()), WithinAbs(1.0 / 6.0, 1e-12));
  }
  SECTION("singleton communities on a triangle") {
    Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    Partition p = Partition::from_assignment(std::vector<CommunityId>{0, 1, 2});
    CHECK_THAT(modularity(tri, p), WithinAbs(-1.0 / 3.0, 1e-12));
  }
  SECTION("empty edge set is an error") {
    Graph empty = Graph::from_edges(3, {});
    Partition p = Partition::from_assignment(std::vector<CommunityId>{0, 0, 0});
    CHECK_THROWS(modularity(empty, p));
  }
  SECTION("bounded and equal to the literal formula on random pairs") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
      const NodeId n = 3 + static_cast<NodeId>(rng.next_below(25));
      Graph rg = oracle::random_connected_graph(n, 8, rng);
      Partition p = oracle::random_partition(n, 6, rng);
      const double m = modularity(rg, p);
      CHECK_THAT(m, WithinAbs(oracle::modularity_literal(rg, p), 1e-12));
      CHECK(m >= -1.0);
      CHECK(m <= 1.0);
    }
  }
  SECTION("community edge and degree tallies add up") {
    SplitMix64 rng(73);
    Graph rg = oracle::random_connected_graph(30, 25, rng);
    Partition p = oracle::random_partition(30, 4, rng);
    std::size_t intra = 0, inter = 0;
    rg.for_each_edge([&](NodeId u, NodeId v) {
      (p.of(u) == p.of(v) ? intra : inter) += 1;
    });
    CHECK(intra + inter == rg.num_edges());
    std::vector<std::size_t> deg(p.n_communities, 0);
    for (NodeId v = 0; v < 30; ++v) deg[p.of(v)] += rg.degree(v);
    std::size_t total = 0;
    for (auto d : deg) total += d;
    CHECK(total == 2 * rg.num_edges());
  }
}

TEST_CASE("partition fingerprints identify assignments") {
  Partition a = halves4();
  Partition b = halves4();
  CHECK(partition_fingerprint(a) == partition_fingerprint(b));
  Partition c = Partition::from_assignment(std::vector<CommunityId>{0, 1, 0, 1});
  CHECK(partition_fingerprint(a) != partition_fingerprint(c));
  CHECK(fingerprint_hex(partition_fingerprint(a)).size() == 16);
}
