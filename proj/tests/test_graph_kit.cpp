#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "helpers.hpp"

namespace cfd {
namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ItemGraph random_graph(std::mt19937_64& rng, int m, int edge_percent) {
  std::vector<ItemGraph::Edge> e;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (static_cast<int>(rng() % 100) < edge_percent) e.emplace_back(a, b);
  return ItemGraph::unlabeled(m, e);
}

// Union-find connectivity of a vertex subset, independent of the library.
bool uf_connected(const ItemGraph& g, Mask s) {
  if (s == 0) return true;
  std::vector<int> parent(g.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges())
    if ((s >> a & 1) && (s >> b & 1)) parent[find(a)] = find(b);
  int root = -1;
  for (int v = 0; v < g.size(); ++v)
    if (s >> v & 1) {
      if (root < 0) root = find(v);
      if (find(v) != root) return false;
    }
  return true;
}

TEST(IsConnectedSet, PathExamples) {
  const auto g = ItemGraph::path(3);
  EXPECT_TRUE(is_connected_set(g, VertexSet{0, 1}));
  EXPECT_FALSE(is_connected_set(g, VertexSet{0, 2}));
  EXPECT_TRUE(is_connected_set(g, VertexSet{}));
}

TEST(Classify, Examples) {
  const auto c8 = classify(ItemGraph::cycle(8));
  EXPECT_TRUE(c8.is_cycle);
  EXPECT_FALSE(c8.is_tree);
  EXPECT_TRUE(c8.is_bipartite);
  const auto k13 = classify(ItemGraph::star(4));
  EXPECT_TRUE(k13.is_star && k13.is_tree);
  EXPECT_FALSE(k13.is_path);
  EXPECT_TRUE(classify(ItemGraph::path(5)).is_path);
  const auto one = classify(ItemGraph::path(1));
  EXPECT_TRUE(one.is_path && one.is_star && one.is_tree);
  const auto two = classify(ItemGraph::path(2));
  EXPECT_TRUE(two.is_path && two.is_star);
  EXPECT_FALSE(classify(ItemGraph::cycle(3)).is_bipartite);
  EXPECT_FALSE(classify(ItemGraph::unlabeled(3, {{0, 1}})).is_connected);
}

TEST(Classify, AgreesWithDefinitions) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 12);
    const auto g = random_graph(rng, m, 10 + static_cast<int>(rng() % 50));
    const auto c = classify(g);
    const int e = static_cast<int>(g.edges().size());
    std::vector<int> deg(m, 0);
    for (auto [a, b] : g.edges()) ++deg[a], ++deg[b];
    const int maxdeg = *std::max_element(deg.begin(), deg.end());
    const bool conn = uf_connected(g, g.all_mask());
    EXPECT_EQ(c.is_connected, conn);
    EXPECT_EQ(c.is_tree, conn && e == m - 1);
    EXPECT_EQ(c.is_path, conn && e == m - 1 && maxdeg <= 2);
    EXPECT_EQ(c.is_star, conn && e == m - 1 && (m <= 2 || maxdeg == m - 1));
    EXPECT_EQ(c.is_cycle, conn && e == m && std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; }));
    // Bipartite iff some 2-colouring works (brute force for small m).
    if (m <= 10) {
      bool two_colourable = false;
      for (Mask col = 0; col < (Mask{1} << m) && !two_colourable; ++col) {
        bool ok = true;
        for (auto [a, b] : g.edges()) ok = ok && ((col >> a & 1) != (col >> b & 1));
        two_colourable = ok;
      }
      EXPECT_EQ(c.is_bipartite, two_colourable);
    }
  }
}

TEST(PathOrder, StartsAtLowestEndpoint) {
  const auto g = ItemGraph::unlabeled(4, {{2, 0}, {0, 3}, {3, 1}});
  EXPECT_EQ(path_order(g), (std::vector<Vertex>{1, 3, 0, 2}));
  EXPECT_THROW(path_order(ItemGraph::star(4)), RoutingError);
}

TEST(StarCenter, Rules) {
  EXPECT_EQ(star_center(ItemGraph::unlabeled(4, {{2, 0}, {2, 1}, {2, 3}})), 2);
  EXPECT_EQ(star_center(ItemGraph::path(2)), 0);
  EXPECT_EQ(star_center(ItemGraph::path(1)), 0);
  EXPECT_THROW(star_center(ItemGraph::path(4)), RoutingError);
}

TEST(RootTree, Examples) {
  const auto t = root_tree(ItemGraph::path(3), 0);
  EXPECT_EQ(t.descendants[1], (VertexSet{1, 2}));
  EXPECT_EQ(t.postorder, (std::vector<Vertex>{2, 1, 0}));
  const auto single = root_tree(ItemGraph::path(1), 0);
  EXPECT_EQ(single.descendants[0], (VertexSet{0}));
  const auto star = root_tree(ItemGraph::star(4), 0);
  for (Vertex leaf = 1; leaf < 4; ++leaf) EXPECT_EQ(star.descendants[leaf], (VertexSet{leaf}));
  EXPECT_EQ(star.children[0], (std::vector<Vertex>{1, 2, 3}));
  EXPECT_THROW(root_tree(ItemGraph::cycle(4), 0), RoutingError);
}

TEST(RootTree, StructuralInvariants) {
  for (int seed = 0; seed < 30; ++seed) {
    const auto inst = gen_random(seed, GraphKind::tree, 2 + seed % 9, 1, 3);
    const auto& g = inst.graph();
    const Vertex root = seed % g.size();
    const auto t = root_tree(g, root);
    EXPECT_EQ(t.descendants[root].size(), static_cast<std::size_t>(g.size()));
    int child_total = 0;
    for (Vertex v = 0; v < g.size(); ++v) {
      child_total += static_cast<int>(t.children[v].size());
      EXPECT_TRUE(std::is_sorted(t.children[v].begin(), t.children[v].end()));
      for (Vertex c : t.children[v]) EXPECT_EQ(t.parent[c], v);
    }
    EXPECT_EQ(child_total, g.size() - 1);
    EXPECT_EQ(t.postorder.back(), root);
  }
}

TEST(ConnectedSets, Counts) {
  EXPECT_EQ(enumerate_connected_sets(ItemGraph::path(3)).size(), 6u);
  EXPECT_EQ(enumerate_connected_sets(ItemGraph::cycle(3)).size(), 7u);
  EXPECT_EQ(enumerate_connected_sets(ItemGraph::path(1)).size(), 1u);
  EXPECT_EQ(enumerate_connected_sets(ItemGraph::path(8)).size(), 36u);
}

TEST(ConnectedSets, MatchBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 10);
    const auto g = random_graph(rng, m, 15 + static_cast<int>(rng() % 60));
    std::set<Mask> got;
    for_each_connected_mask(g, [&](Mask s) {
      EXPECT_TRUE(got.insert(s).second) << "duplicate set";
      EXPECT_TRUE(is_connected_mask(g, s));
      return true;
    });
    std::set<Mask> want;
    for (Mask s = 1; s < (Mask{1} << m); ++s)
      if (uf_connected(g, s)) want.insert(s);
    EXPECT_EQ(got, want);
  }
}

TEST(ConnectedPartitions, TreeCountsAreBinomial) {
  for (int seed = 0; seed < 20; ++seed) {
    const int m = 1 + seed % 9;
    const auto inst = gen_random(seed, GraphKind::tree, m, 1, 3);
    for (int k = 1; k <= m; ++k)
      EXPECT_EQ(static_cast<long>(enumerate_connected_partitions(inst.graph(), k).size()), binom(m - 1, k - 1))
          << "m=" << m << " k=" << k;
    EXPECT_TRUE(enumerate_connected_partitions(inst.graph(), m + 1).empty());
  }
}

TEST(ConnectedPartitions, CycleEightPairs) {
  const auto parts = enumerate_connected_partitions(ItemGraph::cycle(8), 4);
  std::vector<std::vector<VertexSet>> pairs;
  for (const auto& p : parts)
    if (std::all_of(p.begin(), p.end(), [](const VertexSet& s) { return s.size() == 2; })) pairs.push_back(p);
  ASSERT_EQ(pairs.size(), 2u);
  const std::vector<VertexSet> p1{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  const std::vector<VertexSet> p2{{0, 7}, {1, 2}, {3, 4}, {5, 6}};
  EXPECT_TRUE((pairs[0] == p1 && pairs[1] == p2) || (pairs[0] == p2 && pairs[1] == p1));
  // A cycle of m splits into k arcs in C(m, k) ways.
  EXPECT_EQ(static_cast<long>(parts.size()), binom(8, 4));
}

TEST(ConnectedPartitions, WholeGraphForOnePart) {
  const auto parts = enumerate_connected_partitions(ItemGraph::cycle(5), 1);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0][0], (VertexSet{0, 1, 2, 3, 4}));
}

TEST(ConnectedPartitions, MatchBruteForceOnGeneralGraphs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 7);
    const auto g = random_graph(rng, m, 30 + static_cast<int>(rng() % 60));
    for (int k = 1; k <= m; ++k) {
      std::set<std::vector<Mask>> got;
      for_each_connected_partition(g, k, [&](std::span<const Mask> ps) {
        std::vector<Mask> v(ps.begin(), ps.end());
        for (std::size_t i = 1; i < v.size(); ++i)
          EXPECT_LT(std::countr_zero(v[i - 1]), std::countr_zero(v[i])) << "parts not ordered by smallest vertex";
        EXPECT_TRUE(got.insert(v).second);
        return true;
      });
      // Brute force: restricted-growth labelings of the vertices.
      std::set<std::vector<Mask>> want;
      std::vector<int> label(m, 0);
      auto rec = [&](auto&& self, int v, int used) -> void {
        if (v == m) {
          if (used != k) return;
          std::vector<Mask> ps(k, 0);
          for (int u = 0; u < m; ++u) ps[label[u]] |= bit(u);
          for (Mask p : ps)
            if (!uf_connected(g, p)) return;
          want.insert(ps);
          return;
        }
        for (int l = 0; l <= std::min(used, k - 1); ++l) {
          label[v] = l;
          self(self, v + 1, std::max(used, l + 1));
        }
      };
      rec(rec, 0, 0);
      EXPECT_EQ(got, want) << "m=" << m << " k=" << k;
    }
  }
}

TEST(InducedSubgraph, KeepsLabelsAndEdges) {
  const auto g = ItemGraph::cycle(5);
  const VertexSet keep{0, 1, 3, 4};
  const auto sub = induced_subgraph(g, keep);
  EXPECT_EQ(sub.graph.size(), 4);
  EXPECT_EQ(sub.graph.labels(), (std::vector<std::string>{"v1", "v2", "v4", "v5"}));
  EXPECT_EQ(sub.graph.edges().size(), 3u);
  EXPECT_TRUE(classify(sub.graph).is_path);
}

}  // namespace
}  // namespace cfd
