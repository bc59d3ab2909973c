#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"

namespace cfd {
namespace {

using testing::q;

OracleBudget wide() {
  OracleBudget b;
  b.max_items = 12;
  b.max_agents = 10;
  return b;
}

TEST(GenX3c, SingleTriple) {
  const auto inst = gen_x3c_prop_path({1, {{0, 1, 2}}});
  EXPECT_EQ(inst.item_count(), 5);
  EXPECT_EQ(inst.agent_count(), 5);
  EXPECT_TRUE(classify(inst.graph()).is_path);
  const auto d = *inst.agent_index("d");
  const auto w = *inst.graph().index_of("w");
  EXPECT_EQ(inst.utility(d, w), q(1));
  // Every element agent values each small vertex of its triple at 1/n.
  const auto x1 = *inst.agent_index("ix1");
  EXPECT_EQ(inst.utility(x1, *inst.graph().index_of("t1_2")), q(1, 5));
  EXPECT_TRUE(oracle_prop(inst, wide()).decision);
}

TEST(GenX3c, UncoveredElementIsNo) {
  // Element 6 (index 5) is in no triple, so no exact cover exists.
  const auto inst = gen_x3c_prop_path({2, {{0, 1, 2}, {0, 3, 4}}});
  EXPECT_EQ(inst.item_count(), 9);
  EXPECT_EQ(inst.agent_count(), 9);
  EXPECT_FALSE(oracle_prop(inst, wide()).decision);
}

TEST(GenX3c, RejectsMalformedTriples) {
  EXPECT_THROW(gen_x3c_prop_path({1, {{0, 1, 3}}}), InputError);
  EXPECT_THROW(gen_x3c_prop_path({1, {{0, 0, 1}}}), InputError);
  EXPECT_THROW(gen_x3c_prop_path({1, {{0, 1, 2}, {2, 1, 0}}}), InputError);
  EXPECT_THROW(gen_x3c_prop_path({0, {}}), InputError);
}

TEST(GenPartition, Examples) {
  const auto yes = gen_partition_bipartite(make_partition({1, 1, 2}));
  EXPECT_EQ(yes.item_count(), 5);
  EXPECT_EQ(yes.agent_count(), 2);
  EXPECT_TRUE(classify(yes.graph()).is_bipartite);
  EXPECT_TRUE(oracle_prop(yes).decision);
  EXPECT_THROW(make_partition({1, 1, 1}), InputError);
  EXPECT_THROW(make_partition({2, 0}), InputError);
  EXPECT_FALSE(oracle_prop(gen_partition_bipartite(make_partition({3, 1}))).decision);
}

TEST(GenIndepSet, Examples) {
  const auto k2 = gen_indepset_ef_star({ItemGraph::path(2), 1});
  EXPECT_EQ(k2.item_count(), 5);
  EXPECT_EQ(k2.agent_count(), 4);
  EXPECT_EQ(star_center(k2.graph()), 0);
  EXPECT_TRUE(oracle_ef_complete(k2).decision);

  const auto k3 = gen_indepset_ef_star({ItemGraph::cycle(3), 2});
  EXPECT_EQ(k3.item_count(), 9);
  EXPECT_EQ(k3.agent_count(), 7);
  EXPECT_FALSE(oracle_ef_complete(k3, wide()).decision);
  EXPECT_THROW(gen_indepset_ef_star({ItemGraph::path(2), 3}), InputError);
}

TEST(FixtureCycle8, Shape) {
  const auto inst = fixture_cycle8();
  EXPECT_TRUE(classify(inst.graph()).is_cycle);
  EXPECT_EQ(inst.utility(0, 1), q(4, 20));
  EXPECT_EQ(inst.utility(2, 7), q(1, 20));
  EXPECT_EQ(compute_type_partition(inst).type_count, 2);
}

TEST(GenRandom, DeterministicAndWellFormed) {
  const GraphKind kinds[] = {GraphKind::path, GraphKind::star, GraphKind::tree, GraphKind::cycle,
                             GraphKind::connected};
  for (int seed = 0; seed < 60; ++seed) {
    const GraphKind kind = kinds[seed % 5];
    const int m = 3 + seed % 8;
    const int n = 1 + seed % 4;
    const int types = std::min(seed % 3, n);
    const auto a = gen_random(seed, kind, m, n, 9, types);
    const auto b = gen_random(seed, kind, m, n, 9, types);
    EXPECT_EQ(instance_to_json(a), instance_to_json(b));
    const auto c = classify(a.graph());
    EXPECT_TRUE(c.is_connected);
    switch (kind) {
      case GraphKind::path: EXPECT_TRUE(c.is_path); break;
      case GraphKind::star: EXPECT_TRUE(c.is_star); break;
      case GraphKind::tree: EXPECT_EQ(static_cast<int>(a.graph().edges().size()), m - 1); break;
      case GraphKind::cycle: EXPECT_TRUE(c.is_cycle); break;
      case GraphKind::connected: break;
    }
    for (int i = 0; i < n; ++i) {
      Rational sum;
      for (Vertex v = 0; v < m; ++v) sum += a.utility(i, v);
      EXPECT_EQ(sum, q(1));
    }
    if (types > 0) { EXPECT_LE(compute_type_partition(a).type_count, types); }
  }
}

TEST(GenRandom, PathOutputFeedsTypedSolver) {
  const auto inst = gen_random(42, GraphKind::path, 7, 3, 6, 2);
  EXPECT_NO_THROW(prop_path_typed(inst));
}

TEST(ParseGraphKind, Names) {
  EXPECT_EQ(parse_graph_kind("tree"), GraphKind::tree);
  EXPECT_EQ(parse_graph_kind("connected"), GraphKind::connected);
  EXPECT_FALSE(parse_graph_kind("grid"));
}

}  // namespace
}  // namespace cfd
