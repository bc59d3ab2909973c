// Instances built from the hardness reductions, the 8-cycle fixture without
// an MMS allocation, and seeded random instances.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/model.hpp"
#include "cfd/rational.hpp"

namespace cfd {

/// Elements are 0..3s-1; each triple lists three distinct elements.
struct X3cInstance {
  int s = 0;
  std::vector<std::array<int, 3>> triples;
};

struct PartitionInstance {
  std::vector<int> values;
  int half_sum = 0;
};

struct IndepSetInstance {
  ItemGraph graph;
  int k = 0;
};

/// Path of all small vertices (three per triple, in triple order), then the
/// big vertices b1..bs, then w. Agents: one per triple, one per element, and d.
inline Instance gen_x3c_prop_path(const X3cInstance& x3c) {
  const int s = x3c.s;
  const int r = static_cast<int>(x3c.triples.size());
  if (s < 1) throw InputError("X3C: s must be positive");
  std::set<std::array<int, 3>> seen;
  std::vector<int> freq(3 * s, 0);
  for (auto t : x3c.triples) {
    for (int x : t)
      if (x < 0 || x >= 3 * s) throw InputError("X3C: element out of range");
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) throw InputError("X3C: triple repeats an element");
    std::sort(t.begin(), t.end());
    if (!seen.insert(t).second) throw InputError("X3C: repeated triple");
    for (int x : t) ++freq[x];
  }
  const int n = 3 * s + r + 1;
  for (int x = 0; x < 3 * s; ++x)
    if (n - 3 * freq[x] < 0) throw InputError("X3C: element frequency too high for this construction");

  std::vector<std::string> labels;
  for (int t = 1; t <= r; ++t)
    for (int k = 1; k <= 3; ++k) labels.push_back("t" + std::to_string(t) + "_" + std::to_string(k));
  for (int b = 1; b <= s; ++b) labels.push_back("b" + std::to_string(b));
  labels.push_back("w");
  const int m = static_cast<int>(labels.size());
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int v = 0; v + 1 < m; ++v) edges.emplace_back(v, v + 1);
  ItemGraph g(labels, edges);
  const Vertex w = m - 1;
  auto small = [](int t, int k) { return 3 * t + k; };
  auto big = [&](int b) { return 3 * r + b; };

  std::vector<AgentSpec> agents;
  for (int t = 0; t < r; ++t) {
    AgentSpec a{"iT" + std::to_string(t + 1), std::vector<Rational>(m)};
    for (int k = 0; k < 3; ++k) a.utilities[small(t, k)] = Rational(1, 3 * n);
    for (int b = 0; b < s; ++b) a.utilities[big(b)] = Rational(1, n);
    a.utilities[w] = Rational(n - s - 1, n);
    agents.push_back(std::move(a));
  }
  for (int x = 0; x < 3 * s; ++x) {
    AgentSpec a{"ix" + std::to_string(x + 1), std::vector<Rational>(m)};
    for (int t = 0; t < r; ++t)
      if (std::find(x3c.triples[t].begin(), x3c.triples[t].end(), x) != x3c.triples[t].end())
        for (int k = 0; k < 3; ++k) a.utilities[small(t, k)] = Rational(1, n);
    a.utilities[w] = Rational(n - 3 * freq[x], n);
    agents.push_back(std::move(a));
  }
  AgentSpec d{"d", std::vector<Rational>(m)};
  d.utilities[w] = Rational(1);
  agents.push_back(std::move(d));
  return Instance(std::move(g), std::move(agents));
}

/// Checks positivity and computes k; an odd total is an input error.
inline PartitionInstance make_partition(std::vector<int> values) {
  if (values.empty()) throw InputError("Partition: no values");
  int sum = 0;
  for (int a : values) {
    if (a <= 0) throw InputError("Partition: values must be positive");
    sum += a;
  }
  if (sum % 2 != 0) throw InputError("Partition: total " + std::to_string(sum) + " is odd");
  return {std::move(values), sum / 2};
}

/// Complete bipartite graph between v1..vh and {w1, w2}; two identical agents.
inline Instance gen_partition_bipartite(const PartitionInstance& p) {
  int sum = 0;
  for (int a : p.values) {
    if (a <= 0) throw InputError("Partition: values must be positive");
    sum += a;
  }
  if (p.values.empty() || sum != 2 * p.half_sum) throw InputError("Partition: values must sum to 2k");
  const int h = static_cast<int>(p.values.size());
  std::vector<std::string> labels;
  for (int i = 1; i <= h; ++i) labels.push_back("v" + std::to_string(i));
  labels.push_back("w1");
  labels.push_back("w2");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < h; ++i) {
    edges.emplace_back(i, h);
    edges.emplace_back(i, h + 1);
  }
  std::vector<Rational> u(h + 2);
  for (int i = 0; i < h; ++i) u[i] = Rational(p.values[i], 2 * p.half_sum);
  return Instance(ItemGraph(labels, edges), {{"p1", u}, {"p2", u}});
}

/// Star with center c and leaves: one per vertex of the source graph, one
/// per edge, and k dummies.
inline Instance gen_indepset_ef_star(const IndepSetInstance& is) {
  const ItemGraph& src = is.graph;
  const int nw = src.size();
  const auto& se = src.edges();
  const int nl = static_cast<int>(se.size());
  if (is.k < 1 || is.k > nw) throw InputError("Independent Set: need 1 <= k <= |W|");

  std::vector<std::string> labels{"c"};
  for (int v = 0; v < nw; ++v) labels.push_back("w_" + src.label(v));
  for (auto [a, b] : se) labels.push_back("l_" + src.label(a) + "_" + src.label(b));
  for (int j = 1; j <= is.k; ++j) labels.push_back("d" + std::to_string(j));
  const int m = static_cast<int>(labels.size());
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int v = 1; v < m; ++v) edges.emplace_back(0, v);
  auto item_w = [](int v) { return 1 + v; };
  auto item_l = [&](int e) { return 1 + nw + e; };
  auto item_d = [&](int j) { return 1 + nw + nl + j; };

  std::vector<AgentSpec> agents;
  for (int v = 0; v < nw; ++v) {
    AgentSpec a{"iw_" + src.label(v), std::vector<Rational>(m)};
    a.utilities[item_w(v)] = Rational(1, is.k + 1);
    for (int j = 0; j < is.k; ++j) a.utilities[item_d(j)] = Rational(1, is.k + 1);
    agents.push_back(std::move(a));
  }
  for (int e = 0; e < nl; ++e) {
    auto [x, y] = se[e];
    AgentSpec a{"il_" + src.label(x) + "_" + src.label(y), std::vector<Rational>(m)};
    a.utilities[item_l(e)] = Rational(3, 7);
    a.utilities[item_w(x)] = Rational(2, 7);
    a.utilities[item_w(y)] = Rational(2, 7);
    agents.push_back(std::move(a));
  }
  AgentSpec c{"ic", std::vector<Rational>(m)};
  c.utilities[0] = Rational(1);
  agents.push_back(std::move(c));
  return Instance(ItemGraph(labels, edges), std::move(agents));
}

/// The 8-cycle with four agents in two identical pairs and no MMS allocation.
inline Instance fixture_cycle8() {
  const std::array<int, 8> row12{1, 4, 4, 1, 3, 2, 2, 3};
  const std::array<int, 8> row34{4, 4, 1, 3, 2, 2, 3, 1};
  std::vector<std::string> labels;
  for (int i = 1; i <= 8; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < 8; ++i) edges.emplace_back(i, (i + 1) % 8);
  auto scaled = [](const std::array<int, 8>& row) {
    std::vector<Rational> u;
    for (int x : row) u.emplace_back(x, 20);
    return u;
  };
  return Instance(ItemGraph(labels, edges),
                  {{"a1", scaled(row12)}, {"a2", scaled(row12)}, {"a3", scaled(row34)}, {"a4", scaled(row34)}});
}

enum class GraphKind { path, star, tree, cycle, connected };

inline std::optional<GraphKind> parse_graph_kind(std::string_view s) {
  if (s == "path") return GraphKind::path;
  if (s == "star") return GraphKind::star;
  if (s == "tree") return GraphKind::tree;
  if (s == "cycle") return GraphKind::cycle;
  if (s == "connected") return GraphKind::connected;
  return std::nullopt;
}

namespace detail {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<std::pair<Vertex, Vertex>> random_edges(std::mt19937_64& rng, GraphKind kind, int m) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  switch (kind) {
    case GraphKind::path:
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int i = 0; i + 1 < m; ++i) edges.emplace_back(perm[i], perm[i + 1]);
      break;
    case GraphKind::cycle:
      if (m < 3) throw InputError("a cycle needs at least 3 vertices");
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int i = 0; i < m; ++i) edges.emplace_back(perm[i], perm[(i + 1) % m]);
      break;
    case GraphKind::star: {
      const Vertex c = uniform(rng, 0, m - 1);
      for (Vertex v = 0; v < m; ++v)
        if (v != c) edges.emplace_back(c, v);
      break;
    }
    case GraphKind::tree: {
      if (m == 2) edges.emplace_back(0, 1);
      if (m <= 2) break;
      // Decode a uniform Pruefer sequence.
      std::vector<int> seq(m - 2), degree(m, 1);
      for (int& x : seq) {
        x = uniform(rng, 0, m - 1);
        ++degree[x];
      }
      for (int x : seq)
        for (Vertex v = 0; v < m; ++v)
          if (degree[v] == 1) {
            edges.emplace_back(v, x);
            --degree[v];
            --degree[x];
            break;
          }
      Vertex a = -1;
      for (Vertex v = 0; v < m; ++v)
        if (degree[v] == 1) {
          if (a < 0)
            a = v;
          else
            edges.emplace_back(a, v);
        }
      break;
    }
    case GraphKind::connected:
      // Uniform over labeled connected graphs by rejection from G(m, 1/2).
      for (;;) {
        edges.clear();
        for (Vertex a = 0; a < m; ++a)
          for (Vertex b = a + 1; b < m; ++b)
            if (rng() & 1u) edges.emplace_back(a, b);
        if (classify(ItemGraph::unlabeled(m, edges)).is_connected) break;
      }
      break;
  }
  return edges;
}

}  // namespace detail

/// Seeded random instance. Each utility is numerator/denominator with the
/// numerator in [0, denom_bound] and the denominator in [1, denom_bound],
/// then the vector is normalized. With type_count > 0 agent i copies base
/// vector i % type_count.
inline Instance gen_random(std::uint64_t seed, GraphKind kind, int m, int n, int denom_bound, int type_count = 0) {
  if (m < 1 || n < 1 || denom_bound < 1) throw InputError("gen_random: m, n and denom_bound must be positive");
  if (type_count < 0 || type_count > n) throw InputError("gen_random: type_count must be in [0, n]");
  std::mt19937_64 rng(seed);
  auto edges = detail::random_edges(rng, kind, m);
  std::vector<std::string> labels;
  for (int v = 1; v <= m; ++v) labels.push_back("v" + std::to_string(v));

  auto draw = [&] {
    std::vector<Rational> u(m);
    for (;;) {
      bool positive = false;
      for (auto& x : u) {
        const int num = detail::uniform(rng, 0, denom_bound);
        const int den = detail::uniform(rng, 1, denom_bound);
        x = Rational(num, den);
        positive = positive || num > 0;
      }
      if (positive) break;
    }
    return u;
  };
  const int bases = type_count > 0 ? type_count : n;
  std::vector<std::vector<Rational>> base;
  for (int t = 0; t < bases; ++t) base.push_back(draw());
  std::vector<AgentSpec> agents;
  for (int i = 0; i < n; ++i) agents.push_back({"a" + std::to_string(i + 1), base[i % bases]});
  return Instance::normalized(ItemGraph(labels, edges), std::move(agents));
}

}  // namespace cfd
