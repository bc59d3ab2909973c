// Item graphs and the graph services the solvers build on: connectivity,
// class recognition, rooted tree views, and brute-force enumeration of
// connected sets and connected partitions.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cfd/errors.hpp"

namespace cfd {

using Vertex = int;
/// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;
/// Bitmask over at most 64 vertices; used by the enumerators.
using Mask = std::uint64_t;

inline constexpr int kMaxMaskVertices = 64;

inline Mask bit(Vertex v) { return Mask{1} << v; }

inline Mask to_mask(std::span<const Vertex> s) {
  Mask m = 0;
  for (Vertex v : s) m |= bit(v);
  return m;
}

inline VertexSet from_mask(Mask m) {
  VertexSet out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

class ItemGraph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  ItemGraph(std::vector<std::string> labels, std::vector<Edge> edges) : labels_(std::move(labels)) {
    const int m = size();
    if (m < 1) throw InputError("item graph needs at least one vertex");
    for (int v = 0; v < m; ++v) {
      if (!index_.emplace(labels_[v], v).second)
        throw InputError("duplicate vertex label '" + labels_[v] + "'");
    }
    adj_.assign(m, {});
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= m || b >= m) throw InputError("edge endpoint out of range");
      if (a == b) throw InputError("self-loop on vertex '" + labels_[a] + "'");
      if (a > b) std::swap(a, b);
      edges_.emplace_back(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw InputError("duplicate edge");
    for (auto [a, b] : edges_) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto& n : adj_) std::sort(n.begin(), n.end());
    if (m <= kMaxMaskVertices) {
      nmask_.assign(m, 0);
      for (int v = 0; v < m; ++v) nmask_[v] = to_mask(adj_[v]);
    }
  }

  /// Graph with labels "v1".."vm".
  static ItemGraph unlabeled(int m, std::vector<Edge> edges) {
    std::vector<std::string> labels;
    for (int i = 1; i <= m; ++i) labels.push_back("v" + std::to_string(i));
    return ItemGraph(std::move(labels), std::move(edges));
  }
  static ItemGraph path(int m) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
    return unlabeled(m, std::move(e));
  }
  static ItemGraph cycle(int m) {
    auto g = path(m).edges_;
    g.emplace_back(0, m - 1);
    return unlabeled(m, std::move(g));
  }
  /// Star with center 0 and leaves 1..m-1.
  static ItemGraph star(int m) {
    std::vector<Edge> e;
    for (int i = 1; i < m; ++i) e.emplace_back(0, i);
    return unlabeled(m, std::move(e));
  }

  [[nodiscard]] int size() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(Vertex v) const { return labels_.at(v); }
  [[nodiscard]] std::optional<Vertex> index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  /// Edges with first < second, sorted.
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
  [[nodiscard]] bool has_edge(Vertex a, Vertex b) const {
    const auto& n = adj_.at(a);
    return std::binary_search(n.begin(), n.end(), b);
  }
  [[nodiscard]] bool fits_mask() const { return size() <= kMaxMaskVertices; }
  [[nodiscard]] Mask neighbor_mask(Vertex v) const { return nmask_.at(v); }
  [[nodiscard]] Mask all_mask() const {
    return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Mask> nmask_;
};

inline void require_mask_graph(const ItemGraph& g) {
  if (!g.fits_mask())
    throw BudgetExceeded("enumeration supports at most 64 vertices");
}

/// True iff the induced subgraph on `s` is connected; empty set counts as connected.
inline bool is_connected_set(const ItemGraph& g, std::span<const Vertex> s) {
  if (s.empty()) return true;
  std::vector<char> in(g.size(), 0), seen(g.size(), 0);
  for (Vertex v : s) {
    if (v < 0 || v >= g.size()) throw InputError("vertex index out of range");
    in[v] = 1;
  }
  std::vector<Vertex> stack{s.front()};
  seen[s.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex w : g.neighbors(v))
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::size_t distinct = std::count(in.begin(), in.end(), 1);
  return reached == distinct;
}

/// Mask variant; requires g.fits_mask().
inline bool is_connected_mask(const ItemGraph& g, Mask s) {
  if (s == 0) return true;
  Mask seen = s & (~s + 1);
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= g.neighbor_mask(std::countr_zero(f));
    next &= s & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == s;
}

struct GraphClass {
  bool is_path = false;
  bool is_star = false;
  bool is_tree = false;
  bool is_cycle = false;
  bool is_bipartite = false;
  bool is_connected = false;
};

inline GraphClass classify(const ItemGraph& g) {
  const int m = g.size();
  const int e = static_cast<int>(g.edges().size());
  GraphClass c;
  VertexSet all(m);
  std::iota(all.begin(), all.end(), 0);
  c.is_connected = is_connected_set(g, all);

  std::vector<int> color(m, -1);
  c.is_bipartite = true;
  for (int s = 0; s < m && c.is_bipartite; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty() && c.is_bipartite) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          c.is_bipartite = false;
        }
      }
    }
  }

  int max_deg = 0;
  bool all_deg2 = true;
  for (int v = 0; v < m; ++v) {
    max_deg = std::max(max_deg, g.degree(v));
    all_deg2 = all_deg2 && g.degree(v) == 2;
  }
  c.is_tree = c.is_connected && e == m - 1;
  c.is_path = c.is_tree && max_deg <= 2;
  c.is_star = c.is_tree && (m <= 2 || max_deg == m - 1);
  c.is_cycle = c.is_connected && e == m && all_deg2;
  return c;
}

/// Vertices of a path graph from its lowest-index endpoint to the other end.
inline std::vector<Vertex> path_order(const ItemGraph& g) {
  if (!classify(g).is_path) throw RoutingError("graph is not a path");
  const int m = g.size();
  Vertex start = 0;
  for (int v = 0; v < m; ++v)
    if (g.degree(v) <= 1) {
      start = v;
      break;
    }
  std::vector<Vertex> order{start};
  Vertex prev = -1, cur = start;
  while (static_cast<int>(order.size()) < m) {
    for (Vertex w : g.neighbors(cur))
      if (w != prev) {
        prev = cur;
        cur = w;
        break;
      }
    order.push_back(cur);
  }
  return order;
}

/// Center of a star: the unique maximum-degree vertex, lowest index when m <= 2.
inline Vertex star_center(const ItemGraph& g) {
  if (!classify(g).is_star) throw RoutingError("graph is not a star");
  if (g.size() <= 2) return 0;
  Vertex c = 0;
  for (int v = 1; v < g.size(); ++v)
    if (g.degree(v) > g.degree(c)) c = v;
  return c;
}

/// Rooted view of a tree. Children are listed in ascending vertex index.
struct RootedTreeView {
  Vertex root = 0;
  std::vector<Vertex> parent;                  // -1 at the root
  std::vector<std::vector<Vertex>> children;   // C(v)
  std::vector<VertexSet> descendants;          // D(v), includes v
  std::vector<Vertex> postorder;

  [[nodiscard]] bool is_leaf(Vertex v) const { return children[v].empty(); }
};

inline RootedTreeView root_tree(const ItemGraph& g, Vertex root) {
  if (!classify(g).is_tree) throw RoutingError("graph is not a tree");
  const int m = g.size();
  if (root < 0 || root >= m) throw InputError("root out of range");
  RootedTreeView t;
  t.root = root;
  t.parent.assign(m, -1);
  t.children.assign(m, {});
  t.descendants.assign(m, {});
  std::vector<Vertex> preorder;
  std::vector<Vertex> stack{root};
  std::vector<char> seen(m, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    preorder.push_back(v);
    for (Vertex w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        t.parent[w] = v;
        t.children[v].push_back(w);
      }
    for (auto it = t.children[v].rbegin(); it != t.children[v].rend(); ++it) stack.push_back(*it);
  }
  // Postorder with children visited in ascending order.
  std::vector<std::pair<Vertex, std::size_t>> st{{root, 0}};
  while (!st.empty()) {
    auto& [v, next] = st.back();
    if (next < t.children[v].size()) {
      Vertex c = t.children[v][next++];
      st.emplace_back(c, 0);
    } else {
      t.postorder.push_back(v);
      st.pop_back();
    }
  }
  for (Vertex v : t.postorder) {
    VertexSet d{v};
    for (Vertex c : t.children[v]) d.insert(d.end(), t.descendants[c].begin(), t.descendants[c].end());
    std::sort(d.begin(), d.end());
    t.descendants[v] = std::move(d);
  }
  return t;
}

/// Subgraph induced on `keep` (sorted), relabelled 0..|keep|-1 in ascending
/// order; `original[i]` is the vertex of `g` that became vertex i.
struct InducedSubgraph {
  ItemGraph graph;
  std::vector<Vertex> original;
};

inline InducedSubgraph induced_subgraph(const ItemGraph& g, std::span<const Vertex> keep) {
  std::vector<int> pos(g.size(), -1);
  std::vector<std::string> labels;
  std::vector<Vertex> original(keep.begin(), keep.end());
  for (std::size_t i = 0; i < original.size(); ++i) {
    pos[original[i]] = static_cast<int>(i);
    labels.push_back(g.label(original[i]));
  }
  std::vector<ItemGraph::Edge> edges;
  for (auto [a, b] : g.edges())
    if (pos[a] >= 0 && pos[b] >= 0) edges.emplace_back(pos[a], pos[b]);
  return {ItemGraph(std::move(labels), std::move(edges)), std::move(original)};
}

/// Visits every nonempty connected vertex set exactly once, grouped by
/// smallest vertex; `fn(Mask)` returns false to stop early.
template <typename Fn>
void for_each_connected_mask(const ItemGraph& g, Fn&& fn) {
  require_mask_graph(g);
  const int m = g.size();
  bool stop = false;
  // Grows sets whose minimum is fixed; every popped candidate becomes forbidden
  // for later siblings, so each set is produced on exactly one branch.
  auto grow = [&](auto&& self, Mask set, Mask cand, Mask forbidden) -> void {
    if (stop) return;
    if (!fn(set)) {
      stop = true;
      return;
    }
    while (cand && !stop) {
      Vertex u = std::countr_zero(cand);
      cand &= cand - 1;
      Mask ext = (cand | g.neighbor_mask(u)) & ~set & ~forbidden & ~bit(u);
      self(self, set | bit(u), ext, forbidden);
      forbidden |= bit(u);
    }
  };
  for (int r = 0; r < m && !stop; ++r) {
    Mask below = bit(r) - 1;
    grow(grow, bit(r), g.neighbor_mask(r) & ~below, below);
  }
}

inline std::vector<VertexSet> enumerate_connected_sets(const ItemGraph& g) {
  std::vector<VertexSet> out;
  for_each_connected_mask(g, [&](Mask s) {
    out.push_back(from_mask(s));
    return true;
  });
  return out;
}

namespace detail {

inline std::vector<Mask> components_of(const ItemGraph& g, Mask s) {
  std::vector<Mask> comps;
  while (s) {
    Mask seen = s & (~s + 1), frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= g.neighbor_mask(std::countr_zero(f));
      next &= s & ~seen;
      seen |= next;
      frontier = next;
    }
    comps.push_back(seen);
    s &= ~seen;
  }
  return comps;
}

template <typename Fn>
void tree_partitions(const ItemGraph& g, int k, Fn& fn) {
  const auto& edges = g.edges();
  const int e = static_cast<int>(edges.size());
  const int cut = k - 1;
  std::vector<int> pick(cut);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<Mask> nb(g.size());
  while (true) {
    for (int v = 0; v < g.size(); ++v) nb[v] = g.neighbor_mask(v);
    for (int idx : pick) {
      auto [a, b] = edges[idx];
      nb[a] &= ~bit(b);
      nb[b] &= ~bit(a);
    }
    std::vector<Mask> parts;
    Mask rest = g.all_mask();
    while (rest) {
      Mask seen = rest & (~rest + 1), frontier = seen;
      while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1) next |= nb[std::countr_zero(f)];
        next &= ~seen;
        seen |= next;
        frontier = next;
      }
      parts.push_back(seen);
      rest &= ~seen;
    }
    if (!fn(std::span<const Mask>(parts))) return;
    int i = cut - 1;
    while (i >= 0 && pick[i] == e - cut + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < cut; ++j) pick[j] = pick[j - 1] + 1;
  }
}

template <typename Fn>
void general_partitions(const ItemGraph& g, int k, Fn& fn) {
  const int m = g.size();
  std::vector<Mask> parts;
  bool stop = false;
  // A part that is disconnected and has a component with no unassigned
  // neighbour can never become connected.
  auto hopeless = [&](Mask part, Mask unassigned) {
    if (is_connected_mask(g, part)) return false;
    for (Mask c : components_of(g, part)) {
      Mask nb = 0;
      for (Mask f = c; f; f &= f - 1) nb |= g.neighbor_mask(std::countr_zero(f));
      if ((nb & unassigned) == 0) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self, int v) -> void {
    if (stop) return;
    const int used = static_cast<int>(parts.size());
    if (m - v < k - used) return;
    Mask unassigned = v >= m ? 0 : (g.all_mask() & ~(bit(v) - 1));
    for (Mask p : parts)
      if (hopeless(p, unassigned)) return;
    if (v == m) {
      if (used == k && !fn(std::span<const Mask>(parts))) stop = true;
      return;
    }
    for (int p = 0; p < used && !stop; ++p) {
      parts[p] |= bit(v);
      self(self, v + 1);
      parts[p] &= ~bit(v);
    }
    if (used < k && !stop) {
      parts.push_back(bit(v));
      self(self, v + 1);
      parts.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Visits every unordered partition of V into exactly k nonempty connected
/// parts once; parts are ordered by smallest vertex. Trees use edge deletion,
/// other graphs recursive assignment with connectivity pruning. Empty stream
/// when k < 1 or k > m. `fn(span<const Mask>)` returns false to stop.
template <typename Fn>
void for_each_connected_partition(const ItemGraph& g, int k, Fn&& fn) {
  require_mask_graph(g);
  if (k < 1 || k > g.size()) return;
  if (classify(g).is_tree) {
    auto sorted = [&](std::span<const Mask> parts) {
      std::vector<Mask> p(parts.begin(), parts.end());
      std::sort(p.begin(), p.end(), [](Mask a, Mask b) { return std::countr_zero(a) < std::countr_zero(b); });
      return fn(std::span<const Mask>(p));
    };
    detail::tree_partitions(g, k, sorted);
  } else {
    detail::general_partitions(g, k, fn);
  }
}

inline std::vector<std::vector<VertexSet>> enumerate_connected_partitions(const ItemGraph& g, int k) {
  std::vector<std::vector<VertexSet>> out;
  for_each_connected_partition(g, k, [&](std::span<const Mask> parts) {
    std::vector<VertexSet> p;
    for (Mask s : parts) p.push_back(from_mask(s));
    out.push_back(std::move(p));
    return true;
  });
  return out;
}

}  // namespace cfd
