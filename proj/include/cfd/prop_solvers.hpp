// Proportionality on stars (matching) and paths (greedy for a single agent
// type, prefix DP over happy-agent counts otherwise).
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/matching.hpp"
#include "cfd/model.hpp"

namespace cfd {

/// Tries each agent as owner of the center: the others must be matched to
/// single leaves worth >= 1/n to them, and the owner keeps the center plus all
/// unmatched leaves, so a min-weight matching (weights = owner's leaf values)
/// of total <= (n-1)/n decides the question.
inline SolveReport prop_star(const Instance& inst) {
  const ItemGraph& g = inst.graph();
  const Vertex center = star_center(g);
  const int n = inst.agent_count();
  const Rational share = inst.fair_share();
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < g.size(); ++v)
    if (v != center) leaves.push_back(v);

  for (int owner = 0; owner < n; ++owner) {
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != owner) others.push_back(j);
    if (others.size() > leaves.size()) continue;
    MatchingProblem mp;
    mp.left_size = static_cast<int>(others.size());
    mp.right_size = static_cast<int>(leaves.size());
    mp.objective = Objective::minimize;
    for (int j : others) {
      auto& row = mp.weights.emplace_back();
      for (Vertex leaf : leaves) {
        if (inst.utility(j, leaf) >= share)
          row.emplace_back(inst.utility(owner, leaf));
        else
          row.emplace_back(std::nullopt);
      }
    }
    auto m = solve_matching(mp);
    if (!m || m->total > Rational(n - 1, n)) continue;

    Allocation alloc = Allocation::empty(n);
    std::vector<char> taken(leaves.size(), 0);
    for (std::size_t k = 0; k < others.size(); ++k) {
      alloc.bundles[others[k]] = {leaves[m->assignment[k]]};
      taken[m->assignment[k]] = 1;
    }
    alloc.bundles[owner].push_back(center);
    for (std::size_t l = 0; l < leaves.size(); ++l)
      if (!taken[l]) alloc.bundles[owner].push_back(leaves[l]);
    return make_report(inst, Method::star, std::move(alloc));
  }
  return make_report(inst, Method::star, std::nullopt);
}

/// Single agent type on a path: cut a piece as soon as it is worth 1/n.
inline SolveReport prop_path_greedy(const Instance& inst) {
  auto order = path_order(inst.graph());
  if (compute_type_partition(inst).type_count != 1)
    throw RoutingError("greedy path solver needs all agents of one type");
  const int n = inst.agent_count();
  const Rational share = inst.fair_share();

  std::vector<VertexSet> pieces;
  VertexSet current;
  Rational acc;
  std::size_t pos = 0;
  for (; pos < order.size() && static_cast<int>(pieces.size()) < n; ++pos) {
    current.push_back(order[pos]);
    acc += inst.utility(0, order[pos]);
    if (acc >= share) {
      pieces.push_back(std::move(current));
      current.clear();
      acc = Rational(0);
    }
  }
  if (static_cast<int>(pieces.size()) < n) return make_report(inst, Method::greedy, std::nullopt);
  for (; pos < order.size(); ++pos) pieces.back().push_back(order[pos]);
  return make_report(inst, Method::greedy, Allocation{std::move(pieces)});
}

/// Reachability table A_i[j_1..j_p] of the typed path DP. Counts are encoded
/// in mixed radix with base n+1 per type.
struct PathDpTable {
  struct Back {
    int from = -1;  // prefix length s the last step came from
    int type = -1;  // -1: vertex i was skipped
  };

  int prefix_count = 0;  // m + 1
  int type_count = 0;
  int base = 0;          // n + 1
  int state_count = 0;
  std::vector<std::vector<char>> reachable;  // [i][state]
  std::vector<std::vector<Back>> back;

  [[nodiscard]] std::vector<int> decode(int state) const {
    std::vector<int> j(type_count);
    for (int t = 0; t < type_count; ++t) {
      j[t] = state % base;
      state /= base;
    }
    return j;
  }
  [[nodiscard]] int encode(const std::vector<int>& j) const {
    int s = 0;
    for (int t = type_count - 1; t >= 0; --t) s = s * base + j[t];
    return s;
  }
  [[nodiscard]] int stride(int type) const {
    int s = 1;
    for (int t = 0; t < type; ++t) s *= base;
    return s;
  }
};

/// Builds A_i over prefixes of the path order. Besides the piece transition,
/// A_i inherits A_{i-1} (vertex i left unallocated).
inline PathDpTable build_prop_path_table(const Instance& inst, const std::vector<Vertex>& order,
                                         const AgentTypePartition& types) {
  const int m = static_cast<int>(order.size());
  const int n = inst.agent_count();
  const int p = types.type_count;
  const Rational share = inst.fair_share();

  std::vector<int> rep(p);
  for (int t = 0; t < p; ++t) rep[t] = types.members[t].front();
  // happy[t][s][i]: a type-t agent values order[s..i-1] at >= 1/n.
  std::vector<std::vector<std::vector<char>>> happy(p, std::vector<std::vector<char>>(m + 1, std::vector<char>(m + 1, 0)));
  for (int t = 0; t < p; ++t)
    for (int s = 0; s < m; ++s) {
      Rational acc;
      for (int i = s + 1; i <= m; ++i) {
        acc += inst.utility(rep[t], order[i - 1]);
        happy[t][s][i] = acc >= share;
      }
    }

  PathDpTable tab;
  tab.prefix_count = m + 1;
  tab.type_count = p;
  tab.base = n + 1;
  tab.state_count = 1;
  for (int t = 0; t < p; ++t) tab.state_count *= tab.base;
  tab.reachable.assign(m + 1, std::vector<char>(tab.state_count, 0));
  tab.back.assign(m + 1, std::vector<PathDpTable::Back>(tab.state_count));
  tab.reachable[0][0] = 1;

  for (int i = 1; i <= m; ++i) {
    for (int state = 0; state < tab.state_count; ++state) {
      if (tab.reachable[i - 1][state]) {
        tab.reachable[i][state] = 1;
        tab.back[i][state] = {i - 1, -1};
        continue;
      }
      auto j = tab.decode(state);
      bool done = false;
      for (int s = 0; s < i && !done; ++s)
        for (int t = 0; t < p && !done; ++t) {
          if (j[t] == 0 || !happy[t][s][i]) continue;
          if (tab.reachable[s][state - tab.stride(t)]) {
            tab.reachable[i][state] = 1;
            tab.back[i][state] = {s, t};
            done = true;
          }
        }
    }
  }
  return tab;
}

inline SolveReport prop_path_typed(const Instance& inst) {
  auto order = path_order(inst.graph());
  auto types = compute_type_partition(inst);
  const int m = static_cast<int>(order.size());
  const int n = inst.agent_count();
  auto tab = build_prop_path_table(inst, order, types);

  int accept = -1;
  for (int state = 0; state < tab.state_count && accept < 0; ++state) {
    if (!tab.reachable[m][state]) continue;
    auto j = tab.decode(state);
    bool ok = true;
    for (int t = 0; t < types.type_count; ++t) ok = ok && j[t] >= types.agents_per_type[t];
    if (ok) accept = state;
  }
  if (accept < 0) return make_report(inst, Method::path_dp, std::nullopt);

  struct Piece {
    int begin, end, type;
  };
  std::vector<Piece> pieces;
  for (int i = m, state = accept; i > 0;) {
    auto b = tab.back[i][state];
    if (b.type >= 0) {
      pieces.push_back({b.from, i, b.type});
      state -= tab.stride(b.type);
    }
    i = b.from;
  }
  std::reverse(pieces.begin(), pieces.end());
  // owner[k]: agent holding path position k, -1 while unassigned.
  std::vector<int> owner(m, -1), used(types.type_count, 0);
  for (const auto& pc : pieces) {
    if (used[pc.type] >= types.agents_per_type[pc.type]) continue;  // surplus piece
    int agent = types.members[pc.type][used[pc.type]++];
    for (int k = pc.begin; k < pc.end; ++k) owner[k] = agent;
  }
  // Unassigned runs join the piece on their left, or on their right at the start.
  int first = 0;
  while (owner[first] < 0) ++first;
  for (int k = 0; k < first; ++k) owner[k] = owner[first];
  for (int k = first + 1; k < m; ++k)
    if (owner[k] < 0) owner[k] = owner[k - 1];

  Allocation alloc = Allocation::empty(n);
  for (int k = 0; k < m; ++k) alloc.bundles[owner[k]].push_back(order[k]);
  return make_report(inst, Method::path_dp, std::move(alloc));
}

}  // namespace cfd
