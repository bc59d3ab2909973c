// Maximin shares on trees: a discrete last-diminisher procedure that meets any
// quota vector dominated by the maximin shares, exact maximin share values by
// binary search over that procedure, and the resulting MMS allocator.
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/model.hpp"
#include "cfd/parallel.hpp"
#include "cfd/rational.hpp"

namespace cfd {

struct DiminisherStep {
  int round = 0;                 // 1-based
  int agent = -1;
  std::optional<Vertex> vertex;  // v_i; empty for the final residual award or an empty residual
  VertexSet awarded;             // D(v_i), or the whole residual for the last agent
  VertexSet residual;            // vertices left after this award
};

using DiminisherTrace = std::vector<DiminisherStep>;

struct QuotaAllocation {
  Allocation allocation;
  DiminisherTrace trace;
};

namespace detail {

/// The recursive procedure on a utility matrix (rows need not be normalized).
/// Returns nullopt when some remaining agent values the residual below quota.
inline std::optional<QuotaAllocation> last_diminisher(const ItemGraph& g,
                                                      const std::vector<std::vector<Rational>>& util,
                                                      std::span<const Rational> quotas) {
  const int m = g.size();
  const int n = static_cast<int>(util.size());
  std::vector<char> alive(m, 1);
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  QuotaAllocation out{Allocation::empty(n), {}};

  auto residual_set = [&] {
    VertexSet r;
    for (Vertex v = 0; v < m; ++v)
      if (alive[v]) r.push_back(v);
    return r;
  };

  for (int round = 1; !active.empty(); ++round) {
    VertexSet residual = residual_set();
    for (int a : active) {
      Rational total;
      for (Vertex v : residual) total += util[a][v];
      if (total < quotas[a]) return std::nullopt;
    }
    if (active.size() == 1 || residual.empty()) {
      const int a = active.front();
      if (active.size() == 1) {
        out.allocation.bundles[a] = residual;
        for (Vertex v : residual) alive[v] = 0;
      }
      active.erase(active.begin());
      out.trace.push_back({round, a, std::nullopt, out.allocation.bundles[a], residual_set()});
      continue;
    }

    // Root the residual tree at its lowest vertex; children ascending.
    const Vertex root = residual.front();
    std::vector<std::vector<Vertex>> children(m);
    std::vector<Vertex> parent(m, -1), preorder{};
    std::vector<Vertex> stack{root};
    std::vector<char> seen(m, 0);
    seen[root] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      preorder.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (alive[w] && !seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          children[v].push_back(w);
        }
      for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
    }
    std::vector<Vertex> postorder;
    {
      std::vector<std::pair<Vertex, std::size_t>> st{{root, 0}};
      while (!st.empty()) {
        auto& [v, next] = st.back();
        if (next < children[v].size()) {
          Vertex c = children[v][next++];
          st.emplace_back(c, 0);
        } else {
          postorder.push_back(v);
          st.pop_back();
        }
      }
    }

    // First vertex in postorder whose subtree meets some active agent's quota;
    // none of its child subtrees meets any quota, since they come earlier.
    std::vector<std::vector<Rational>> sub(n, std::vector<Rational>(m));
    int chosen_agent = -1;
    Vertex chosen = -1;
    for (Vertex v : postorder) {
      for (int a : active) {
        Rational s = util[a][v];
        for (Vertex c : children[v]) s += sub[a][c];
        sub[a][v] = s;
      }
      for (int a : active)
        if (sub[a][v] >= quotas[a]) {
          chosen_agent = a;
          break;
        }
      if (chosen_agent >= 0) {
        chosen = v;
        break;
      }
    }

    VertexSet award;
    std::vector<Vertex> todo{chosen};
    while (!todo.empty()) {
      Vertex v = todo.back();
      todo.pop_back();
      award.push_back(v);
      for (Vertex c : children[v]) todo.push_back(c);
    }
    std::sort(award.begin(), award.end());
    for (Vertex v : award) alive[v] = 0;
    out.allocation.bundles[chosen_agent] = award;
    active.erase(std::find(active.begin(), active.end(), chosen_agent));
    out.trace.push_back({round, chosen_agent, chosen, award, residual_set()});
  }
  return out;
}

inline void require_tree(const Instance& inst) {
  if (!classify(inst.graph()).is_tree) throw RoutingError("maximin share tree solver needs a tree");
}

inline std::vector<std::vector<Rational>> utility_matrix(const Instance& inst) {
  std::vector<std::vector<Rational>> u;
  for (const auto& a : inst.agents()) u.push_back(a.utilities);
  return u;
}

}  // namespace detail

/// Gives every agent a connected bundle worth at least her quota, or nullopt
/// (fail) when the procedure runs out. Never fails when quotas <= mms.
inline std::optional<QuotaAllocation> allocate_with_quotas(const Instance& inst, std::span<const Rational> quotas) {
  detail::require_tree(inst);
  if (static_cast<int>(quotas.size()) != inst.agent_count()) throw InputError("one quota per agent required");
  return detail::last_diminisher(inst.graph(), detail::utility_matrix(inst), quotas);
}

/// Exact mms_i on a tree. Utilities are scaled to integers by the lcm L of
/// their denominators; the largest integer q such that n copies of the agent
/// can each get >= q is found by binary search on [0, L].
inline Rational mms_value_tree(const Instance& inst, int agent) {
  detail::require_tree(inst);
  detail::check_agent(inst, agent);
  const int n = inst.agent_count();
  if (inst.item_count() < n) throw InputError("maximin share needs at least as many items as agents");

  Integer scale = 1;
  for (const auto& u : inst.agent(agent).utilities) scale = lcm(scale, u.denominator());
  std::vector<Rational> scaled;
  for (const auto& u : inst.agent(agent).utilities) scaled.push_back(u * Rational(scale));
  const std::vector<std::vector<Rational>> clones(n, scaled);

  auto feasible = [&](const Integer& q) {
    const std::vector<Rational> quotas(n, Rational(q));
    return detail::last_diminisher(inst.graph(), clones, quotas).has_value();
  };
  Integer lo = 0, hi = scale;  // lo feasible, everything above hi infeasible
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    if (feasible(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return Rational(lo, scale);
}

struct MmsTreeResult {
  SolveReport report;
  DiminisherTrace trace;
};

inline MmsTreeResult solve_mms_tree_with_trace(const Instance& inst, int threads = 1) {
  detail::require_tree(inst);
  if (inst.item_count() < inst.agent_count())
    throw InputError("maximin share needs at least as many items as agents");
  auto quotas = parallel_map<Rational>(inst.agent_count(), threads,
                                       [&](std::size_t i) { return mms_value_tree(inst, static_cast<int>(i)); });
  auto result = allocate_with_quotas(inst, quotas);
  if (!result) throw std::logic_error("last-diminisher failed on maximin share quotas");
  return {make_report(inst, Method::mms_tree, std::move(result->allocation), std::move(quotas)),
          std::move(result->trace)};
}

inline SolveReport solve_mms_tree(const Instance& inst, int threads = 1) {
  return solve_mms_tree_with_trace(inst, threads).report;
}

}  // namespace cfd
