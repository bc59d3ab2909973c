// Ground-truth brute force for small instances. Every routine here works by
// exhaustive enumeration of connected sets or connected partitions and shares
// no code path with the polynomial solvers it is used to check.
#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/model.hpp"
#include "cfd/rational.hpp"

namespace cfd {

struct OracleBudget {
  int max_items = 10;
  int max_agents = 5;
  std::uint64_t max_enumerated = 200'000'000;
};

namespace detail {

inline void check_budget(const Instance& inst, const OracleBudget& budget) {
  if (inst.item_count() > budget.max_items || inst.item_count() > kMaxMaskVertices)
    throw BudgetExceeded("oracle: " + std::to_string(inst.item_count()) + " items exceed budget of " +
                         std::to_string(budget.max_items));
  if (inst.agent_count() > budget.max_agents)
    throw BudgetExceeded("oracle: " + std::to_string(inst.agent_count()) + " agents exceed budget of " +
                         std::to_string(budget.max_agents));
}

class WorkCounter {
 public:
  explicit WorkCounter(std::uint64_t limit) : limit_(limit) {}
  void tick() {
    if (++count_ > limit_) throw BudgetExceeded("oracle: enumeration cap exceeded");
  }

 private:
  std::uint64_t limit_;
  std::uint64_t count_ = 0;
};

inline Rational mask_value(std::span<const Rational> util, Mask s) {
  Rational v;
  for (; s; s &= s - 1) v += util[std::countr_zero(s)];
  return v;
}

inline Allocation allocation_from_masks(std::span<const Mask> masks) {
  Allocation a;
  for (Mask m : masks) a.bundles.push_back(from_mask(m));
  return a;
}

/// Decides whether agents can receive pairwise disjoint connected bundles
/// worth at least their thresholds. With pruning only inclusion-minimal
/// qualifying bundles are tried and same-type agents pick in increasing
/// candidate order; without it every assignment of connected-or-empty
/// bundles is enumerated and checked at the leaves.
inline std::optional<Allocation> threshold_search(const Instance& inst, std::span<const Rational> thresholds,
                                                  const OracleBudget& budget, bool prune) {
  const int n = inst.agent_count();
  const ItemGraph& g = inst.graph();
  WorkCounter work(budget.max_enumerated);

  std::vector<Mask> sets{0};
  for_each_connected_mask(g, [&](Mask s) {
    work.tick();
    sets.push_back(s);
    return true;
  });

  std::vector<std::vector<Mask>> cand(n);
  std::vector<std::vector<Rational>> value(n);
  for (int a = 0; a < n; ++a) {
    const auto& util = inst.agent(a).utilities;
    if (!prune) {
      for (Mask s : sets) {
        cand[a].push_back(s);
        value[a].push_back(mask_value(util, s));
      }
      continue;
    }
    // A qualifying connected set has a qualifying connected proper subset iff
    // it stays qualifying after dropping some vertex whose removal keeps it
    // connected (grow the subset back one neighbour at a time), so
    // minimality is a local test.
    for (Mask s : sets) {
      work.tick();
      const Rational v = mask_value(util, s);
      if (v < thresholds[a]) continue;
      bool minimal = true;
      for (Mask rest = s; rest && minimal; rest &= rest - 1) {
        const Mask drop = s & ~(rest & -rest);
        if (v - util[std::countr_zero(rest)] >= thresholds[a] && (drop == 0 || is_connected_mask(g, drop)))
          minimal = false;
      }
      if (minimal) {
        cand[a].push_back(s);
        value[a].push_back(v);
      }
    }
  }

  std::vector<int> prev_same(n, -1);
  if (prune) {
    auto types = compute_type_partition(inst);
    for (const auto& mem : types.members)
      for (std::size_t k = 1; k < mem.size(); ++k)
        if (thresholds[mem[k]] == thresholds[mem[k - 1]]) prev_same[mem[k]] = mem[k - 1];
  }

  std::vector<int> pick(n, -1);
  std::vector<Mask> chosen(n, 0);
  auto dfs = [&](auto&& self, int a, Mask used) -> bool {
    work.tick();
    if (a == n) {
      if (prune) return true;
      for (int i = 0; i < n; ++i)
        if (value[i][pick[i]] < thresholds[i]) return false;
      return true;
    }
    int start = prev_same[a] >= 0 ? pick[prev_same[a]] : 0;
    for (int c = start; c < static_cast<int>(cand[a].size()); ++c) {
      Mask s = cand[a][c];
      if (s & used) continue;
      pick[a] = c;
      chosen[a] = s;
      if (self(self, a + 1, used | s)) return true;
    }
    return false;
  };
  if (!dfs(dfs, 0, 0)) return std::nullopt;
  return allocation_from_masks(chosen);
}

/// Kuhn augmenting paths; left vertices are tried in the given order.
inline bool augment(int l, const std::vector<std::vector<int>>& adj, std::vector<int>& match_right,
                    std::vector<char>& visited) {
  for (int r : adj[l]) {
    if (visited[r]) continue;
    visited[r] = 1;
    if (match_right[r] < 0 || augment(match_right[r], adj, match_right, visited)) {
      match_right[r] = l;
      return true;
    }
  }
  return false;
}

/// Given a complete partition, finds an injective part -> agent assignment
/// under which every agent holds one of her most valued parts (agents that
/// value every part at 0 may stay empty). That is exactly envy-freeness of
/// the complete allocation.
inline std::optional<Allocation> ef_assignment(const Instance& inst, std::span<const Mask> parts) {
  const int n = inst.agent_count();
  const int k = static_cast<int>(parts.size());
  std::vector<std::vector<int>> adj(n);
  std::vector<char> positive(n, 0);
  for (int a = 0; a < n; ++a) {
    const auto& util = inst.agent(a).utilities;
    std::vector<Rational> vals;
    Rational best;
    for (Mask p : parts) {
      vals.push_back(mask_value(util, p));
      if (vals.back() > best) best = vals.back();
    }
    positive[a] = best.sign() > 0;
    for (int p = 0; p < k; ++p)
      if (vals[p] == best) adj[a].push_back(p);
  }
  int must = 0;
  for (char c : positive) must += c;
  if (must > k) return std::nullopt;

  std::vector<int> match_right(k, -1);
  for (int pass = 0; pass < 2; ++pass)
    for (int a = 0; a < n; ++a) {
      if (positive[a] != (pass == 0)) continue;
      std::vector<char> visited(k, 0);
      if (!augment(a, adj, match_right, visited) && pass == 0) return std::nullopt;
    }
  Allocation alloc = Allocation::empty(n);
  for (int p = 0; p < k; ++p) {
    if (match_right[p] < 0) return std::nullopt;
    alloc.bundles[match_right[p]] = from_mask(parts[p]);
  }
  return alloc;
}

/// Literal variant: tries every injective part -> agent assignment.
inline std::optional<Allocation> ef_assignment_literal(const Instance& inst, std::span<const Mask> parts) {
  const int n = inst.agent_count();
  const int k = static_cast<int>(parts.size());
  std::vector<int> owner(k, -1);
  std::vector<char> busy(n, 0);
  std::optional<Allocation> found;
  auto rec = [&](auto&& self, int p) -> bool {
    if (p == k) {
      Allocation alloc = Allocation::empty(n);
      for (int q = 0; q < k; ++q) alloc.bundles[owner[q]] = from_mask(parts[q]);
      if (!is_envy_free(inst, alloc)) return false;
      found = std::move(alloc);
      return true;
    }
    for (int a = 0; a < n; ++a) {
      if (busy[a]) continue;
      busy[a] = 1;
      owner[p] = a;
      if (self(self, p + 1)) return true;
      busy[a] = 0;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

}  // namespace detail

/// Exact maximin shares by enumerating connected `parts`-partitions of `g`,
/// for utility vectors that need not be normalized.
inline std::vector<Rational> mms_values_by_enumeration(const ItemGraph& g,
                                                       const std::vector<std::vector<Rational>>& utilities,
                                                       int parts, const OracleBudget& budget = {}) {
  if (parts < 1 || parts > g.size()) throw InputError("maximin share needs 1 <= parts <= items");
  if (!classify(g).is_connected) throw InputError("maximin share is undefined on a disconnected graph");
  if (g.size() > budget.max_items) throw BudgetExceeded("oracle: too many items for mms enumeration");
  detail::WorkCounter work(budget.max_enumerated);
  const int agents = static_cast<int>(utilities.size());
  std::vector<std::optional<Rational>> best(agents);
  for_each_connected_partition(g, parts, [&](std::span<const Mask> ps) {
    work.tick();
    for (int a = 0; a < agents; ++a) {
      std::optional<Rational> worst;
      for (Mask p : ps) {
        Rational v = detail::mask_value(utilities[a], p);
        if (!worst || v < *worst) worst = v;
      }
      if (!best[a] || *worst > *best[a]) best[a] = worst;
    }
    return true;
  });
  std::vector<Rational> out;
  for (auto& b : best) out.push_back(b.value());
  return out;
}

inline SolveReport oracle_prop(const Instance& inst, const OracleBudget& budget = {}, bool prune = true) {
  detail::check_budget(inst, budget);
  std::vector<Rational> thresholds(inst.agent_count(), inst.fair_share());
  return make_report(inst, Method::oracle, detail::threshold_search(inst, thresholds, budget, prune));
}

inline SolveReport oracle_ef_complete(const Instance& inst, const OracleBudget& budget = {}, bool prune = true) {
  detail::check_budget(inst, budget);
  detail::WorkCounter work(budget.max_enumerated);
  const int kmax = std::min(inst.agent_count(), inst.item_count());
  std::optional<Allocation> witness;
  for (int k = 1; k <= kmax && !witness; ++k) {
    for_each_connected_partition(inst.graph(), k, [&](std::span<const Mask> parts) {
      work.tick();
      witness = prune ? detail::ef_assignment(inst, parts) : detail::ef_assignment_literal(inst, parts);
      return !witness.has_value();
    });
  }
  return make_report(inst, Method::oracle, std::move(witness));
}

inline std::vector<Rational> oracle_mms_values(const Instance& inst, const OracleBudget& budget = {}) {
  detail::check_budget(inst, budget);
  if (inst.item_count() < inst.agent_count())
    throw InputError("maximin share needs at least as many items as agents");
  std::vector<std::vector<Rational>> utils;
  for (const auto& a : inst.agents()) utils.push_back(a.utilities);
  return mms_values_by_enumeration(inst.graph(), utils, inst.agent_count(), budget);
}

inline SolveReport oracle_mms_exists(const Instance& inst, const OracleBudget& budget = {}, bool prune = true) {
  auto mms = oracle_mms_values(inst, budget);
  auto witness = detail::threshold_search(inst, mms, budget, prune);
  return make_report(inst, Method::oracle, std::move(witness), std::move(mms));
}

}  // namespace cfd
