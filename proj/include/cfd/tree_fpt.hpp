// Proportionality on trees, fixed-parameter in the number of agents.
//
// A_v[i,S] is the best value agent i can get from a connected bundle
// containing v inside D(v) while every agent of S receives a bundle in D(v)
// worth >= 1/n. Internal vertices split S over the children: each block of a
// set partition of S is matched to one child subtree, the remaining children
// go to i entirely.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/matching.hpp"
#include "cfd/model.hpp"

namespace cfd {

using AgentMask = std::uint32_t;

struct TreeDpTable {
  enum class ChildUse : std::uint8_t { whole_to_owner, owner_enters, handed_off };
  struct ChildChoice {
    ChildUse use = ChildUse::whole_to_owner;
    AgentMask block = 0;
    int holder = -1;  // for handed_off: the agent of `block` that holds the child
  };
  struct Entry {
    std::optional<Rational> value;  // nullopt is -infinity
    std::vector<ChildChoice> children;
  };

  RootedTreeView tree;
  int agents = 0;
  // entries[v][i][S]
  std::vector<std::vector<std::vector<Entry>>> entries;

  [[nodiscard]] const std::optional<Rational>& value(Vertex v, int i, AgentMask s) const {
    return entries[v][i][s].value;
  }
};

namespace detail {

/// Set partitions of the agents in `s` into at most `max_blocks` blocks, via
/// restricted growth strings over the members in ascending order.
template <typename Fn>
void for_each_set_partition(AgentMask s, int max_blocks, Fn&& fn) {
  std::vector<int> members;
  for (int a = 0; s >> a; ++a)
    if ((s >> a) & 1u) members.push_back(a);
  std::vector<AgentMask> blocks;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == members.size()) {
      fn(blocks);
      return;
    }
    const AgentMask b = AgentMask{1} << members[k];
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      blocks[j] |= b;
      self(self, k + 1);
      blocks[j] &= ~b;
    }
    if (static_cast<int>(blocks.size()) < max_blocks) {
      blocks.push_back(b);
      self(self, k + 1);
      blocks.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

inline TreeDpTable build_tree_dp(const Instance& inst, Vertex root = 0) {
  const ItemGraph& g = inst.graph();
  const int n = inst.agent_count();
  if (n > 20) throw BudgetExceeded("tree DP supports at most 20 agents");
  TreeDpTable tab;
  tab.tree = root_tree(g, root);
  tab.agents = n;
  const auto& tree = tab.tree;
  const AgentMask full = (AgentMask{1} << n) - 1;
  const Rational share = inst.fair_share();
  const int m = g.size();

  std::vector<std::vector<Rational>> subtree(n, std::vector<Rational>(m));
  for (Vertex v : tree.postorder)
    for (int i = 0; i < n; ++i) {
      Rational s = inst.utility(i, v);
      for (Vertex c : tree.children[v]) s += subtree[i][c];
      subtree[i][v] = s;
    }

  tab.entries.assign(m, std::vector<std::vector<TreeDpTable::Entry>>(n, std::vector<TreeDpTable::Entry>(full + 1)));

  for (Vertex v : tree.postorder) {
    const auto& kids = tree.children[v];
    const int c = static_cast<int>(kids.size());
    for (int i = 0; i < n; ++i) {
      const AgentMask others = full & ~(AgentMask{1} << i);
      for (AgentMask s = 0; s <= full; ++s) {
        if (s & ~others) continue;
        auto& entry = tab.entries[v][i][s];
        if (s == 0) {
          entry.value = subtree[i][v];
          entry.children.assign(c, {});
          continue;
        }
        if (c == 0) continue;  // leaf cannot host other agents

        detail::for_each_set_partition(s, c, [&](const std::vector<AgentMask>& blocks) {
          const int b = static_cast<int>(blocks.size());
          MatchingProblem mp;
          mp.left_size = c;
          mp.right_size = c;
          mp.objective = Objective::maximize;
          std::vector<std::vector<int>> holder(b, std::vector<int>(c, -1));
          for (int k = 0; k < b; ++k) {
            auto& row = mp.weights.emplace_back();
            for (int z = 0; z < c; ++z) {
              const auto& own = tab.value(kids[z], i, blocks[k]);
              if (own) {
                row.emplace_back(*own);
                continue;
              }
              for (int j = 0; j < n && holder[k][z] < 0; ++j) {
                if (!((blocks[k] >> j) & 1u)) continue;
                const auto& h = tab.value(kids[z], j, blocks[k] & ~(AgentMask{1} << j));
                if (h && *h >= share) holder[k][z] = j;
              }
              if (holder[k][z] >= 0)
                row.emplace_back(Rational(0));
              else
                row.emplace_back(std::nullopt);
            }
          }
          for (int k = b; k < c; ++k) {
            auto& row = mp.weights.emplace_back();
            for (int z = 0; z < c; ++z) row.emplace_back(subtree[i][kids[z]]);
          }
          auto match = solve_matching(mp);
          if (!match) return;
          Rational total = inst.utility(i, v) + match->total;
          if (entry.value && total <= *entry.value) return;
          entry.value = total;
          entry.children.assign(c, {});
          for (int k = 0; k < b; ++k) {
            auto& ch = entry.children[match->assignment[k]];
            ch.block = blocks[k];
            if (tab.value(kids[match->assignment[k]], i, blocks[k])) {
              ch.use = TreeDpTable::ChildUse::owner_enters;
            } else {
              ch.use = TreeDpTable::ChildUse::handed_off;
              ch.holder = holder[k][match->assignment[k]];
            }
          }
        });
      }
    }
  }
  return tab;
}

namespace detail {

inline void rebuild_tree_bundles(const TreeDpTable& tab, Vertex v, int i, AgentMask s, Allocation& alloc) {
  const auto& tree = tab.tree;
  if (s == 0) {
    const auto& d = tree.descendants[v];
    alloc.bundles[i].insert(alloc.bundles[i].end(), d.begin(), d.end());
    return;
  }
  alloc.bundles[i].push_back(v);
  const auto& entry = tab.entries[v][i][s];
  for (std::size_t z = 0; z < entry.children.size(); ++z) {
    const Vertex child = tree.children[v][z];
    const auto& ch = entry.children[z];
    switch (ch.use) {
      case TreeDpTable::ChildUse::whole_to_owner:
        rebuild_tree_bundles(tab, child, i, 0, alloc);
        break;
      case TreeDpTable::ChildUse::owner_enters:
        rebuild_tree_bundles(tab, child, i, ch.block, alloc);
        break;
      case TreeDpTable::ChildUse::handed_off:
        rebuild_tree_bundles(tab, child, ch.holder, ch.block & ~(AgentMask{1} << ch.holder), alloc);
        break;
    }
  }
}

}  // namespace detail

/// Yes iff A_r[i, N \ {i}] >= 1/n for some agent i (lowest such i is used).
inline SolveReport prop_tree_fpt(const Instance& inst) {
  if (!classify(inst.graph()).is_tree) throw RoutingError("tree solver needs a tree");
  auto tab = build_tree_dp(inst);
  const int n = inst.agent_count();
  const AgentMask full = (AgentMask{1} << n) - 1;
  for (int i = 0; i < n; ++i) {
    const AgentMask rest = full & ~(AgentMask{1} << i);
    const auto& val = tab.value(tab.tree.root, i, rest);
    if (val && *val >= inst.fair_share()) {
      Allocation alloc = Allocation::empty(n);
      detail::rebuild_tree_bundles(tab, tab.tree.root, i, rest, alloc);
      return make_report(inst, Method::tree_fpt, std::move(alloc));
    }
  }
  return make_report(inst, Method::tree_fpt, std::nullopt);
}

}  // namespace cfd
