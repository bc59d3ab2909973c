// Instances, allocations and the polynomial-time verifiers for every
// solution concept.
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/rational.hpp"

namespace cfd {

struct AgentSpec {
  std::string name;
  std::vector<Rational> utilities;  // indexed by vertex
};

/// A connected fair division instance: item graph plus agents with additive
/// utilities that are nonnegative and sum to exactly 1.
class Instance {
 public:
  Instance(ItemGraph graph, std::vector<AgentSpec> agents)
      : graph_(std::move(graph)), agents_(std::move(agents)) {
    if (agents_.empty()) throw InputError("instance needs at least one agent");
    std::unordered_set<std::string> names;
    for (const auto& a : agents_) {
      if (!names.insert(a.name).second) throw InputError("duplicate agent name '" + a.name + "'");
      if (static_cast<int>(a.utilities.size()) != graph_.size())
        throw InputError("agent '" + a.name + "' has wrong utility vector length");
      Rational sum;
      for (const auto& u : a.utilities) {
        if (u.sign() < 0) throw InputError("agent '" + a.name + "' has a negative utility");
        sum += u;
      }
      if (sum != Rational(1))
        throw InputError("utilities of agent '" + a.name + "' sum to " + sum.str() + ", expected 1");
    }
  }

  /// Divides every agent's utilities by their sum. Never applied implicitly.
  static Instance normalized(ItemGraph graph, std::vector<AgentSpec> agents) {
    for (auto& a : agents) {
      Rational sum;
      for (const auto& u : a.utilities) sum += u;
      if (sum.sign() <= 0) throw InputError("agent '" + a.name + "' has no positive utility");
      for (auto& u : a.utilities) u /= sum;
    }
    return Instance(std::move(graph), std::move(agents));
  }

  [[nodiscard]] const ItemGraph& graph() const { return graph_; }
  [[nodiscard]] int item_count() const { return graph_.size(); }
  [[nodiscard]] int agent_count() const { return static_cast<int>(agents_.size()); }
  [[nodiscard]] const std::vector<AgentSpec>& agents() const { return agents_; }
  [[nodiscard]] const AgentSpec& agent(int i) const { return agents_.at(i); }
  [[nodiscard]] const Rational& utility(int agent, Vertex v) const { return agents_.at(agent).utilities.at(v); }
  [[nodiscard]] std::optional<int> agent_index(std::string_view name) const {
    for (int i = 0; i < agent_count(); ++i)
      if (agents_[i].name == name) return i;
    return std::nullopt;
  }
  /// 1/n.
  [[nodiscard]] Rational fair_share() const { return Rational(1, agent_count()); }

 private:
  ItemGraph graph_;
  std::vector<AgentSpec> agents_;
};

/// One bundle per agent; bundles may be empty.
struct Allocation {
  std::vector<VertexSet> bundles;

  static Allocation empty(int agents) { return Allocation{std::vector<VertexSet>(agents)}; }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct AgentTypePartition {
  std::vector<int> type_of_agent;
  int type_count = 0;
  std::vector<int> agents_per_type;
  /// Agents of each type in ascending index order.
  std::vector<std::vector<int>> members;
};

enum class Problem { prop, ef_complete, mms };
enum class Method { oracle, greedy, path_dp, star, tree_fpt, ef_path, mms_tree };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::greedy: return "greedy";
    case Method::path_dp: return "path-dp";
    case Method::star: return "star";
    case Method::tree_fpt: return "tree-fpt";
    case Method::ef_path: return "ef-path";
    case Method::mms_tree: return "mms-tree";
  }
  return "?";
}

inline std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::prop: return "prop";
    case Problem::ef_complete: return "ef_complete";
    case Problem::mms: return "mms";
  }
  return "?";
}

struct SolveReport {
  bool decision = false;
  std::optional<Allocation> witness;
  Method method = Method::oracle;
  std::vector<Rational> achieved;               // u_i(pi(i)), recomputed from the witness
  std::optional<std::vector<Rational>> quotas;  // q_i or mms_i targets
};

namespace detail {

inline void check_agent(const Instance& inst, int agent) {
  if (agent < 0 || agent >= inst.agent_count()) throw InputError("agent index out of range");
}

inline void check_shape(const Instance& inst, const Allocation& alloc) {
  if (static_cast<int>(alloc.bundles.size()) != inst.agent_count())
    throw InputError("allocation must have one bundle per agent");
  for (const auto& b : alloc.bundles)
    for (Vertex v : b)
      if (v < 0 || v >= inst.item_count()) throw InputError("vertex index out of range");
}

}  // namespace detail

inline Rational bundle_value(const Instance& inst, int agent, std::span<const Vertex> items) {
  detail::check_agent(inst, agent);
  Rational total;
  for (Vertex v : items) {
    if (v < 0 || v >= inst.item_count()) throw InputError("vertex index out of range");
    total += inst.utility(agent, v);
  }
  return total;
}

/// Pairwise disjoint (no vertex used twice) and every bundle connected.
inline bool is_valid(const Instance& inst, const Allocation& alloc) {
  detail::check_shape(inst, alloc);
  std::vector<char> used(inst.item_count(), 0);
  for (const auto& b : alloc.bundles) {
    for (Vertex v : b) {
      if (used[v]) return false;
      used[v] = 1;
    }
    if (!is_connected_set(inst.graph(), b)) return false;
  }
  return true;
}

inline bool is_proportional(const Instance& inst, const Allocation& alloc) {
  detail::check_shape(inst, alloc);
  const Rational share = inst.fair_share();
  for (int i = 0; i < inst.agent_count(); ++i)
    if (bundle_value(inst, i, alloc.bundles[i]) < share) return false;
  return true;
}

inline bool is_envy_free(const Instance& inst, const Allocation& alloc) {
  detail::check_shape(inst, alloc);
  const int n = inst.agent_count();
  for (int i = 0; i < n; ++i) {
    Rational own = bundle_value(inst, i, alloc.bundles[i]);
    for (int j = 0; j < n; ++j)
      if (j != i && bundle_value(inst, i, alloc.bundles[j]) > own) return false;
  }
  return true;
}

inline bool is_complete(const Instance& inst, const Allocation& alloc) {
  detail::check_shape(inst, alloc);
  std::vector<char> covered(inst.item_count(), 0);
  for (const auto& b : alloc.bundles)
    for (Vertex v : b) covered[v] = 1;
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

inline bool is_mms_allocation(const Instance& inst, const Allocation& alloc, std::span<const Rational> mms) {
  if (static_cast<int>(mms.size()) != inst.agent_count()) throw InputError("mms vector has wrong length");
  if (!is_valid(inst, alloc)) return false;
  for (int i = 0; i < inst.agent_count(); ++i)
    if (bundle_value(inst, i, alloc.bundles[i]) < mms[i]) return false;
  return true;
}

/// Groups agents with identical utility vectors; types numbered by first occurrence.
inline AgentTypePartition compute_type_partition(const Instance& inst) {
  AgentTypePartition p;
  std::vector<int> representative;
  for (int i = 0; i < inst.agent_count(); ++i) {
    int type = -1;
    for (int t = 0; t < p.type_count; ++t)
      if (inst.agent(representative[t]).utilities == inst.agent(i).utilities) {
        type = t;
        break;
      }
    if (type < 0) {
      type = p.type_count++;
      representative.push_back(i);
      p.agents_per_type.push_back(0);
      p.members.emplace_back();
    }
    p.type_of_agent.push_back(type);
    ++p.agents_per_type[type];
    p.members[type].push_back(i);
  }
  return p;
}

/// Builds a report whose achieved values are recomputed from the witness.
inline SolveReport make_report(const Instance& inst, Method method, std::optional<Allocation> witness,
                               std::optional<std::vector<Rational>> quotas = std::nullopt) {
  SolveReport r;
  r.method = method;
  r.decision = witness.has_value();
  if (witness) {
    for (auto& b : witness->bundles) std::sort(b.begin(), b.end());
    for (int i = 0; i < inst.agent_count(); ++i) r.achieved.push_back(bundle_value(inst, i, witness->bundles[i]));
  }
  r.witness = std::move(witness);
  r.quotas = std::move(quotas);
  return r;
}

}  // namespace cfd
