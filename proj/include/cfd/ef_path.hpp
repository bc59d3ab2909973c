// Complete envy-free allocations on paths, XP in the number of agent types.
//
// In an envy-free allocation all pieces held by one type are worth the same
// to that type, so the solver guesses that common value per type and runs a
// covering prefix DP that only admits pieces consistent with the guess.
#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/model.hpp"
#include "cfd/parallel.hpp"

namespace cfd {

/// Guessed per-type piece value (one entry per agent type).
struct EfGuess {
  std::vector<Rational> target;
};

struct EfPathResult {
  SolveReport report;
  std::optional<EfGuess> guess;  // the accepted guess on yes
};

namespace detail {

class EfPathSearch {
 public:
  explicit EfPathSearch(const Instance& inst)
      : inst_(inst), order_(path_order(inst.graph())), types_(compute_type_partition(inst)) {
    m_ = static_cast<int>(order_.size());
    p_ = types_.type_count;
    const int n = inst.agent_count();
    // Candidate values per type: 0 and every interval value, sorted; each
    // interval's value is stored as its rank in that list.
    rank_.assign(p_, std::vector<std::vector<int>>(m_ + 1, std::vector<int>(m_ + 1, -1)));
    values_.resize(p_);
    viable_.resize(p_);
    for (int t = 0; t < p_; ++t) {
      const int rep = types_.members[t].front();
      std::vector<Rational> vals{Rational(0)};
      std::vector<std::vector<Rational>> iv(m_ + 1, std::vector<Rational>(m_ + 1));
      for (int s = 0; s < m_; ++s) {
        Rational acc;
        for (int e = s + 1; e <= m_; ++e) {
          acc += inst.utility(rep, order_[e - 1]);
          iv[s][e] = acc;
          vals.push_back(acc);
        }
      }
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      values_[t] = vals;
      for (int s = 0; s < m_; ++s)
        for (int e = s + 1; e <= m_; ++e)
          rank_[t][s][e] = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), iv[s][e]) - vals.begin());
      // A complete envy-free allocation gives every agent >= 1/n (her values
      // over all pieces sum to 1), and n_t pieces of value g cost n_t * g <= 1.
      const Rational lo(1, n);
      for (int k = 0; k < static_cast<int>(vals.size()); ++k)
        if (vals[k] >= lo && vals[k] * Rational(types_.agents_per_type[t]) <= Rational(1))
          viable_[t].push_back(k);
    }
    total_ = 1;
    for (int t = 0; t < p_; ++t) {
      if (viable_[t].empty()) {
        total_ = 0;
        break;
      }
      total_ *= viable_[t].size();
    }
  }

  [[nodiscard]] std::size_t guess_count() const { return total_; }

  /// Guess number `index` in lexicographic order (type 0 most significant).
  [[nodiscard]] std::vector<int> guess_at(std::size_t index) const {
    std::vector<int> g(p_);
    for (int t = p_ - 1; t >= 0; --t) {
      g[t] = viable_[t][index % viable_[t].size()];
      index /= viable_[t].size();
    }
    return g;
  }

  [[nodiscard]] EfGuess to_guess(const std::vector<int>& g) const {
    EfGuess out;
    for (int t = 0; t < p_; ++t) out.target.push_back(values_[t][g[t]]);
    return out;
  }

  /// Runs the covering DP for one guess; returns the pieces (begin, end, type)
  /// left to right on success.
  [[nodiscard]] std::optional<std::vector<std::array<int, 3>>> run(const std::vector<int>& g) const {
    // owners[s][e]: types that may hold order[s..e-1] under this guess.
    std::vector<std::vector<std::vector<int>>> owners(m_ + 1, std::vector<std::vector<int>>(m_ + 1));
    bool any_start = false;
    for (int s = 0; s < m_; ++s)
      for (int e = s + 1; e <= m_; ++e) {
        bool capped = true;
        for (int t = 0; t < p_ && capped; ++t) capped = rank_[t][s][e] <= g[t];
        if (!capped) break;  // longer intervals are worth at least as much
        for (int t = 0; t < p_; ++t)
          if (rank_[t][s][e] == g[t]) {
            owners[s][e].push_back(t);
            any_start = any_start || s == 0;
          }
      }
    if (!any_start) return std::nullopt;

    std::vector<int> base(p_), stride(p_);
    int states = 1;
    for (int t = 0; t < p_; ++t) {
      base[t] = types_.agents_per_type[t] + 1;
      stride[t] = states;
      states *= base[t];
    }
    struct Back {
      int from = -1, type = -1;
    };
    std::vector<std::vector<char>> reach(m_ + 1, std::vector<char>(states, 0));
    std::vector<std::vector<Back>> back(m_ + 1, std::vector<Back>(states));
    reach[0][0] = 1;
    for (int s = 0; s < m_; ++s)
      for (int st = 0; st < states; ++st) {
        if (!reach[s][st]) continue;
        for (int e = s + 1; e <= m_; ++e)
          for (int t : owners[s][e]) {
            if ((st / stride[t]) % base[t] == base[t] - 1) continue;  // all agents of type t served
            const int nx = st + stride[t];
            if (!reach[e][nx]) {
              reach[e][nx] = 1;
              back[e][nx] = {s, t};
            }
          }
      }
    for (int st = 0; st < states; ++st) {
      if (!reach[m_][st]) continue;
      bool ok = true;
      for (int t = 0; t < p_ && ok; ++t) {
        const int j = (st / stride[t]) % base[t];
        ok = j == types_.agents_per_type[t] || (j < types_.agents_per_type[t] && values_[t][g[t]].is_zero());
      }
      if (!ok) continue;
      std::vector<std::array<int, 3>> pieces;
      for (int e = m_, cur = st; e > 0;) {
        auto b = back[e][cur];
        pieces.push_back({b.from, e, b.type});
        cur -= stride[b.type];
        e = b.from;
      }
      std::reverse(pieces.begin(), pieces.end());
      return pieces;
    }
    return std::nullopt;
  }

  [[nodiscard]] Allocation allocation(const std::vector<std::array<int, 3>>& pieces) const {
    Allocation alloc = Allocation::empty(inst_.agent_count());
    std::vector<int> used(p_, 0);
    for (auto [s, e, t] : pieces) {
      const int agent = types_.members[t][used[t]++];
      for (int k = s; k < e; ++k) alloc.bundles[agent].push_back(order_[k]);
    }
    return alloc;
  }

 private:
  const Instance& inst_;
  std::vector<Vertex> order_;
  AgentTypePartition types_;
  int m_ = 0, p_ = 0;
  std::vector<std::vector<std::vector<int>>> rank_;
  std::vector<std::vector<Rational>> values_;
  std::vector<std::vector<int>> viable_;
  std::size_t total_ = 0;
};

}  // namespace detail

inline EfPathResult ef_path_typed_detailed(const Instance& inst, int threads = 1) {
  detail::EfPathSearch search(inst);
  auto hit = first_index_where(search.guess_count(), threads,
                               [&](std::size_t k) { return search.run(search.guess_at(k)).has_value(); });
  if (!hit) return {make_report(inst, Method::ef_path, std::nullopt), std::nullopt};
  auto g = search.guess_at(*hit);
  auto pieces = search.run(g);
  return {make_report(inst, Method::ef_path, search.allocation(*pieces)), search.to_guess(g)};
}

inline SolveReport ef_path_typed(const Instance& inst, int threads = 1) {
  return ef_path_typed_detailed(inst, threads).report;
}

}  // namespace cfd
