// Weighted bipartite perfect matching over exact rationals.
//
// Shortest augmenting paths with vertex potentials (the Hungarian method),
// one left vertex at a time. Forbidden pairs are excluded edges rather than
// big-M costs, so infeasibility shows up as a left vertex from which no
// alternating path reaches a free right vertex.
#pragma once

#include <optional>
#include <vector>

#include "cfd/errors.hpp"
#include "cfd/rational.hpp"

namespace cfd {

enum class Objective { minimize, maximize };

struct MatchingProblem {
  int left_size = 0;
  int right_size = 0;
  /// weights[l][r]; std::nullopt marks a forbidden pair.
  std::vector<std::vector<std::optional<Rational>>> weights;
  Objective objective = Objective::minimize;
};

struct MatchingResult {
  std::vector<int> assignment;  // left -> right
  Rational total;
};

namespace detail {

using CostMatrix = std::vector<std::vector<std::optional<Rational>>>;

/// Minimum total of a matching saturating all rows, or nullopt.
inline std::optional<Rational> min_cost_total(const CostMatrix& cost, int rows, int cols,
                                              std::vector<int>* assignment = nullptr) {
  if (rows == 0) {
    if (assignment) assignment->clear();
    return Rational(0);
  }
  if (rows > cols) return std::nullopt;
  std::vector<Rational> u(rows + 1), v(cols + 1);
  std::vector<int> p(cols + 1, 0), way(cols + 1, 0);
  for (int i = 1; i <= rows; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::optional<Rational>> minv(cols + 1);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      std::optional<Rational> delta;
      int j1 = -1;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        if (const auto& c = cost[i0 - 1][j - 1]) {
          Rational cur = *c - u[i0] - v[j];
          if (!minv[j] || cur < *minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] && (!delta || *minv[j] < *delta)) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0) return std::nullopt;  // no augmenting path from row i
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assign(rows, -1);
  for (int j = 1; j <= cols; ++j)
    if (p[j] != 0) assign[p[j] - 1] = j - 1;
  Rational total;
  for (int i = 0; i < rows; ++i) total += *cost[i][assign[i]];
  if (assignment) *assignment = std::move(assign);
  return total;
}

}  // namespace detail

/// Optimal matching saturating the left side, or nullopt if none avoids the
/// forbidden pairs. Among optimal matchings the lexicographically smallest
/// assignment vector is returned.
inline std::optional<MatchingResult> solve_matching(const MatchingProblem& p) {
  if (p.left_size > p.right_size) throw InputError("matching needs left_size <= right_size");
  if (static_cast<int>(p.weights.size()) != p.left_size) throw InputError("weight matrix has wrong row count");
  for (const auto& row : p.weights)
    if (static_cast<int>(row.size()) != p.right_size) throw InputError("weight matrix has wrong column count");

  detail::CostMatrix cost = p.weights;
  if (p.objective == Objective::maximize)
    for (auto& row : cost)
      for (auto& w : row)
        if (w) w = -*w;

  auto best = detail::min_cost_total(cost, p.left_size, p.right_size);
  if (!best) return std::nullopt;

  // Fix rows one at a time to the smallest column that still admits an
  // optimal completion.
  MatchingResult result;
  result.assignment.assign(p.left_size, -1);
  for (int r = 0; r < p.left_size; ++r) {
    for (int c = 0; c < p.right_size; ++c) {
      if (!cost[r][c]) continue;
      bool taken = false;
      for (int q = 0; q < r; ++q) taken = taken || result.assignment[q] == c;
      if (taken) continue;
      detail::CostMatrix trial = cost;
      for (int cc = 0; cc < p.right_size; ++cc)
        if (cc != c) trial[r][cc].reset();
      for (int rr = r + 1; rr < p.left_size; ++rr) trial[rr][c].reset();
      auto t = detail::min_cost_total(trial, p.left_size, p.right_size);
      if (t && *t == *best) {
        result.assignment[r] = c;
        cost = std::move(trial);
        break;
      }
    }
  }
  for (int r = 0; r < p.left_size; ++r) result.total += *p.weights[r][result.assignment[r]];
  return result;
}

}  // namespace cfd
