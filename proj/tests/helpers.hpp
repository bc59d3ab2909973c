#pragma once

#include <string>
#include <vector>

#include "cfd/cfd.hpp"

namespace cfd::testing {

/// Utilities row[i] / denom for every agent.
inline Instance make_instance(const ItemGraph& g, const std::vector<std::vector<long>>& rows, long denom) {
  std::vector<AgentSpec> agents;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    AgentSpec spec{"a" + std::to_string(a + 1), {}};
    for (long x : rows[a]) spec.utilities.emplace_back(x, denom);
    agents.push_back(std::move(spec));
  }
  return Instance(g, std::move(agents));
}

inline Allocation bundles(std::vector<VertexSet> b) { return Allocation{std::move(b)}; }

inline Rational q(long p, long d = 1) { return Rational(p, d); }

}  // namespace cfd::testing
