// Routing of a problem to the cheapest applicable solver.
#pragma once

#include <optional>
#include <string>

#include "cfd/ef_path.hpp"
#include "cfd/errors.hpp"
#include "cfd/mms_tree.hpp"
#include "cfd/model.hpp"
#include "cfd/oracle.hpp"
#include "cfd/prop_solvers.hpp"
#include "cfd/tree_fpt.hpp"

namespace cfd {

struct SolveOptions {
  OracleBudget budget;
  int threads = 1;
};

/// Method that `dispatch` picks for this problem and graph.
inline Method route(const Instance& inst, Problem problem) {
  const GraphClass c = classify(inst.graph());
  switch (problem) {
    case Problem::prop:
      if (c.is_path) return compute_type_partition(inst).type_count == 1 ? Method::greedy : Method::path_dp;
      if (c.is_star) return Method::star;
      if (c.is_tree && inst.agent_count() <= 20) return Method::tree_fpt;
      return Method::oracle;
    case Problem::ef_complete:
      return c.is_path ? Method::ef_path : Method::oracle;
    case Problem::mms:
      return c.is_tree ? Method::mms_tree : Method::oracle;
  }
  return Method::oracle;
}

/// Throws RoutingError unless `method` solves `problem` on this instance.
inline void check_method(const Instance& inst, Problem problem, Method method) {
  const GraphClass c = classify(inst.graph());
  auto fail = [&](const std::string& why) {
    throw RoutingError("method " + std::string(to_string(method)) + " cannot solve " +
                       std::string(to_string(problem)) + ": " + why);
  };
  if (method == Method::oracle) return;
  const bool prop_method = method == Method::greedy || method == Method::path_dp || method == Method::star ||
                           method == Method::tree_fpt;
  if (problem == Problem::prop && !prop_method) fail("wrong problem");
  if (problem == Problem::ef_complete && method != Method::ef_path) fail("wrong problem");
  if (problem == Problem::mms && method != Method::mms_tree) fail("wrong problem");
  switch (method) {
    case Method::greedy:
      if (!c.is_path) fail("graph is not a path");
      if (compute_type_partition(inst).type_count != 1) fail("agents are not all of one type");
      break;
    case Method::path_dp:
    case Method::ef_path:
      if (!c.is_path) fail("graph is not a path");
      break;
    case Method::star:
      if (!c.is_star) fail("graph is not a star");
      break;
    case Method::tree_fpt:
    case Method::mms_tree:
      if (!c.is_tree) fail("graph is not a tree");
      break;
    case Method::oracle:
      break;
  }
}

inline SolveReport solve_with(const Instance& inst, Problem problem, Method method, const SolveOptions& opt = {}) {
  check_method(inst, problem, method);
  switch (method) {
    case Method::greedy: return prop_path_greedy(inst);
    case Method::path_dp: return prop_path_typed(inst);
    case Method::star: return prop_star(inst);
    case Method::tree_fpt: return prop_tree_fpt(inst);
    case Method::ef_path: return ef_path_typed(inst, opt.threads);
    case Method::mms_tree: return solve_mms_tree(inst, opt.threads);
    case Method::oracle: break;
  }
  switch (problem) {
    case Problem::prop: return oracle_prop(inst, opt.budget);
    case Problem::ef_complete: return oracle_ef_complete(inst, opt.budget);
    case Problem::mms: return oracle_mms_exists(inst, opt.budget);
  }
  throw std::logic_error("unreachable");
}

inline SolveReport dispatch(const Instance& inst, Problem problem, const SolveOptions& opt = {}) {
  return solve_with(inst, problem, route(inst, problem), opt);
}

inline std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::oracle, Method::greedy, Method::path_dp, Method::star, Method::tree_fpt, Method::ef_path,
                   Method::mms_tree})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

inline std::optional<Problem> parse_problem(std::string_view s) {
  if (s == "prop") return Problem::prop;
  if (s == "ef_complete" || s == "ef-complete" || s == "ef") return Problem::ef_complete;
  if (s == "mms") return Problem::mms;
  return std::nullopt;
}

}  // namespace cfd
