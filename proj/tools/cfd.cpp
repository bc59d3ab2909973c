// cfd: command-line front end.
//
//   cfd solve --problem prop|ef_complete|mms [--method M] INSTANCE
//   cfd verify --allocation ALLOC.json [--mms] INSTANCE
//   cfd mms-values INSTANCE
//   cfd generate random|x3c|partition|indepset|cycle8 [options]
//   cfd classify INSTANCE
//
// Exit codes: 0 yes / valid, 1 no / invalid, 2 input or routing error,
// 3 oracle budget exceeded.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfd/cfd.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Common {
  std::string input;
  std::string output;
  int max_items = cfd::OracleBudget{}.max_items;
  int max_agents = cfd::OracleBudget{}.max_agents;
  std::uint64_t max_enumerated = cfd::OracleBudget{}.max_enumerated;
  int threads = 1;

  [[nodiscard]] cfd::OracleBudget budget() const { return {max_items, max_agents, max_enumerated}; }
};

void add_common(CLI::App* cmd, Common& c, bool needs_input) {
  auto* in = cmd->add_option("input,--input", c.input, "instance JSON file");
  if (needs_input) in->required();
  cmd->add_option("--output,-o", c.output, "write JSON here instead of stdout");
  cmd->add_option("--max-items", c.max_items, "oracle item budget");
  cmd->add_option("--max-agents", c.max_agents, "oracle agent budget");
  cmd->add_option("--max-enumerated", c.max_enumerated, "oracle enumeration cap");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void emit(const Common& c, const cfd::Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw cfd::InputError("cannot write '" + c.output + "'");
  out << text;
}

std::vector<int> parse_ints(const std::string& text, char sep) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cfd::InputError("expected an integer, got '" + item + "'");
    }
  }
  return out;
}

/// MMS values per agent: binary search on trees, enumeration otherwise.
std::pair<std::vector<cfd::Rational>, std::string> mms_values(const cfd::Instance& inst, const Common& c) {
  if (classify(inst.graph()).is_tree) {
    if (inst.item_count() < inst.agent_count())
      throw cfd::InputError("maximin share needs at least as many items as agents");
    auto v = cfd::parallel_map<cfd::Rational>(inst.agent_count(), c.threads, [&](std::size_t i) {
      return cfd::mms_value_tree(inst, static_cast<int>(i));
    });
    return {std::move(v), "tree"};
  }
  return {cfd::oracle_mms_values(inst, c.budget()), "oracle"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connected fair division of indivisible items on graphs"};
  app.require_subcommand(1);

  Common common;
  std::string problem_name, method_name = "auto", allocation_path;
  bool check_mms = false;

  auto* solve = app.add_subcommand("solve", "decide a problem and print a report");
  add_common(solve, common, true);
  solve->add_option("--problem", problem_name, "prop | ef_complete | mms")->required();
  solve->add_option("--method", method_name, "auto | oracle | greedy | path-dp | star | tree-fpt | ef-path | mms-tree");

  auto* verify = app.add_subcommand("verify", "check an allocation against every solution concept");
  add_common(verify, common, true);
  verify->add_option("--allocation,-a", allocation_path, "allocation JSON file")->required();
  verify->add_flag("--mms", check_mms, "also check the maximin share guarantee");

  auto* mms = app.add_subcommand("mms-values", "exact maximin share of every agent");
  add_common(mms, common, true);

  auto* classify_cmd = app.add_subcommand("classify", "report the graph class and agent types");
  add_common(classify_cmd, common, true);

  auto* generate = app.add_subcommand("generate", "emit an instance JSON");
  generate->require_subcommand(1);
  add_common(generate, common, false);
  std::uint64_t seed = 1;
  std::string kind_name = "tree";
  int m = 6, n = 3, denom = 12, types = 0, s = 1, k = 1, vertex_count = 1;
  std::string triples_text, values_text, edges_text;

  auto* g_random = generate->add_subcommand("random", "seeded random instance");
  g_random->add_option("--seed", seed);
  g_random->add_option("--class", kind_name, "path | star | tree | cycle | connected");
  g_random->add_option("--items,-m", m);
  g_random->add_option("--agents,-n", n);
  g_random->add_option("--denom-bound", denom);
  g_random->add_option("--types", types, "number of distinct utility vectors (0: one per agent)");

  auto* g_x3c = generate->add_subcommand("x3c", "proportionality on a path from Exact 3-Cover");
  g_x3c->add_option("--s", s)->required();
  g_x3c->add_option("--triples", triples_text, "1-based triples, e.g. 1,2,3;4,5,6")->required();

  auto* g_part = generate->add_subcommand("partition", "proportionality on a bipartite graph from Partition");
  g_part->add_option("--values", values_text, "positive integers, e.g. 1,1,2")->required();

  auto* g_is = generate->add_subcommand("indepset", "complete envy-freeness on a star from Independent Set");
  g_is->add_option("--vertices", vertex_count)->required();
  g_is->add_option("--edges", edges_text, "1-based edges, e.g. 1-2,2-3");
  g_is->add_option("--k", k)->required();

  auto* g_cycle8 = generate->add_subcommand("cycle8", "the 8-cycle instance without an MMS allocation");
  for (auto* sub : {g_random, g_x3c, g_part, g_is, g_cycle8}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (solve->parsed()) {
      const auto inst = cfd::load_instance(common.input);
      auto problem = cfd::parse_problem(problem_name);
      if (!problem) throw cfd::InputError("unknown problem '" + problem_name + "'");
      cfd::SolveOptions opt{common.budget(), common.threads};
      cfd::SolveReport report;
      if (method_name == "auto") {
        report = cfd::dispatch(inst, *problem, opt);
      } else {
        auto method = cfd::parse_method(method_name);
        if (!method) throw cfd::RoutingError("unknown method '" + method_name + "'");
        report = cfd::solve_with(inst, *problem, *method, opt);
      }
      emit(common, cfd::report_to_json(inst, report));
      return report.decision ? kExitYes : kExitNo;
    }

    if (verify->parsed()) {
      const auto inst = cfd::load_instance(common.input);
      const auto alloc = cfd::allocation_from_json(inst, cfd::read_json_file(allocation_path));
      const bool valid = cfd::is_valid(inst, alloc);
      cfd::Json out{{"valid", valid},
                    {"proportional", cfd::is_proportional(inst, alloc)},
                    {"envy_free", cfd::is_envy_free(inst, alloc)},
                    {"complete", cfd::is_complete(inst, alloc)}};
      if (check_mms) {
        auto [values, how] = mms_values(inst, common);
        out["mms_ok"] = cfd::is_mms_allocation(inst, alloc, values);
      }
      emit(common, out);
      return valid ? kExitYes : kExitNo;
    }

    if (mms->parsed()) {
      const auto inst = cfd::load_instance(common.input);
      auto [values, how] = mms_values(inst, common);
      emit(common, cfd::Json{{"method", how}, {"values", cfd::values_json(inst, values)}});
      return kExitYes;
    }

    if (classify_cmd->parsed()) {
      const auto inst = cfd::load_instance(common.input);
      auto j = cfd::classify_to_json(inst.graph());
      j["agents"] = inst.agent_count();
      j["types"] = cfd::compute_type_partition(inst).type_count;
      emit(common, j);
      return kExitYes;
    }

    if (generate->parsed()) {
      std::optional<cfd::Instance> inst;
      if (g_random->parsed()) {
        auto kind = cfd::parse_graph_kind(kind_name);
        if (!kind) throw cfd::InputError("unknown graph class '" + kind_name + "'");
        inst = cfd::gen_random(seed, *kind, m, n, denom, types);
      } else if (g_x3c->parsed()) {
        cfd::X3cInstance x{s, {}};
        std::stringstream ss(triples_text);
        std::string t;
        while (std::getline(ss, t, ';')) {
          auto e = parse_ints(t, ',');
          if (e.size() != 3) throw cfd::InputError("each triple needs three elements");
          x.triples.push_back({e[0] - 1, e[1] - 1, e[2] - 1});
        }
        inst = cfd::gen_x3c_prop_path(x);
      } else if (g_part->parsed()) {
        inst = cfd::gen_partition_bipartite(cfd::make_partition(parse_ints(values_text, ',')));
      } else if (g_is->parsed()) {
        std::vector<cfd::ItemGraph::Edge> edges;
        std::stringstream ss(edges_text);
        std::string e;
        while (std::getline(ss, e, ',')) {
          auto ends = parse_ints(e, '-');
          if (ends.size() != 2) throw cfd::InputError("edges look like 1-2");
          edges.emplace_back(ends[0] - 1, ends[1] - 1);
        }
        if (vertex_count < 1) throw cfd::InputError("need at least one vertex");
        inst = cfd::gen_indepset_ef_star({cfd::ItemGraph::unlabeled(vertex_count, edges), k});
      } else {
        inst = cfd::fixture_cycle8();
      }
      emit(common, cfd::instance_to_json(*inst));
      return kExitYes;
    }
  } catch (const cfd::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
