// JSON encoding of instances, allocations, reports and traces. Rationals are
// always strings in lowest terms ("p/q" or an integer). Key order is fixed,
// so equal inputs give byte-identical output.
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfd/errors.hpp"
#include "cfd/graph.hpp"
#include "cfd/mms_tree.hpp"
#include "cfd/model.hpp"
#include "cfd/rational.hpp"

namespace cfd {

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("rational must be a \"p/q\" string, got " + j.dump());
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Json bundle_json(const Instance& inst, const VertexSet& bundle) {
  Json b = Json::array();
  for (Vertex v : bundle) b.push_back(inst.graph().label(v));
  return b;
}

}  // namespace detail

inline Json instance_to_json(const Instance& inst) {
  const ItemGraph& g = inst.graph();
  Json vertices = Json::array(), edges = Json::array();
  for (const auto& l : g.labels()) vertices.push_back(l);
  for (auto [a, b] : g.edges()) edges.push_back(Json::array({g.label(a), g.label(b)}));
  Json agents = Json::array();
  for (const auto& a : inst.agents()) {
    Json u = Json::object();
    for (Vertex v = 0; v < g.size(); ++v) u[g.label(v)] = a.utilities[v].fraction();
    agents.push_back(Json{{"name", a.name}, {"utilities", u}});
  }
  return Json{{"graph", Json{{"vertices", vertices}, {"edges", edges}}}, {"agents", agents}};
}

inline Instance instance_from_json(const Json& j) {
  const Json& graph = detail::field(j, "graph");
  const Json& vertices = detail::field(graph, "vertices");
  if (!vertices.is_array()) throw InputError("graph.vertices must be an array");
  std::vector<std::string> labels;
  for (const auto& v : vertices) {
    if (!v.is_string()) throw InputError("vertex labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  std::vector<ItemGraph::Edge> edge_list;
  {
    const ItemGraph names(labels, {});  // validates labels, resolves edge endpoints
    const Json& edges = graph.contains("edges") ? graph.at("edges") : Json::array();
    if (!edges.is_array()) throw InputError("graph.edges must be an array");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw InputError("each edge must be a pair of vertex labels");
      auto a = names.index_of(e[0].get<std::string>());
      auto b = names.index_of(e[1].get<std::string>());
      if (!a || !b) throw InputError("edge " + e.dump() + " names an unknown vertex");
      edge_list.emplace_back(*a, *b);
    }
  }
  ItemGraph g(labels, edge_list);

  const Json& agents = detail::field(j, "agents");
  if (!agents.is_array()) throw InputError("agents must be an array");
  std::vector<AgentSpec> specs;
  for (const auto& a : agents) {
    const Json& name = detail::field(a, "name");
    if (!name.is_string()) throw InputError("agent name must be a string");
    AgentSpec spec{name.get<std::string>(), std::vector<Rational>(g.size())};
    const Json& u = detail::field(a, "utilities");
    if (!u.is_object()) throw InputError("utilities must be an object keyed by vertex label");
    for (const auto& [label, value] : u.items()) {
      auto v = g.index_of(label);
      if (!v) throw InputError("agent '" + spec.name + "' values unknown vertex '" + label + "'");
      spec.utilities[*v] = detail::rational_from_json(value);
    }
    specs.push_back(std::move(spec));
  }
  return Instance(std::move(g), std::move(specs));
}

inline Json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  Json bundles = Json::object();
  for (int i = 0; i < inst.agent_count(); ++i) bundles[inst.agent(i).name] = detail::bundle_json(inst, alloc.bundles[i]);
  return Json{{"bundles", bundles}};
}

/// Agents missing from the map get an empty bundle. Overlaps are kept so that
/// verification can report them.
inline Allocation allocation_from_json(const Instance& inst, const Json& j) {
  const Json& bundles = detail::field(j, "bundles");
  if (!bundles.is_object()) throw InputError("bundles must be an object keyed by agent name");
  Allocation alloc = Allocation::empty(inst.agent_count());
  for (const auto& [name, items] : bundles.items()) {
    auto i = inst.agent_index(name);
    if (!i) throw InputError("unknown agent '" + name + "'");
    if (!items.is_array()) throw InputError("bundle of '" + name + "' must be an array");
    for (const auto& it : items) {
      if (!it.is_string()) throw InputError("bundle items must be vertex labels");
      auto v = inst.graph().index_of(it.get<std::string>());
      if (!v) throw InputError("unknown vertex '" + it.get<std::string>() + "'");
      alloc.bundles[*i].push_back(*v);
    }
  }
  return alloc;
}

inline Json values_json(const Instance& inst, const std::vector<Rational>& values) {
  Json out = Json::object();
  for (int i = 0; i < inst.agent_count(); ++i) out[inst.agent(i).name] = values[i].fraction();
  return out;
}

inline Json report_to_json(const Instance& inst, const SolveReport& r) {
  Json j;
  j["decision"] = r.decision ? "yes" : "no";
  j["method"] = std::string(to_string(r.method));
  j["allocation"] = r.witness ? allocation_to_json(inst, *r.witness) : Json(nullptr);
  j["values"] = r.witness ? values_json(inst, r.achieved) : Json::object();
  j["quotas"] = r.quotas ? values_json(inst, *r.quotas) : Json(nullptr);
  return j;
}

inline Json trace_to_json(const Instance& inst, const DiminisherTrace& trace) {
  Json out = Json::array();
  for (const auto& s : trace) {
    out.push_back(Json{{"round", s.round},
                       {"agent", inst.agent(s.agent).name},
                       {"vertex", s.vertex ? Json(inst.graph().label(*s.vertex)) : Json(nullptr)},
                       {"awarded", detail::bundle_json(inst, s.awarded)},
                       {"residual", detail::bundle_json(inst, s.residual)}});
  }
  return out;
}

inline Json classify_to_json(const ItemGraph& g) {
  const GraphClass c = classify(g);
  return Json{{"vertices", g.size()},      {"edges", g.edges().size()},   {"connected", c.is_connected},
              {"path", c.is_path},         {"star", c.is_star},           {"tree", c.is_tree},
              {"cycle", c.is_cycle},       {"bipartite", c.is_bipartite}};
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

}  // namespace cfd
