#include "spround/json_io.hpp"

#include <json.hpp>

namespace spround {

using nlohmann::json;

namespace {

json literal_json(const Literal& lit) {
  return lit.negated ? -static_cast<std::int64_t>(lit.variable)
                     : static_cast<std::int64_t>(lit.variable);
}

json vertex_list(const std::vector<VertexId>& vertices) {
  json out = json::array();
  for (VertexId v : vertices) {
    if (v == kNoVertex) {
      out.push_back(nullptr);
    } else {
      out.push_back(v);
    }
  }
  return out;
}

template <class T>
T get_member(const json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) {
    throw std::invalid_argument(std::string("missing member '") + key + "'");
  }
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("member '") + key + "' has the wrong type");
  }
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string rounding_to_json(const WeightedGraph& graph, const Rounding& rounding,
                             const std::optional<Rational>& epsilon) {
  json doc = json::object();
  if (epsilon) doc["epsilon"] = to_string(*epsilon);
  json entries = json::array();
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edge(e);
    entries.push_back({{"u", edge.u}, {"v", edge.v}, {"value", rounding.values.at(e)}});
  }
  doc["rounding"] = std::move(entries);
  return doc.dump(2);
}

Rounding rounding_from_json(const WeightedGraph& graph, std::string_view text) {
  json doc = parse_document(text);
  const json* entries = &doc;
  if (doc.is_object()) {
    if (!doc.contains("rounding")) throw std::invalid_argument("missing member 'rounding'");
    entries = &doc["rounding"];
  }
  if (!entries->is_array()) throw std::invalid_argument("rounding must be an array");
  Rounding r;
  r.values.assign(graph.edge_count(), -1);
  for (const json& entry : *entries) {
    auto u = get_member<std::int64_t>(entry, "u");
    auto v = get_member<std::int64_t>(entry, "v");
    auto value = get_member<std::int64_t>(entry, "value");
    if (u < 0 || v < 0 || u >= static_cast<std::int64_t>(graph.vertex_count()) ||
        v >= static_cast<std::int64_t>(graph.vertex_count())) {
      throw std::invalid_argument("rounding names a vertex outside the graph");
    }
    auto id = graph.find_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
    std::string name = "{" + std::to_string(u) + ", " + std::to_string(v) + "}";
    if (!id) throw std::invalid_argument("rounding names edge " + name + " not in the graph");
    if (r.values[*id] != -1) throw std::invalid_argument("edge " + name + " rounded twice");
    if (value < 0) throw std::invalid_argument("edge " + name + " rounded to a negative value");
    r.values[*id] = value;
  }
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (r.values[e] == -1) {
      throw std::invalid_argument("edge {" + std::to_string(graph.edge(e).u) + ", " +
                                  std::to_string(graph.edge(e).v) + "} has no rounded value");
    }
  }
  return r;
}

std::string report_to_json(const VerificationReport& report) {
  json doc = {
      {"level", std::string(to_string(report.level_checked))},
      {"comparison", std::string(to_string(report.comparison))},
      {"epsilon", to_string(report.epsilon)},
      {"passed", report.passed},
      {"worst_error", to_string(report.worst_error)},
  };
  if (report.witness) {
    doc["witness"] = {{"u", report.witness->u},
                      {"v", report.witness->v},
                      {"condition", report.witness->condition}};
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump(2);
}

std::string report_to_text(const VerificationReport& report) {
  std::string out;
  out += "level: " + std::string(to_string(report.level_checked)) + "\n";
  out += "comparison: " + std::string(to_string(report.comparison)) + "\n";
  out += "epsilon: " + to_string(report.epsilon) + "\n";
  out += std::string("passed: ") + (report.passed ? "yes" : "no") + "\n";
  out += "worst error: " + to_string(report.worst_error) + "\n";
  if (report.witness) {
    out += "witness: " + std::to_string(report.witness->u) + " " +
           std::to_string(report.witness->v) + ": " + report.witness->condition + "\n";
  }
  return out;
}

std::string error_range_set_to_json(const ErrorRangeSet& set) {
  json out = json::array();
  for (const ErrorRange& r : set) out.push_back({to_string(r.lo), to_string(r.hi)});
  return out.dump();
}

std::string sidecar_to_json(const GadgetGraph& g) {
  json formula = json::array();
  for (const ClauseGadget& cg : g.clauses) {
    json clause = json::array();
    for (const Literal& lit : cg.literals) clause.push_back(literal_json(lit));
    formula.push_back(std::move(clause));
  }
  json variables = json::array();
  for (const auto& vg : g.variables) {
    if (!vg) continue;
    EdgeId anchor = g.anchor_edge(vg->variable);
    variables.push_back({{"variable", vg->variable},
                         {"anchor", vg->anchor},
                         {"end", vg->end},
                         {"left", vertex_list(vg->left)},
                         {"right", vertex_list(vg->right)},
                         {"base", vertex_list(vg->base)},
                         {"inverter", vertex_list(vg->inverter)},
                         {"anchor_edge", {g.graph.edge(anchor).u, g.graph.edge(anchor).v}}});
  }
  json clauses = json::array();
  for (const ClauseGadget& cg : g.clauses) {
    json handles = json::array();
    for (std::uint32_t t = 1; t <= 3; ++t) {
      const Edge& e = g.graph.edge(g.handle_edge(cg.clause, t));
      handles.push_back({e.u, e.v});
    }
    clauses.push_back({{"clause", cg.clause},
                       {"cycle", vertex_list({cg.cycle.begin(), cg.cycle.end()})},
                       {"knobs", vertex_list({cg.knobs.begin(), cg.knobs.end()})},
                       {"center", cg.center},
                       {"handles", std::move(handles)}});
  }
  json edges = json::array();
  for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
    const Edge& edge = g.graph.edge(e);
    const EdgeLabel& label = g.labels[e];
    edges.push_back({{"u", edge.u},
                     {"v", edge.v},
                     {"role", std::string(to_string(label.role))},
                     {"gadget", label.gadget},
                     {"index", label.index}});
  }
  json doc = {{"D", to_string(g.D)},
              {"shortcut_weight", to_string(2 * g.D)},
              {"variable_count", g.variable_count},
              {"vertex_count", g.graph.vertex_count()},
              {"formula", std::move(formula)},
              {"variables", std::move(variables)},
              {"clauses", std::move(clauses)},
              {"edges", std::move(edges)}};
  return doc.dump(2);
}

GadgetGraph gadget_graph_from_sidecar(std::string_view text) {
  json doc = parse_document(text);
  CnfFormula formula;
  formula.variable_count = get_member<std::uint32_t>(doc, "variable_count");
  for (const json& clause : get_member<json>(doc, "formula")) {
    Clause c;
    for (const json& lit : clause) {
      std::int64_t value = lit.get<std::int64_t>();
      if (value == 0) throw std::invalid_argument("literal 0 in sidecar formula");
      c.push_back(Literal{static_cast<std::uint32_t>(value < 0 ? -value : value), value < 0});
    }
    formula.clauses.push_back(std::move(c));
  }
  GadgetGraph g = build_reduction(formula);
  if (parse_rational(get_member<std::string>(doc, "D")) != g.D) {
    throw std::invalid_argument("sidecar D does not match its formula");
  }
  const json edges = get_member<json>(doc, "edges");
  if (edges.size() != g.graph.edge_count() ||
      get_member<std::size_t>(doc, "vertex_count") != g.graph.vertex_count()) {
    throw std::invalid_argument("sidecar graph size does not match its formula");
  }
  for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
    const Edge& edge = g.graph.edge(e);
    const json& entry = edges[e];
    if (get_member<VertexId>(entry, "u") != edge.u || get_member<VertexId>(entry, "v") != edge.v ||
        parse_edge_role(get_member<std::string>(entry, "role")) != g.labels[e].role) {
      throw std::invalid_argument("sidecar edge " + std::to_string(e) +
                                  " does not match the reduction of its formula");
    }
  }
  return g;
}

}  // namespace spround
