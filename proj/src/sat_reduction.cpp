#include "spround/sat_reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "spround/shortest_paths.hpp"

namespace spround {

namespace {

std::int64_t parse_int(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw InputError(line, "expected an integer, got '" + token + "'");
  }
  return value;
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  bool have_header = false;
  std::int64_t declared_clauses = 0;
  Clause current;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream line(text);
    std::string token;
    if (!(line >> token)) continue;
    if (token == "c") continue;
    if (token == "%") break;
    if (token == "p") {
      if (have_header) throw InputError(line_no, "second 'p' header");
      std::string format, n, m, extra;
      if (!(line >> format >> n >> m) || format != "cnf" || (line >> extra)) {
        throw InputError(line_no, "expected 'p cnf <variables> <clauses>'");
      }
      std::int64_t variables = parse_int(n, line_no);
      declared_clauses = parse_int(m, line_no);
      if (variables < 0 || declared_clauses < 0 || variables > 1'000'000) {
        throw InputError(line_no, "header counts out of range");
      }
      formula.variable_count = static_cast<std::uint32_t>(variables);
      have_header = true;
      continue;
    }
    if (!have_header) throw InputError(line_no, "clause before 'p cnf' header");
    do {
      std::int64_t value = parse_int(token, line_no);
      if (value == 0) {
        formula.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      std::int64_t variable = std::llabs(value);
      if (variable > formula.variable_count) {
        throw InputError(line_no, "literal " + token + " exceeds the declared " +
                                      std::to_string(formula.variable_count) + " variables");
      }
      current.push_back(Literal{static_cast<std::uint32_t>(variable), value < 0});
    } while (line >> token);
  }
  if (!have_header) throw InputError(0, "missing 'p cnf' header");
  if (!current.empty()) throw InputError(line_no, "last clause is not terminated by 0");
  if (static_cast<std::int64_t>(formula.clauses.size()) != declared_clauses) {
    throw InputError(0, "header declares " + std::to_string(declared_clauses) +
                            " clauses but the file has " +
                            std::to_string(formula.clauses.size()));
  }
  return formula;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string serialize_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variable_count << ' ' << formula.clauses.size() << '\n';
  for (const Clause& clause : formula.clauses) {
    for (const Literal& lit : clause) out << (lit.negated ? "-" : "") << lit.variable << ' ';
    out << "0\n";
  }
  return out.str();
}

bool is_normalized(const CnfFormula& formula) {
  for (const Clause& clause : formula.clauses) {
    if (clause.size() != 3) return false;
    for (const Literal& lit : clause) {
      if (lit.variable == 0 || lit.variable > formula.variable_count) return false;
    }
    if (clause[0].variable == clause[1].variable || clause[0].variable == clause[2].variable ||
        clause[1].variable == clause[2].variable) {
      return false;
    }
  }
  return true;
}

CnfFormula normalize_cnf(const CnfFormula& formula) {
  const std::uint32_t a = formula.variable_count + 1, b = a + 1, c = a + 2;
  CnfFormula out;
  out.variable_count = formula.variable_count;
  bool replaced = false;
  for (const Clause& clause : formula.clauses) {
    if (clause.size() != 3) {
      throw std::invalid_argument("clause with " + std::to_string(clause.size()) +
                                  " literals; every clause needs exactly 3");
    }
    bool tautology = false;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        if (clause[i].variable == clause[j].variable && clause[i].negated != clause[j].negated) {
          tautology = true;
        }
      }
    }
    if (tautology) continue;
    Clause fixed;
    std::uint32_t copies = 0;
    for (const Literal& lit : clause) {
      if (std::find(fixed.begin(), fixed.end(), lit) != fixed.end()) {
        fixed.push_back(Literal{copies++ == 0 ? b : c, false});
        replaced = true;
      } else {
        fixed.push_back(lit);
      }
    }
    out.clauses.push_back(std::move(fixed));
  }
  if (replaced) {
    out.variable_count = c;
    // Every assignment of a, b, c violates one of these unless b = c = 0.
    const bool sign[6][3] = {{true, true, true},    {true, true, false},  {true, false, true},
                             {false, true, true},   {false, true, false}, {false, false, true}};
    for (const auto& s : sign) {
      out.clauses.push_back({Literal{a, s[0]}, Literal{b, s[1]}, Literal{c, s[2]}});
    }
  }
  return out;
}

bool satisfies(const CnfFormula& formula, const std::vector<bool>& assignment) {
  if (assignment.size() != formula.variable_count) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                " values for " + std::to_string(formula.variable_count) +
                                " variables");
  }
  return std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const Clause& clause) {
    return std::any_of(clause.begin(), clause.end(), [&](const Literal& lit) {
      return assignment[lit.variable - 1] != lit.negated;
    });
  });
}

std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& formula) {
  const std::uint32_t n = formula.variable_count;
  if (n > 30) throw std::invalid_argument("too many variables for exhaustive search");
  std::vector<bool> assignment(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::uint32_t i = 0; i < n; ++i) assignment[i] = (bits >> i) & 1;
    if (satisfies(formula, assignment)) return assignment;
  }
  return std::nullopt;
}

std::string_view to_string(EdgeRole role) {
  switch (role) {
    case EdgeRole::triangle: return "triangle";
    case EdgeRole::variable_anchor: return "variable_anchor";
    case EdgeRole::non_triangle: return "non_triangle";
    case EdgeRole::inverter: return "inverter";
    case EdgeRole::nonagon: return "nonagon";
    case EdgeRole::handle: return "handle";
    case EdgeRole::center: return "center";
    case EdgeRole::clause_variable: return "clause_variable";
    case EdgeRole::shortcut: return "shortcut";
  }
  return "?";
}

EdgeRole parse_edge_role(std::string_view text) {
  for (EdgeRole role : {EdgeRole::triangle, EdgeRole::variable_anchor, EdgeRole::non_triangle,
                        EdgeRole::inverter, EdgeRole::nonagon, EdgeRole::handle, EdgeRole::center,
                        EdgeRole::clause_variable, EdgeRole::shortcut}) {
    if (to_string(role) == text) return role;
  }
  throw std::invalid_argument("unknown edge role '" + std::string(text) + "'");
}

EdgeId GadgetGraph::anchor_edge(std::uint32_t variable) const {
  if (variable == 0 || variable > variables.size() || !variables[variable - 1]) {
    throw std::out_of_range("variable " + std::to_string(variable) + " has no gadget");
  }
  const VariableGadget& vg = *variables[variable - 1];
  return *graph.find_edge(vg.anchor, vg.left.front());
}

EdgeId GadgetGraph::handle_edge(std::uint32_t clause, std::uint32_t t) const {
  if (clause >= clauses.size() || t < 1 || t > 3) throw std::out_of_range("no such handle");
  const ClauseGadget& cg = clauses[clause];
  return *graph.find_edge(cg.cycle[3 * (t - 1)], cg.knobs[t - 1]);
}

namespace {

class Builder {
 public:
  VertexId vertex() { return next_++; }

  void edge(VertexId u, VertexId v, const Rational& w, EdgeLabel label) {
    edges_.push_back(Edge{std::min(u, v), std::max(u, v), w});
    labels_.push_back(label);
  }

  VariableGadget variable_gadget(std::uint32_t variable, const std::vector<bool>& negated) {
    const std::uint32_t h = static_cast<std::uint32_t>(negated.size());
    const Rational& w = gadget_edge_weight();
    VariableGadget g;
    g.variable = variable;
    g.anchor = vertex();
    for (std::uint32_t k = 0; k < h; ++k) {
      g.left.push_back(vertex());
      g.base.push_back(vertex());
      g.right.push_back(vertex());
      g.inverter.push_back(negated[k] ? vertex() : kNoVertex);
    }
    g.end = vertex();
    edge(g.anchor, g.left[0], w, {EdgeRole::variable_anchor, variable, 0});
    for (std::uint32_t k = 0; k < h; ++k) {
      EdgeLabel tri{EdgeRole::triangle, variable, k + 1};
      edge(g.left[k], g.right[k], w, tri);
      edge(g.left[k], g.base[k], w, tri);
      edge(g.right[k], g.base[k], w, tri);
      VertexId next = k + 1 < h ? g.left[k + 1] : g.end;
      edge(g.right[k], next, w, {EdgeRole::non_triangle, variable, k + 1});
      if (negated[k]) edge(g.base[k], g.inverter[k], w, {EdgeRole::inverter, variable, k + 1});
    }
    for (VertexId v = g.anchor; v <= g.end; ++v) g.vertices.push_back(v);
    return g;
  }

  ClauseGadget clause_gadget(std::uint32_t j, const std::array<Literal, 3>& literals) {
    ClauseGadget g;
    g.clause = j;
    g.literals = literals;
    for (auto& q : g.cycle) q = vertex();
    for (auto& c : g.knobs) c = vertex();
    g.center = vertex();
    for (std::uint32_t p = 0; p < 9; ++p) {
      edge(g.cycle[p], g.cycle[(p + 1) % 9], nonagon_edge_weight(), {EdgeRole::nonagon, j, p});
    }
    for (std::uint32_t t = 1; t <= 3; ++t) {
      edge(g.cycle[3 * (t - 1)], g.knobs[t - 1], gadget_edge_weight(), {EdgeRole::handle, j, t});
    }
    for (std::uint32_t p = 0; p < 9; ++p) {
      edge(g.center, g.cycle[p], Rational(kCenterEdgeWeight), {EdgeRole::center, j, p});
    }
    for (VertexId v = g.cycle[0]; v <= g.center; ++v) g.vertices.push_back(v);
    return g;
  }

  GadgetGraph finish(GadgetGraph g) {
    g.graph = WeightedGraph(next_, edges_);
    g.labels.assign(g.graph.edge_count(), EdgeLabel{});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      g.labels[*g.graph.find_edge(edges_[i].u, edges_[i].v)] = labels_[i];
    }
    return g;
  }

 private:
  VertexId next_ = 0;
  std::vector<Edge> edges_;
  std::vector<EdgeLabel> labels_;
};

std::uint32_t max_variable(const std::array<Literal, 3>& literals) {
  std::uint32_t n = 0;
  for (const Literal& lit : literals) n = std::max(n, lit.variable);
  return n;
}

}  // namespace

GadgetGraph build_variable_gadget(std::uint32_t h, const std::vector<std::uint32_t>& negated) {
  if (h == 0) throw std::invalid_argument("a variable gadget needs at least one occurrence");
  std::vector<bool> flags(h, false);
  for (std::uint32_t k : negated) {
    if (k < 1 || k > h) throw std::invalid_argument("negated position out of range");
    flags[k - 1] = true;
  }
  Builder b;
  GadgetGraph g;
  g.variable_count = 1;
  g.variables.push_back(b.variable_gadget(1, flags));
  return b.finish(std::move(g));
}

GadgetGraph build_clause_gadget(std::uint32_t j, std::array<Literal, 3> literals) {
  Builder b;
  GadgetGraph g;
  g.variable_count = max_variable(literals);
  g.variables.resize(g.variable_count);
  g.clauses.push_back(b.clause_gadget(j, literals));
  return b.finish(std::move(g));
}

GadgetGraph build_gadget_pair(bool negated, std::uint32_t t, const Rational& D) {
  if (t < 1 || t > 3) throw std::invalid_argument("handle number must be 1, 2 or 3");
  std::array<Literal, 3> literals{Literal{2, false}, Literal{3, false}, Literal{3, false}};
  // x_1 at position t, fillers x_2, x_3 elsewhere.
  std::uint32_t filler = 2;
  for (std::uint32_t s = 1; s <= 3; ++s) {
    literals[s - 1] = s == t ? Literal{1, negated} : Literal{filler++, false};
  }
  Builder b;
  GadgetGraph g;
  g.D = D;
  g.variable_count = 3;
  g.variables.resize(3);
  g.variables[0] = b.variable_gadget(1, {negated});
  g.clauses.push_back(b.clause_gadget(0, literals));
  const VariableGadget& vg = *g.variables[0];
  VertexId from = negated ? vg.inverter[0] : vg.base[0];
  b.edge(from, g.clauses[0].knobs[t - 1], D, {EdgeRole::clause_variable, 1, 1});
  return b.finish(std::move(g));
}

GadgetGraph build_reduction(const CnfFormula& formula) {
  if (!is_normalized(formula)) {
    throw std::invalid_argument(
        "formula is not normalized: every clause needs three literals over distinct variables");
  }
  const std::uint32_t n = formula.variable_count;
  const std::size_t m = formula.clauses.size();

  struct Occurrence {
    std::uint32_t clause, t;
    bool negated;
  };
  std::vector<std::vector<Occurrence>> occurrences(n);
  for (std::uint32_t j = 0; j < m; ++j) {
    for (std::uint32_t t = 1; t <= 3; ++t) {
      const Literal& lit = formula.clauses[j][t - 1];
      occurrences[lit.variable - 1].push_back({j, t, lit.negated});
    }
  }

  Builder b;
  GadgetGraph g;
  g.D = Rational(5 * static_cast<std::int64_t>(m) + 20);
  g.variable_count = n;
  g.variables.resize(n);
  for (std::uint32_t i = 1; i <= n; ++i) {
    const auto& occ = occurrences[i - 1];
    if (occ.empty()) continue;
    std::vector<bool> flags;
    for (const auto& o : occ) flags.push_back(o.negated);
    g.variables[i - 1] = b.variable_gadget(i, flags);
  }
  for (std::uint32_t j = 0; j < m; ++j) {
    const Clause& clause = formula.clauses[j];
    g.clauses.push_back(b.clause_gadget(j, {clause[0], clause[1], clause[2]}));
  }

  for (std::uint32_t i = 1; i <= n; ++i) {
    const auto& occ = occurrences[i - 1];
    for (std::uint32_t k = 0; k < occ.size(); ++k) {
      const VariableGadget& vg = *g.variables[i - 1];
      VertexId from = occ[k].negated ? vg.inverter[k] : vg.base[k];
      b.edge(from, g.clauses[occ[k].clause].knobs[occ[k].t - 1], g.D,
             {EdgeRole::clause_variable, i, k + 1});
    }
  }

  // Gadget membership: variables as +i, clauses as -(j+1).
  std::size_t vertex_total = 0;
  for (const auto& vg : g.variables) {
    if (vg) vertex_total += vg->vertices.size();
  }
  for (const auto& cg : g.clauses) vertex_total += cg.vertices.size();
  std::vector<std::int64_t> owner(vertex_total, 0);
  for (const auto& vg : g.variables) {
    if (!vg) continue;
    for (VertexId v : vg->vertices) owner[v] = vg->variable;
  }
  for (const auto& cg : g.clauses) {
    for (VertexId v : cg.vertices) owner[v] = -static_cast<std::int64_t>(cg.clause) - 1;
  }
  auto contains = [&](std::uint32_t clause, std::int64_t variable) {
    for (const Literal& lit : formula.clauses[clause]) {
      if (lit.variable == variable) return true;
    }
    return false;
  };
  const Rational shortcut = 2 * g.D;
  for (VertexId u = 0; u < vertex_total; ++u) {
    for (VertexId v = u + 1; v < vertex_total; ++v) {
      std::int64_t a = owner[u], c = owner[v];
      if (a == c) continue;
      bool add;
      if (a > 0 && c > 0) {
        add = true;
      } else if (a < 0 && c < 0) {
        add = true;
      } else {
        std::int64_t variable = a > 0 ? a : c;
        std::int64_t clause = -(a < 0 ? a : c) - 1;
        add = !contains(static_cast<std::uint32_t>(clause), variable);
      }
      if (add) b.edge(u, v, shortcut, {EdgeRole::shortcut, 0, 0});
    }
  }
  return b.finish(std::move(g));
}

Rounding rounding_from_assignment(const GadgetGraph& g, const std::vector<bool>& assignment) {
  if (assignment.size() != g.variable_count) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                " values for " + std::to_string(g.variable_count) + " variables");
  }
  auto value = [&](const Literal& lit) { return assignment[lit.variable - 1] != lit.negated; };
  // A handle is rounded up exactly when its literal is false.
  auto handle_up = [&](const ClauseGadget& cg, std::uint32_t t) {
    return !value(cg.literals[t - 1]);
  };

  Rounding r;
  r.values.resize(g.graph.edge_count());
  for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
    const Rational& w = g.graph.edge(e).weight;
    const EdgeLabel& label = g.labels[e];
    std::optional<bool> up;
    switch (label.role) {
      case EdgeRole::triangle:
        up = assignment[label.gadget - 1];
        break;
      case EdgeRole::variable_anchor:
      case EdgeRole::non_triangle:
      case EdgeRole::inverter:
        up = !assignment[label.gadget - 1];
        break;
      case EdgeRole::handle:
        up = handle_up(g.clauses[label.gadget], label.index);
        break;
      case EdgeRole::nonagon: {
        const ClauseGadget& cg = g.clauses[label.gadget];
        std::uint32_t t = label.index / 3 + 1;
        std::uint32_t next = t % 3 + 1;
        bool both_up = handle_up(cg, t) && handle_up(cg, next);
        // Up/down pattern along the three edges between the two handles.
        static constexpr bool kBothUp[3] = {false, true, false};
        static constexpr bool kOtherwise[3] = {true, false, true};
        up = (both_up ? kBothUp : kOtherwise)[label.index % 3];
        break;
      }
      default:
        break;
    }
    if (up) {
      r.values[e] = to_int64(*up ? ceil(w) : floor(w));
    } else {
      if (denominator(w) != 1) {
        throw std::logic_error("fractional weight on an edge without a rounding rule");
      }
      r.values[e] = to_int64(numerator(w));
    }
  }
  return r;
}

std::vector<bool> assignment_from_rounding(const GadgetGraph& g, const Rounding& rounding) {
  if (rounding.values.size() != g.graph.edge_count()) {
    throw std::invalid_argument("rounding does not match the graph");
  }
  std::vector<bool> assignment(g.variable_count, false);
  const std::int64_t down = to_int64(floor(gadget_edge_weight()));
  const std::int64_t up = to_int64(ceil(gadget_edge_weight()));
  for (std::uint32_t i = 1; i <= g.variable_count; ++i) {
    if (!g.variables[i - 1]) continue;
    std::int64_t value = rounding.values[g.anchor_edge(i)];
    if (value != down && value != up) {
      throw std::invalid_argument("edge at v_(" + std::to_string(i) + ",0) rounded to " +
                                  std::to_string(value) + ", expected " + std::to_string(down) +
                                  " or " + std::to_string(up));
    }
    assignment[i - 1] = value == down;
  }
  return assignment;
}

Rational induced_diameter(const WeightedGraph& graph, const std::vector<VertexId>& vertices) {
  std::vector<VertexId> local(graph.vertex_count(), kNoVertex);
  for (std::size_t k = 0; k < vertices.size(); ++k) local[vertices[k]] = static_cast<VertexId>(k);
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges()) {
    if (local[e.u] != kNoVertex && local[e.v] != kNoVertex) {
      edges.push_back(Edge{local[e.u], local[e.v], e.weight});
    }
  }
  WeightedGraph sub(vertices.size(), std::move(edges));
  Rational diameter = 0;
  for (const auto& row : all_pairs_shortest(sub)) {
    for (const auto& d : row) {
      if (d && *d > diameter) diameter = *d;
    }
  }
  return diameter;
}

CnfFormula formula_of(const GadgetGraph& g) {
  CnfFormula f;
  f.variable_count = g.variable_count;
  for (const ClauseGadget& cg : g.clauses) {
    f.clauses.push_back(Clause(cg.literals.begin(), cg.literals.end()));
  }
  return f;
}

}  // namespace spround
