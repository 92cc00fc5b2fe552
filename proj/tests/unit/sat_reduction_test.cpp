#include <doctest.h>

#include <map>

#include "spround/generators.hpp"
#include "spround/oracle.hpp"
#include "spround/sat_reduction.hpp"

using namespace spround;

namespace {

using Values = std::vector<std::int64_t>;

const char* const kFourVariableFormula = "p cnf 4 3\n1 2 -3 0\n1 3 -4 0\n-1 -3 4 0\n";

std::vector<Pin> handle_pins(const GadgetGraph& g, unsigned up_mask) {
  std::vector<Pin> pins;
  for (std::uint32_t t = 1; t <= 3; ++t) {
    const Edge& e = g.graph.edge(g.handle_edge(0, t));
    pins.push_back({e.key(), (up_mask >> (t - 1)) & 1 ? PinDirection::up : PinDirection::down});
  }
  return pins;
}

std::vector<Pin> center_pins(const GadgetGraph& g) {
  std::vector<Pin> pins;
  for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
    if (g.labels[e].role == EdgeRole::center) pins.push_back({g.graph.edge(e).key(), PinDirection::down});
  }
  return pins;
}

bool is_triangle(EdgeRole role) { return role == EdgeRole::triangle; }

// All passing roundings of a standalone variable gadget, by enumeration.
std::vector<Rounding> gadget_roundings(const GadgetGraph& g, const Rational& eps) {
  RoundingVerifier verifier(g.graph, eps, Level::strong, Comparison::strict);
  std::vector<Rounding> out;
  enumerate_roundings(g.graph, eps, Comparison::strict, [&](const Rounding& r) {
    if (verifier.passes(r)) out.push_back(r);
    return true;
  });
  return out;
}

std::vector<bool> bits(unsigned value, std::uint32_t n) {
  std::vector<bool> out(n);
  for (std::uint32_t i = 0; i < n; ++i) out[i] = (value >> i) & 1;
  return out;
}

}  // namespace

TEST_CASE("DIMACS parsing and serialization") {
  CnfFormula f = parse_dimacs("c comment\np cnf 4 3\n1 2 -3 0\n1 3\n-4 0 -1 -3 4 0\n");
  CHECK(f.variable_count == 4);
  REQUIRE(f.clauses.size() == 3);
  CHECK(f.clauses[1] == Clause{{1, false}, {3, false}, {4, true}});
  CHECK(f.clauses[2] == Clause{{1, true}, {3, true}, {4, false}});
  CHECK(parse_dimacs(serialize_dimacs(f)) == f);
  CHECK(f == parse_dimacs(kFourVariableFormula));

  for (const char* bad : {"1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 1\n1 2\n", "p cnf 2 2\n1 2 0\n",
                          "p cnf 2 1\n1 x 0\n", "p dnf 2 1\n1 2 0\n"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_dimacs(bad), InputError);
  }
}

TEST_CASE("normalization") {
  CnfFormula f = parse_dimacs("p cnf 3 3\n1 -1 2 0\n1 1 2 0\n2 2 2 0\n");
  CHECK_FALSE(is_normalized(f));
  CnfFormula n = normalize_cnf(f);
  CHECK(is_normalized(n));
  CHECK(n.variable_count == 6);
  REQUIRE(n.clauses.size() == 2 + 6);
  CHECK(n.clauses[0] == Clause{{1, false}, {5, false}, {2, false}});
  CHECK(n.clauses[1] == Clause{{2, false}, {5, false}, {6, false}});

  CnfFormula clean = parse_dimacs(kFourVariableFormula);
  CHECK(normalize_cnf(clean) == clean);
  CHECK_THROWS_AS(normalize_cnf(parse_dimacs("p cnf 2 1\n1 2 0\n")), std::invalid_argument);
}

TEST_CASE("normalization preserves satisfiability") {
  Rng rng(61);
  int sat = 0, unsat = 0;
  for (int trial = 0; trial < 300; ++trial) {
    CnfFormula f;
    f.variable_count = 1 + trial % 4;
    std::uniform_int_distribution<std::uint32_t> var(1, f.variable_count);
    std::bernoulli_distribution sign(0.5);
    std::size_t m = 1 + trial % 7;
    for (std::size_t j = 0; j < m; ++j) {
      f.clauses.push_back({{var(rng), sign(rng)}, {var(rng), sign(rng)}, {var(rng), sign(rng)}});
    }
    CnfFormula n = normalize_cnf(f);
    CHECK(is_normalized(n));
    bool original = brute_force_sat(f).has_value();
    CHECK(brute_force_sat(n).has_value() == original);
    (original ? sat : unsat) += 1;
  }
  CHECK(sat > 0);
  CHECK(unsat > 0);
}

TEST_CASE("variable gadget shapes") {
  GadgetGraph minimal = build_variable_gadget(1);
  CHECK(minimal.graph.vertex_count() == 5);
  CHECK(minimal.graph.edge_count() == 5);
  for (const Edge& e : minimal.graph.edges()) CHECK(e.weight == Rational(5, 2));

  GadgetGraph two = build_variable_gadget(2, {2});
  CHECK(two.graph.vertex_count() == 9);
  CHECK(two.graph.edge_count() == 10);
  REQUIRE(two.variables[0].has_value());
  CHECK(two.variables[0]->inverter[0] == kNoVertex);
  CHECK(two.variables[0]->inverter[1] != kNoVertex);

  GadgetGraph inverted = build_variable_gadget(1, {1});
  CHECK(inverted.graph.vertex_count() == 6);
  CHECK(inverted.graph.edge_count() == 6);

  CHECK_THROWS_AS(build_variable_gadget(0), std::invalid_argument);
  CHECK_THROWS_AS(build_variable_gadget(2, {3}), std::invalid_argument);
}

TEST_CASE("clause gadget shape") {
  GadgetGraph g = build_clause_gadget(4);
  CHECK(g.graph.vertex_count() == 13);
  CHECK(g.graph.edge_count() == 21);
  std::map<Rational, int> weights;
  for (const Edge& e : g.graph.edges()) ++weights[e.weight];
  CHECK(weights == std::map<Rational, int>{{Rational(5, 2), 3}, {Rational(18, 5), 9}, {Rational(6), 9}});
  CHECK(induced_diameter(g.graph, g.clauses[0].vertices) == Rational(79, 5));
  for (std::uint32_t t = 1; t <= 3; ++t) {
    EdgeId e = g.handle_edge(0, t);
    CHECK(g.labels[e].role == EdgeRole::handle);
    CHECK(g.labels[e].gadget == 4);
    CHECK(g.labels[e].index == t);
    CHECK(g.graph.edge(e).v == g.clauses[0].knobs[t - 1]);
  }
}

TEST_CASE("reduction structure") {
  CnfFormula f = parse_dimacs(kFourVariableFormula);
  GadgetGraph g = build_reduction(f);
  CHECK(g.D == Rational(35));
  CHECK(formula_of(g) == f);
  CHECK(g.graph.vertex_count() == 12 + 5 + 13 + 9 + 3 * 13);
  for (const auto& cg : g.clauses) {
    CHECK(cg.vertices.size() == 13);
    CHECK(induced_diameter(g.graph, cg.vertices) < g.D - 2);
  }
  for (const auto& vg : g.variables) {
    REQUIRE(vg.has_value());
    CHECK(induced_diameter(g.graph, vg->vertices) < g.D - 2);
  }
  int clause_variable = 0;
  for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
    EdgeRole role = g.labels[e].role;
    if (role == EdgeRole::clause_variable) {
      ++clause_variable;
      CHECK(g.graph.edge(e).weight == g.D);
    }
    if (role == EdgeRole::shortcut) CHECK(g.graph.edge(e).weight == 2 * g.D);
  }
  CHECK(clause_variable == 9);

  GadgetGraph single = build_reduction(parse_dimacs("p cnf 3 1\n1 2 3 0\n"));
  CHECK(single.graph.vertex_count() == 3 * 5 + 13);
  CHECK(single.graph.edge_count() == 3 * 5 + 21 + 3 + 3 * 25);

  GadgetGraph empty = build_reduction(CnfFormula{});
  CHECK(empty.graph.vertex_count() == 0);
  CHECK(empty.graph.edge_count() == 0);

  CHECK_THROWS_AS(build_reduction(parse_dimacs("p cnf 2 1\n1 1 2 0\n")), std::invalid_argument);
}

TEST_CASE("variable gadgets admit exactly two 1-roundings of opposite directions") {
  struct Shape {
    std::uint32_t h;
    std::vector<std::uint32_t> negated;
  };
  for (const Shape& shape : {Shape{1, {}}, Shape{2, {}}, Shape{3, {}}, Shape{2, {2}}, Shape{1, {1}}}) {
    GadgetGraph g = build_variable_gadget(shape.h, shape.negated);
    for (const Rational& eps : {Rational(1), Rational(9, 10)}) {
      CAPTURE(shape.h);
      CAPTURE(eps);
      auto found = gadget_roundings(g, eps);
      REQUIRE(found.size() == 2);
      for (const Rounding& r : found) {
        std::int64_t triangle = -1, other = -1;
        for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
          std::int64_t& slot = is_triangle(g.labels[e].role) ? triangle : other;
          if (slot < 0) slot = r.values[e];
          CHECK(r.values[e] == slot);
        }
        CHECK(triangle + other == 5);
      }
    }
    CHECK(gadget_roundings(g, Rational(5, 4)).size() > 2);
  }
}

TEST_CASE("clause gadgets admit a 1-rounding iff some handle is rounded down") {
  GadgetGraph g = build_clause_gadget(0);
  for (unsigned mask = 0; mask < 8; ++mask) {
    CAPTURE(mask);
    bool expected = mask != 7;
    auto pins = handle_pins(g, mask);

    // Exhaustive over the nonagon with integer center edges kept.
    auto fixed = pins;
    for (const Pin& p : center_pins(g)) fixed.push_back(p);
    auto count = count_roundings(g.graph, Rational(1), Level::strong, Comparison::strict, fixed);
    CHECK((count > 0) == expected);

    // Complete search with every edge free except the handles.
    BacktrackOptions options;
    options.pins = pins;
    std::vector<Values> solutions;
    backtracking_enumerate(g.graph, Rational(1), Level::strong, Comparison::strict, options,
                           [&](const Rounding& r) {
                             solutions.push_back(r.values);
                             return true;
                           });
    CHECK(solutions.empty() == !expected);

    // The canonical rounding for literal values matching the handles.
    std::vector<bool> psi{!(mask & 1), !(mask & 2), !(mask & 4)};
    Rounding canonical = rounding_from_assignment(g, psi);
    auto report = verify_rounding(g.graph, canonical, Rational(1), Level::strong);
    CHECK(report.passed == expected);
    if (expected) {
      CHECK(std::find(solutions.begin(), solutions.end(), canonical.values) != solutions.end());
    }
  }
}

TEST_CASE("clause-variable edges couple handle and anchor directions") {
  for (bool negated : {false, true}) {
    for (std::uint32_t t = 1; t <= 3; ++t) {
      CAPTURE(negated);
      CAPTURE(t);
      GadgetGraph g = build_gadget_pair(negated, t);
      EdgeId anchor = g.anchor_edge(1), handle = g.handle_edge(0, t);
      int seen = 0;
      bool anchor_values[2] = {false, false};
      backtracking_enumerate(g.graph, Rational(1), Level::strong, Comparison::strict, {},
                             [&](const Rounding& r) {
                               bool same = r.values[anchor] == r.values[handle];
                               CHECK(same == !negated);
                               anchor_values[r.values[anchor] - 2] = true;
                               ++seen;
                               return true;
                             });
      CHECK(seen > 0);
      CHECK(anchor_values[0]);
      CHECK(anchor_values[1]);
    }
  }
}

TEST_CASE("shortcut edges are the unique shortest connections") {
  Rng rng(67);
  for (int trial = 0; trial < 6; ++trial) {
    CnfFormula f = random_formula(rng, 3 + trial % 3, 1 + trial % 2);
    GadgetGraph g = build_reduction(f);
    std::vector<Edge> base_edges;
    std::vector<EdgeId> base_ids, shortcuts;
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
      if (g.labels[e].role == EdgeRole::shortcut) {
        shortcuts.push_back(e);
      } else {
        base_edges.push_back(g.graph.edge(e));
        base_ids.push_back(e);
      }
    }
    REQUIRE_FALSE(shortcuts.empty());
    WeightedGraph without(g.graph.vertex_count(), base_edges);
    // Any other route through a shortcut is longer as all weights are positive.
    auto check = [&](const DistanceMatrix& d, const Rounding* r) {
      for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
        CHECK((r ? Rational(r->values[e]) : g.graph.edge(e).weight) > 0);
      }
      for (EdgeId s : shortcuts) {
        const Edge& e = g.graph.edge(s);
        if (d[e.u][e.v]) CHECK(*d[e.u][e.v] > 2 * g.D);
      }
    };
    check(all_pairs_shortest(without), nullptr);
    for (unsigned a = 0; a < (1u << f.variable_count); ++a) {
      Rounding r = rounding_from_assignment(g, bits(a, f.variable_count));
      Rounding reduced;
      for (EdgeId e : base_ids) reduced.values.push_back(r.values[e]);
      // Edge ids of `without` follow canonical order, which base_edges keeps.
      check(all_pairs_shortest(without, reduced), &r);
    }
  }
}

TEST_CASE("satisfying assignments give strong 1-roundings") {
  CnfFormula f = parse_dimacs(kFourVariableFormula);
  GadgetGraph g = build_reduction(f);
  std::vector<bool> shown{false, true, true, false};
  REQUIRE(satisfies(f, shown));
  Rounding r = rounding_from_assignment(g, shown);
  CHECK(verify_rounding(g.graph, r, Rational(1), Level::strong).passed);
  CHECK(assignment_from_rounding(g, r) == shown);

  Rng rng(71);
  int checked = 0;
  for (int trial = 0; trial < 8; ++trial) {
    CnfFormula random = random_formula(rng, 3 + trial % 3, 1 + trial % 2);
    auto psi = brute_force_sat(random);
    if (!psi) continue;
    GadgetGraph rg = build_reduction(random);
    Rounding rr = rounding_from_assignment(rg, *psi);
    CHECK(verify_rounding(rg.graph, rr, Rational(1), Level::strong).passed);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("an unsatisfied clause breaks its own gadget") {
  CnfFormula f = parse_dimacs(kFourVariableFormula);
  GadgetGraph g = build_reduction(f);
  // x1 = 0, x2 = 0, x3 = 1 falsifies the first clause (1 2 -3).
  std::vector<bool> psi{false, false, true, false};
  REQUIRE_FALSE(satisfies(f, psi));
  auto report = verify_rounding(g.graph, rounding_from_assignment(g, psi), Rational(1), Level::strong);
  CHECK_FALSE(report.passed);
  REQUIRE(report.witness.has_value());
  const auto& vertices = g.clauses[0].vertices;
  CHECK(std::binary_search(vertices.begin(), vertices.end(), report.witness->u));
  CHECK(std::binary_search(vertices.begin(), vertices.end(), report.witness->v));
}

TEST_CASE("assignments round-trip through roundings") {
  CnfFormula f = parse_dimacs(kFourVariableFormula);
  GadgetGraph g = build_reduction(f);
  for (unsigned a = 0; a < 16; ++a) {
    auto psi = bits(a, 4);
    Rounding r = rounding_from_assignment(g, psi);
    CHECK(assignment_from_rounding(g, r) == psi);
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
      const Rational& w = g.graph.edge(e).weight;
      if (denominator(w) == 1) CHECK(Rational(r.values[e]) == w);
    }
  }
  Rounding up = rounding_from_assignment(g, bits(0, 4));
  for (std::uint32_t i = 1; i <= 4; ++i) CHECK(up.values[g.anchor_edge(i)] == 3);

  Rounding broken = up;
  broken.values[g.anchor_edge(2)] = 4;
  CHECK_THROWS_AS(assignment_from_rounding(g, broken), std::invalid_argument);
  CHECK_THROWS_AS(rounding_from_assignment(g, bits(0, 3)), std::invalid_argument);

  // Variables that never occur get no gadget and read as 0.
  CnfFormula sparse = parse_dimacs("p cnf 5 1\n1 3 -5 0\n");
  GadgetGraph sg = build_reduction(sparse);
  CHECK_FALSE(sg.variables[1].has_value());
  std::vector<bool> psi{true, true, false, true, true};
  CHECK(assignment_from_rounding(sg, rounding_from_assignment(sg, psi)) ==
        std::vector<bool>{true, false, false, false, true});
}
