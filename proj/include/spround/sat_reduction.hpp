#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spround/graph.hpp"
#include "spround/rational.hpp"

namespace spround {

// Reduction from 3-SAT to strong 1-rounding: builds the gadget graph of a
// 3-CNF formula and translates between assignments and roundings.

struct Literal {
  std::uint32_t variable = 1;  // 1-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  std::uint32_t variable_count = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// DIMACS CNF: 'c' comment lines, a "p cnf n m" header, then clauses as
/// signed variable indices terminated by 0. Throws InputError with the line.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& formula);

/// Every clause has three literals over three distinct variables.
bool is_normalized(const CnfFormula& formula);

/// Equisatisfiable normal form: tautological clauses are dropped; repeated
/// literals are replaced by fresh variables b (second copy) and c (third
/// copy), which the six appended clauses over {a, b, c} force to false.
/// The fresh variables are n+1, n+2, n+3 and are only added when needed.
/// Throws std::invalid_argument if a clause does not have three literals.
CnfFormula normalize_cnf(const CnfFormula& formula);

/// Whether `assignment` (index i holds x_{i+1}) satisfies every clause.
bool satisfies(const CnfFormula& formula, const std::vector<bool>& assignment);

/// Satisfying assignment by exhaustive search, lowest binary number first
/// (x_1 is the least significant bit). Throws std::invalid_argument for more
/// than 30 variables.
std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& formula);

enum class EdgeRole : std::uint8_t {
  triangle,         // edge of a triangle of a variable gadget
  variable_anchor,  // the non-triangle edge at v_{i,0}
  non_triangle,     // chain edges and the edge at v_{i,h+1}
  inverter,         // base vertex to inverter
  nonagon,
  handle,           // nonagon vertex to knob
  center,
  clause_variable,
  shortcut,
};

std::string_view to_string(EdgeRole role);
EdgeRole parse_edge_role(std::string_view text);

/// gadget: variable (1-based) for variable-gadget edges and clause-variable
/// edges, clause (0-based) for clause-gadget edges.
/// index: triangle number k (1-based) for triangle, chain and inverter
/// edges and for clause-variable edges (the occurrence they serve), cycle
/// position p for nonagon edges {q_p, q_(p+1 mod 9)} and center edges, handle
/// number t (1-based) for handles; 0 otherwise.
struct EdgeLabel {
  EdgeRole role = EdgeRole::shortcut;
  std::uint32_t gadget = 0;
  std::uint32_t index = 0;
};

struct VariableGadget {
  std::uint32_t variable = 0;
  VertexId anchor = 0;                 // v_{i,0}
  VertexId end = 0;                    // v_{i,h+1}
  std::vector<VertexId> left, right;   // per triangle
  std::vector<VertexId> base;          // v_{i,1..h}
  std::vector<VertexId> inverter;      // kNoVertex where the occurrence is positive
  std::vector<VertexId> vertices;      // all of the gadget, ascending
};

struct ClauseGadget {
  std::uint32_t clause = 0;
  std::array<Literal, 3> literals;
  std::array<VertexId, 9> cycle{};     // q_0..q_8; knob t hangs off q_{3(t-1)}
  std::array<VertexId, 3> knobs{};     // c_{j,1..3}
  VertexId center = 0;
  std::vector<VertexId> vertices;      // ascending
};

struct GadgetGraph {
  WeightedGraph graph;
  std::vector<EdgeLabel> labels;       // by EdgeId
  Rational D;                          // clause-variable weight; shortcuts weigh 2D
  std::uint32_t variable_count = 0;
  std::vector<std::optional<VariableGadget>> variables;  // index i-1; empty if x_i never occurs
  std::vector<ClauseGadget> clauses;

  EdgeId anchor_edge(std::uint32_t variable) const;
  EdgeId handle_edge(std::uint32_t clause, std::uint32_t t) const;
};

inline const Rational& gadget_edge_weight() {
  static const Rational w(5, 2);
  return w;
}
inline const Rational& nonagon_edge_weight() {
  static const Rational w(18, 5);
  return w;
}
inline constexpr std::int64_t kCenterEdgeWeight = 6;

/// Standalone gadget for variable x_1 with h occurrences; `negated` holds
/// the 1-based occurrence positions that get an inverter.
/// Throws std::invalid_argument if h == 0 or a position is out of range.
GadgetGraph build_variable_gadget(std::uint32_t h, const std::vector<std::uint32_t>& negated = {});

/// Standalone clause gadget with index j for the clause (x_1 or x_2 or x_3),
/// unless other literals are given.
GadgetGraph build_clause_gadget(std::uint32_t j,
                                std::array<Literal, 3> literals = {Literal{1, false},
                                                                   Literal{2, false},
                                                                   Literal{3, false}});

/// A variable gadget with one occurrence wired by a single clause-variable
/// edge of weight `D` to knob t of a clause gadget: through the base vertex,
/// or through an inverter when `negated`. No shortcut edges.
GadgetGraph build_gadget_pair(bool negated, std::uint32_t t, const Rational& D = Rational(25));

/// The full reduction graph. Variable gadgets come first (by variable, for
/// variables that occur), then clause gadgets. The k-th occurrence of x_i,
/// scanning clauses in order, uses base vertex v_{i,k}.
/// Throws std::invalid_argument unless the formula is normalized.
GadgetGraph build_reduction(const CnfFormula& formula);

/// Rounds every fractional edge up or down as dictated by the assignment
/// (index i holds x_{i+1}); integer edges keep their weight.
/// Throws std::invalid_argument if the assignment has the wrong length.
Rounding rounding_from_assignment(const GadgetGraph& g, const std::vector<bool>& assignment);

/// x_i = 1 iff e(v_{i,0}) is rounded down; variables without a gadget are 0.
/// Throws std::invalid_argument if some e(v_{i,0}) is neither 2 nor 3.
std::vector<bool> assignment_from_rounding(const GadgetGraph& g, const Rounding& rounding);

/// Largest shortest-path distance inside the subgraph induced by `vertices`.
Rational induced_diameter(const WeightedGraph& graph, const std::vector<VertexId>& vertices);

/// The formula a reduction graph was built from (stored clause by clause).
CnfFormula formula_of(const GadgetGraph& g);

}  // namespace spround
