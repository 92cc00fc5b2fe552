#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spround/graph.hpp"
#include "spround/rational.hpp"
#include "spround/shortest_paths.hpp"

namespace spround {

// Ground-truth solvers for small instances. Everything here is exponential.

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, BigInt size)
      : std::runtime_error(what), size_(std::move(size)) {}
  const BigInt& size() const { return size_; }

 private:
  BigInt size_;
};

enum class PinDirection { down, up };

/// Forces an edge to floor (down) or ceil (up) of its weight.
struct Pin {
  EdgeKey edge;
  PinDirection direction;
};

/// Per edge, the admissible integers: naturals within epsilon of the weight
/// (open interval in strict mode, closed otherwise), ascending.
using CandidateDomain = std::vector<std::vector<std::int64_t>>;

CandidateDomain candidate_domains(const WeightedGraph& graph, const Rational& epsilon,
                                  Comparison comparison);

/// Restricts domains to the pinned values. Throws std::invalid_argument for
/// pins on edges that do not exist.
void apply_pins(const WeightedGraph& graph, std::span<const Pin> pins, CandidateDomain& domains);

BigInt domain_product(const CandidateDomain& domains);

/// Calls `visit` on every assignment of the Cartesian product, in
/// lexicographic order (first edge slowest), until it returns false.
/// Throws BudgetExceeded if the product is larger than `budget`.
void enumerate_roundings(const CandidateDomain& domains,
                         const std::function<bool(const Rounding&)>& visit,
                         std::uint64_t budget = kDefaultEnumerationBudget);

void enumerate_roundings(const WeightedGraph& graph, const Rational& epsilon, Comparison comparison,
                         const std::function<bool(const Rounding&)>& visit,
                         std::uint64_t budget = kDefaultEnumerationBudget);

struct BruteForceResult {
  bool admits = false;
  std::optional<Rounding> witness;  // first passing rounding in enumeration order
};

BruteForceResult brute_force_decide(const WeightedGraph& graph, const Rational& epsilon,
                                    Level level, Comparison comparison,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Number of passing roundings (after pins).
std::uint64_t count_roundings(const WeightedGraph& graph, const Rational& epsilon, Level level,
                              Comparison comparison, std::span<const Pin> pins = {},
                              std::uint64_t budget = kDefaultEnumerationBudget);

struct BacktrackOptions {
  std::vector<Pin> pins;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

/// Depth-first search over edges, most shortest-path-heavy edges first.
/// A partial assignment is cut as soon as some vertex pair has all of its
/// shortest-path edges assigned and violates the error bound. Complete.
std::optional<Rounding> backtracking_solve(const WeightedGraph& graph, const Rational& epsilon,
                                           Level level, Comparison comparison,
                                           const BacktrackOptions& options = {});

/// Same search, visiting every solution until `visit` returns false.
/// Returns the number of solutions visited.
std::uint64_t backtracking_enumerate(const WeightedGraph& graph, const Rational& epsilon,
                                     Level level, Comparison comparison,
                                     const BacktrackOptions& options,
                                     const std::function<bool(const Rounding&)>& visit);

/// Minimum over roundings of the largest |error| of any shortest path.
Rational brute_force_min_epsilon(const WeightedGraph& graph,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

/// Root error ranges of all locally optimal epsilon-roundings of a tree,
/// by enumerating roundings. Sorted by lower bound.
std::vector<std::pair<Rational, Rational>> brute_force_error_range_set(
    const WeightedGraph& tree, VertexId root, const Rational& epsilon, Comparison comparison,
    std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace spround
