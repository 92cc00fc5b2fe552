#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spround/graph.hpp"
#include "spround/rational.hpp"

namespace spround {

enum class Level { path_oblivious, weak, strong };
enum class Comparison { strict, closed };

std::string_view to_string(Level level);
std::string_view to_string(Comparison comparison);
/// Accepts "oblivious"/"path_oblivious", "weak", "strong"; throws std::invalid_argument.
Level parse_level(std::string_view text);
Comparison parse_comparison(std::string_view text);

/// Row-major distances; std::nullopt marks an unreachable pair.
using DistanceMatrix = std::vector<std::vector<std::optional<Rational>>>;

DistanceMatrix all_pairs_shortest(const WeightedGraph& graph);
/// Same, under the rounded weights.
DistanceMatrix all_pairs_shortest(const WeightedGraph& graph, const Rounding& rounding);

struct ErrorExtrema {
  Rational min_error;
  Rational max_error;
};

/// Min and max of rounded(pi) - original(pi) over every original shortest
/// simple path pi from u to v. Throws std::invalid_argument if v is
/// unreachable from u.
ErrorExtrema shortest_path_error_extrema(const WeightedGraph& graph, const Rounding& rounding,
                                         VertexId u, VertexId v);

struct Witness {
  VertexId u = 0;
  VertexId v = 0;
  std::string condition;
};

struct VerificationReport {
  Level level_checked = Level::path_oblivious;
  Comparison comparison = Comparison::strict;
  Rational epsilon;
  bool passed = true;
  Rational worst_error;  // signed error of largest magnitude over checked pairs
  std::optional<Witness> witness;
};

/// Checks the rounding against the error bound (level path_oblivious), plus
/// preservation of original shortest paths (weak), plus no new shortest
/// paths (strong). Pairs in different components are skipped.
/// Throws std::invalid_argument if epsilon <= 0 or the rounding does not
/// cover every edge with a non-negative value.
VerificationReport verify_rounding(const WeightedGraph& graph, const Rounding& rounding,
                                   const Rational& epsilon, Level level,
                                   Comparison comparison = Comparison::strict);

/// verify_rounding with the rounding-independent work (original distances
/// and shortest-path structure) done once. Used for exhaustive search.
class RoundingVerifier {
 public:
  RoundingVerifier(const WeightedGraph& graph, const Rational& epsilon, Level level,
                   Comparison comparison);
  ~RoundingVerifier();
  RoundingVerifier(RoundingVerifier&&) noexcept;
  RoundingVerifier& operator=(RoundingVerifier&&) noexcept;

  VerificationReport report(const Rounding& rounding) const;
  bool passes(const Rounding& rounding) const;
  /// Largest |error| over all original shortest paths of all pairs.
  Rational worst_abs_error(const Rounding& rounding) const;

  const WeightedGraph& graph() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace spround
