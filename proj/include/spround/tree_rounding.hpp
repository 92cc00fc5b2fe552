#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spround/graph.hpp"
#include "spround/rational.hpp"
#include "spround/shortest_paths.hpp"

namespace spround {

/// Where a range in an error range set came from. Indices point into the
/// set(s) the range was computed from.
struct RangeOrigin {
  enum class Kind : std::uint8_t { leaf, lifted, merged };

  Kind kind = Kind::leaf;
  std::uint32_t first = 0;   // lifted: source range; merged: range in the left set
  std::uint32_t second = 0;  // merged: range in the right set
  std::int8_t offset = 0;    // lifted: rounded edge weight minus floor(weight)
};

/// Range [lo, hi] of signed rounding errors of root-to-vertex paths for one
/// rounding of a rooted subtree. Always lo <= 0 <= hi.
struct ErrorRange {
  Rational lo;
  Rational hi;
  RangeOrigin origin;
};

/// Antichain of error ranges, strictly ascending in both lo and hi.
using ErrorRangeSet = std::vector<ErrorRange>;

bool is_antichain(std::span<const ErrorRange> set);

/// Drops every range that contains another one. Input must be sorted by
/// (lo, hi); among identical ranges the first is kept. Linear time.
ErrorRangeSet filter(std::vector<ErrorRange> candidates);

/// Error range set of T_u plus the edge to its parent, rooted at the parent.
/// Offsets that would make the rounded edge negative are skipped.
ErrorRangeSet lift(const ErrorRangeSet& child, const Rational& edge_weight, const Rational& epsilon,
                   Comparison comparison);

/// Error range set of the union of two trees sharing only their root.
ErrorRangeSet merge(const ErrorRangeSet& left, const ErrorRangeSet& right, const Rational& epsilon,
                    Comparison comparison);

/// Floors of root distances: w({p(u),u}) = floor(d_u) - floor(d_p(u)).
/// Every path error is strictly inside (-2, 2).
Rounding two_rounding(const RootedTree& tree);

/// The full bottom-up computation, kept around for witness extraction.
/// Requires 0 <= epsilon < 2 (throws std::invalid_argument otherwise).
class ErrorRangeForest {
 public:
  struct Node {
    enum class Kind : std::uint8_t { leaf, lift, merge };
    Kind kind = Kind::leaf;
    ErrorRangeSet set;
    std::uint32_t left = 0;       // lift: node of the child subtree; merge: left operand
    std::uint32_t right = 0;      // merge: right operand
    VertexId vertex = 0;          // leaf: the vertex; lift: the child whose parent edge was added
    std::uint32_t vertex_count = 0;  // vertices of the tree this set describes
  };

  ErrorRangeForest(const RootedTree& tree, const Rational& epsilon, Comparison comparison);

  const ErrorRangeSet& root_set() const { return nodes_[root_node_].set; }
  std::span<const Node> nodes() const { return nodes_; }

  /// Follows origins back from root_set()[index] to a rounding of the tree.
  Rounding reconstruct(std::size_t index) const;

 private:
  std::uint32_t add(Node node);
  std::uint32_t merge_children(std::span<const std::uint32_t> lifted);

  const RootedTree* tree_;
  Rational epsilon_;
  Comparison comparison_;
  std::vector<Node> nodes_;
  std::uint32_t root_node_ = 0;
};

/// Error range set of the whole tree at its root. Requires 0 <= epsilon < 2.
ErrorRangeSet error_range_set(const RootedTree& tree, const Rational& epsilon,
                              Comparison comparison);

/// Whether the tree admits an epsilon-rounding. epsilon >= 2 is answered
/// without the dynamic program. Throws std::invalid_argument if epsilon < 0.
bool decide(const RootedTree& tree, const Rational& epsilon, Comparison comparison);

std::optional<Rounding> extract_rounding(const RootedTree& tree, const Rational& epsilon,
                                         Comparison comparison);

/// One length per unordered pair of distinct vertices.
std::vector<Rational> all_path_lengths(const RootedTree& tree);

struct MinimumEpsilon {
  Rational epsilon;  // least c such that some rounding has every |path error| <= c
  Rounding witness;
};

MinimumEpsilon minimize_epsilon(const RootedTree& tree);

}  // namespace spround
