#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spround/rational.hpp"

namespace spround {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Unordered vertex pair, stored with u < v.
struct EdgeKey {
  VertexId u = 0;
  VertexId v = 0;

  EdgeKey() = default;
  EdgeKey(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct Edge {
  VertexId u = 0;  // u < v
  VertexId v = 0;
  Rational weight;

  EdgeKey key() const { return {u, v}; }
};

/// Malformed input. `line` is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Undirected simple graph with non-negative exact weights. Edges are kept
/// sorted by key, so an EdgeId is the rank of the edge in canonical order.
class WeightedGraph {
 public:
  struct Arc {
    VertexId to;
    EdgeId edge;
  };

  WeightedGraph() = default;
  /// Throws InputError on self-loops, duplicates, negative weights or
  /// endpoints outside [0, vertex_count).
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }
  std::span<const Arc> neighbors(VertexId v) const { return adjacency_[v]; }
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  bool is_connected() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> adjacency_;
};

/// Integer weight per edge, indexed by EdgeId of the graph it belongs to.
struct Rounding {
  std::vector<std::int64_t> values;

  friend bool operator==(const Rounding&, const Rounding&) = default;
};

/// A tree with a designated root. Owns a canonical copy of its graph so
/// roundings computed on it are plain graph Roundings.
class RootedTree {
 public:
  /// Throws InputError unless `graph` is a tree (connected, n-1 edges, n >= 1).
  RootedTree(WeightedGraph graph, VertexId root = 0);

  /// parents[root] must be kNoVertex; weights[v] is the weight of {parents[v], v}.
  static RootedTree from_parents(VertexId root, std::span<const VertexId> parents,
                                 std::span<const Rational> weights);

  const WeightedGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  EdgeId parent_edge(VertexId v) const { return parent_edge_[v]; }
  const Rational& parent_weight(VertexId v) const { return graph_.edge(parent_edge_[v]).weight; }
  std::span<const VertexId> children(VertexId v) const { return children_[v]; }
  /// Root first; every vertex after its parent.
  std::span<const VertexId> preorder() const { return preorder_; }
  /// Same tree, different root.
  RootedTree rerooted(VertexId new_root) const { return RootedTree(graph_, new_root); }

 private:
  WeightedGraph graph_;
  VertexId root_;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> preorder_;
};

/// Edge-list text: '#' comments, blank lines, and "u v w" data lines where w
/// is a decimal or "p/q". The vertex count is one more than the largest id.
WeightedGraph parse_graph(std::istream& in);
WeightedGraph parse_graph(std::string_view text);
std::string serialize_graph(const WeightedGraph& graph);

/// Largest accepted weight; rounded values must fit comfortably in int64.
inline const Rational& max_weight() {
  static const Rational limit(BigInt(1) << 60);
  return limit;
}

}  // namespace spround
