#include "spround/tree_rounding.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>

namespace spround {

namespace {

// x < bound (strict) or x <= bound (closed).
bool below(const Rational& x, const Rational& bound, Comparison cmp) {
  return cmp == Comparison::strict ? x < bound : x <= bound;
}

bool lex_less(const ErrorRange& a, const ErrorRange& b) {
  return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
}

// Stable merge of lexicographically sorted runs; ties go to the earlier run.
std::vector<ErrorRange> merge_sorted(std::span<std::vector<ErrorRange>> runs) {
  std::size_t total = 0;
  for (const auto& r : runs) total += r.size();
  std::vector<ErrorRange> out;
  out.reserve(total);
  std::vector<std::size_t> pos(runs.size(), 0);
  while (out.size() < total) {
    std::size_t best = runs.size();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (pos[r] == runs[r].size()) continue;
      if (best == runs.size() || lex_less(runs[r][pos[r]], runs[best][pos[best]])) best = r;
    }
    out.push_back(std::move(runs[best][pos[best]++]));
  }
  return out;
}

void check_epsilon(const Rational& epsilon) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  if (epsilon >= 2) {
    throw std::invalid_argument("error range sets need epsilon < 2, got " + to_string(epsilon));
  }
}

}  // namespace

bool is_antichain(std::span<const ErrorRange> set) {
  for (std::size_t i = 1; i < set.size(); ++i) {
    if (!(set[i - 1].lo < set[i].lo && set[i - 1].hi < set[i].hi)) return false;
  }
  return true;
}

ErrorRangeSet filter(std::vector<ErrorRange> candidates) {
  assert(std::is_sorted(candidates.begin(), candidates.end(), lex_less));
  ErrorRangeSet kept;
  kept.reserve(candidates.size());
  for (auto& c : candidates) {
    if (!kept.empty() && kept.back().lo == c.lo && kept.back().hi == c.hi) continue;
    while (!kept.empty() && kept.back().hi >= c.hi) kept.pop_back();
    if (kept.empty() || kept.back().lo != c.lo) kept.push_back(std::move(c));
  }
  return kept;
}

ErrorRangeSet lift(const ErrorRangeSet& child, const Rational& edge_weight, const Rational& epsilon,
                   Comparison comparison) {
  const BigInt base = floor(edge_weight);
  const Rational frac = edge_weight - Rational(base);
  const Rational zero(0);
  std::array<std::vector<ErrorRange>, 4> streams;
  for (int k = -1; k <= 2; ++k) {
    if (base + k < 0) continue;
    auto& out = streams[k + 1];
    const Rational shift = Rational(k) - frac;
    for (std::uint32_t i = 0; i < child.size(); ++i) {
      Rational lo = child[i].lo + shift;
      Rational hi = child[i].hi + shift;
      if (!below(-epsilon, lo, comparison) || !below(hi, epsilon, comparison)) continue;
      out.push_back({std::min(lo, zero), std::max(hi, zero),
                     {RangeOrigin::Kind::lifted, i, 0, static_cast<std::int8_t>(k)}});
    }
  }
  return filter(merge_sorted(streams));
}

ErrorRangeSet merge(const ErrorRangeSet& left, const ErrorRangeSet& right, const Rational& epsilon,
                    Comparison comparison) {
  // Candidates where `scan` holds the strictly smaller (type 1) or the
  // smaller-or-equal (type 2) lower bound. For each scanned range [a1, b1]
  // the partner must satisfy: partner.lo beyond a1, a1 + partner.lo above
  // -epsilon, b1 + partner.hi below epsilon. The first partner meeting the
  // two lower-bound conditions has the smallest hi, so it is the only one
  // worth combining. Pointer 1 only moves forward, pointers 2 and 3 only
  // backward; the ends of `other` act as the sentinels.
  auto one_sided = [&](const ErrorRangeSet& scan, const ErrorRangeSet& other, bool strictly_smaller,
                       bool scan_is_left) {
    std::vector<ErrorRange> out;
    const std::ptrdiff_t size = static_cast<std::ptrdiff_t>(other.size());
    std::ptrdiff_t p1 = 0, p2 = size, p3 = size - 1;
    for (std::uint32_t i = 0; i < scan.size(); ++i) {
      const Rational& a1 = scan[i].lo;
      const Rational& b1 = scan[i].hi;
      while (p1 < size && !(strictly_smaller ? a1 < other[p1].lo : a1 <= other[p1].lo)) ++p1;
      const Rational low_bound = -epsilon - a1;
      while (p2 > 0 && below(low_bound, other[p2 - 1].lo, comparison)) --p2;
      const Rational high_bound = epsilon - b1;
      while (p3 >= 0 && !below(other[p3].hi, high_bound, comparison)) --p3;
      const std::ptrdiff_t j = std::max(p1, p2);
      if (j >= size || j > p3) continue;
      RangeOrigin origin{RangeOrigin::Kind::merged, 0, 0, 0};
      origin.first = scan_is_left ? i : static_cast<std::uint32_t>(j);
      origin.second = scan_is_left ? static_cast<std::uint32_t>(j) : i;
      out.push_back({a1, std::max(b1, other[j].hi), origin});
    }
    return out;
  };
  std::array<std::vector<ErrorRange>, 2> runs{one_sided(left, right, true, true),
                                              one_sided(right, left, false, false)};
  return filter(merge_sorted(runs));
}

Rounding two_rounding(const RootedTree& tree) {
  const std::size_t n = tree.vertex_count();
  std::vector<Rational> depth(n);
  Rounding out;
  out.values.assign(tree.graph().edge_count(), 0);
  for (VertexId v : tree.preorder()) {
    if (v == tree.root()) continue;
    VertexId p = tree.parent(v);
    depth[v] = depth[p] + tree.parent_weight(v);
    out.values[tree.parent_edge(v)] = to_int64(floor(depth[v]) - floor(depth[p]));
  }
  return out;
}

ErrorRangeForest::ErrorRangeForest(const RootedTree& tree, const Rational& epsilon,
                                   Comparison comparison)
    : tree_(&tree), epsilon_(epsilon), comparison_(comparison) {
  check_epsilon(epsilon);
  const std::size_t n = tree.vertex_count();
  std::vector<std::uint32_t> node_of(n);
  auto order = tree.preorder();
  std::vector<std::uint32_t> lifted;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId u = *it;
    auto children = tree.children(u);
    if (children.empty()) {
      Node leaf;
      leaf.set.push_back({Rational(0), Rational(0), {}});
      leaf.vertex = u;
      leaf.vertex_count = 1;
      node_of[u] = add(std::move(leaf));
      continue;
    }
    lifted.clear();
    for (VertexId c : children) {
      Node up;
      up.kind = Node::Kind::lift;
      up.left = node_of[c];
      up.vertex = c;
      up.vertex_count = nodes_[node_of[c]].vertex_count + 1;
      up.set = spround::lift(nodes_[node_of[c]].set, tree.parent_weight(c), epsilon_, comparison_);
      lifted.push_back(add(std::move(up)));
    }
    node_of[u] = merge_children(lifted);
  }
  root_node_ = node_of[tree.root()];
}

std::uint32_t ErrorRangeForest::add(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

// Balanced merge tree over the lifted children, left half taking the extra one.
std::uint32_t ErrorRangeForest::merge_children(std::span<const std::uint32_t> lifted) {
  if (lifted.size() == 1) return lifted.front();
  const std::size_t half = (lifted.size() + 1) / 2;
  std::uint32_t a = merge_children(lifted.first(half));
  std::uint32_t b = merge_children(lifted.subspan(half));
  Node joined;
  joined.kind = Node::Kind::merge;
  joined.left = a;
  joined.right = b;
  joined.vertex_count = nodes_[a].vertex_count + nodes_[b].vertex_count - 1;
  joined.set = spround::merge(nodes_[a].set, nodes_[b].set, epsilon_, comparison_);
  return add(std::move(joined));
}

Rounding ErrorRangeForest::reconstruct(std::size_t index) const {
  if (index >= root_set().size()) throw std::out_of_range("no such root error range");
  const WeightedGraph& g = tree_->graph();
  Rounding out;
  out.values.assign(g.edge_count(), 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{
      {root_node_, static_cast<std::uint32_t>(index)}};
  while (!stack.empty()) {
    auto [id, i] = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    const RangeOrigin& origin = node.set[i].origin;
    switch (node.kind) {
      case Node::Kind::leaf:
        break;
      case Node::Kind::lift: {
        EdgeId e = tree_->parent_edge(node.vertex);
        out.values[e] = to_int64(floor(g.edge(e).weight) + origin.offset);
        stack.push_back({node.left, origin.first});
        break;
      }
      case Node::Kind::merge:
        stack.push_back({node.left, origin.first});
        stack.push_back({node.right, origin.second});
        break;
    }
  }
  return out;
}

ErrorRangeSet error_range_set(const RootedTree& tree, const Rational& epsilon,
                              Comparison comparison) {
  return ErrorRangeForest(tree, epsilon, comparison).root_set();
}

bool decide(const RootedTree& tree, const Rational& epsilon, Comparison comparison) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  if (epsilon >= 2) return true;
  return !ErrorRangeForest(tree, epsilon, comparison).root_set().empty();
}

std::optional<Rounding> extract_rounding(const RootedTree& tree, const Rational& epsilon,
                                         Comparison comparison) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  if (epsilon >= 2) return two_rounding(tree);
  ErrorRangeForest forest(tree, epsilon, comparison);
  if (forest.root_set().empty()) return std::nullopt;
  return forest.reconstruct(0);
}

std::vector<Rational> all_path_lengths(const RootedTree& tree) {
  const std::size_t n = tree.vertex_count();
  std::vector<Rational> out;
  out.reserve(n * (n - 1) / 2);
  // down[u]: lengths of paths from u to each vertex of T_u (u itself included).
  std::vector<std::vector<Rational>> down(n);
  auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId u = *it;
    std::vector<Rational> acc{Rational(0)};
    for (VertexId c : tree.children(u)) {
      const Rational& w = tree.parent_weight(c);
      std::vector<Rational> via;
      via.reserve(down[c].size());
      for (const Rational& len : down[c]) via.push_back(len + w);
      for (const Rational& x : acc) {
        for (const Rational& y : via) out.push_back(x + y);
      }
      acc.insert(acc.end(), via.begin(), via.end());
      std::vector<Rational>().swap(down[c]);
    }
    down[u] = std::move(acc);
  }
  return out;
}

MinimumEpsilon minimize_epsilon(const RootedTree& tree) {
  std::vector<Rational> candidates;
  for (const Rational& len : all_path_lengths(tree)) {
    Rational frac = fractional_part(len);
    for (int k = -1; k <= 2; ++k) candidates.push_back(abs(Rational(k) - frac));
  }
  if (candidates.empty()) return {Rational(0), Rounding{std::vector<std::int64_t>(0)}};
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // Least candidate accepted in closed mode; the largest is always accepted.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (decide(tree, candidates[mid], Comparison::closed)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return {candidates[lo], *extract_rounding(tree, candidates[lo], Comparison::closed)};
}

}  // namespace spround
