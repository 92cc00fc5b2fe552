#pragma once

// Shortest-path machinery over integer-scaled weights. Every weight (and the
// error threshold) is multiplied by the lcm of all denominators, so the
// algorithms only need exact integer + and <. The integer type is picked by
// magnitude: int64 when it fits, then 256-bit, then arbitrary precision.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spround/graph.hpp"
#include "spround/rational.hpp"
#include "spround/shortest_paths.hpp"

namespace spround::detail {

using Int256 = boost::multiprecision::int256_t;

template <class Num>
Num from_big(const BigInt& x) {
  if constexpr (std::is_same_v<Num, BigInt>) {
    return x;
  } else {
    return static_cast<Num>(x);
  }
}

template <class Num>
BigInt to_big(const Num& x) {
  if constexpr (std::is_same_v<Num, BigInt>) {
    return x;
  } else if constexpr (std::is_same_v<Num, std::int64_t>) {
    return BigInt(x);
  } else {
    return static_cast<BigInt>(x);
  }
}

/// Runs f(std::type_identity<Num>{}) with the narrowest integer type whose
/// range covers `magnitude` with headroom for sums.
template <class F>
decltype(auto) with_integer_type(const BigInt& magnitude, F&& f) {
  static const BigInt limit64 = BigInt(1) << 61;
  static const BigInt limit256 = BigInt(1) << 250;
  if (magnitude < limit64) return f(std::type_identity<std::int64_t>{});
  if (magnitude < limit256) return f(std::type_identity<Int256>{});
  return f(std::type_identity<BigInt>{});
}

/// lcm of the denominators of all edge weights and of `extra`.
inline BigInt common_denominator(const WeightedGraph& graph, std::span<const Rational> extra = {}) {
  BigInt l = 1;
  auto absorb = [&](const Rational& r) {
    const BigInt& d = boost::multiprecision::denominator(r);
    if (d != 1) l = boost::multiprecision::lcm(l, d);
  };
  for (const Edge& e : graph.edges()) absorb(e.weight);
  for (const Rational& r : extra) absorb(r);
  return l;
}

inline BigInt scaled(const Rational& r, const BigInt& scale) {
  // r * scale is integral by construction.
  return boost::multiprecision::numerator(r) * (scale / boost::multiprecision::denominator(r));
}

template <class Num>
std::vector<Num> scaled_weights(const WeightedGraph& graph, const BigInt& scale) {
  std::vector<Num> out;
  out.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) out.push_back(from_big<Num>(scaled(e.weight, scale)));
  return out;
}

template <class Num>
std::vector<Num> scaled_rounding(const Rounding& rounding, const BigInt& scale) {
  std::vector<Num> out;
  out.reserve(rounding.values.size());
  for (std::int64_t v : rounding.values) out.push_back(from_big<Num>(BigInt(v) * scale));
  return out;
}

template <class Num>
std::vector<std::optional<Num>> dijkstra(const WeightedGraph& graph, std::span<const Num> length,
                                         VertexId source) {
  std::vector<std::optional<Num>> dist(graph.vertex_count());
  using Item = std::pair<Num, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[source] = Num(0);
  queue.push({Num(0), source});
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != *dist[v]) continue;
    for (const auto& arc : graph.neighbors(v)) {
      Num candidate = d + length[arc.edge];
      if (!dist[arc.to] || candidate < *dist[arc.to]) {
        dist[arc.to] = candidate;
        queue.push({std::move(candidate), arc.to});
      }
    }
  }
  return dist;
}

/// Shortest-path structure from one source. An arc x->y is tight when
/// dist(x) + len(x,y) == dist(y); shortest paths are exactly the simple paths
/// of tight arcs. Tight cycles can only use zero-length edges between
/// equidistant vertices, so those vertices are grouped into plateaus and the
/// plateaus, ordered by distance, form a DAG.
template <class Num>
struct ShortestPathDag {
  VertexId source = 0;
  std::vector<std::optional<Num>> dist;
  std::vector<VertexId> order;                // reachable vertices, plateau-contiguous
  std::vector<std::uint32_t> plateau_of;      // per vertex
  std::vector<std::uint32_t> plateau_begin;   // offsets into order; size = plateaus + 1
  std::vector<std::uint32_t> arc_begin;       // CSR over vertices; size = n + 1
  std::vector<WeightedGraph::Arc> arcs;       // tight arcs leaving each vertex

  bool single_vertex_plateaus() const { return plateau_begin.size() == order.size() + 1; }
};

template <class Num>
ShortestPathDag<Num> build_dag(const WeightedGraph& graph, std::span<const Num> length,
                               VertexId source, std::vector<std::optional<Num>> dist) {
  const std::size_t n = graph.vertex_count();
  ShortestPathDag<Num> dag;
  dag.source = source;
  dag.dist = std::move(dist);

  std::vector<std::uint32_t> uf(n);
  std::iota(uf.begin(), uf.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };

  dag.arc_begin.assign(n + 1, 0);
  for (VertexId x = 0; x < n; ++x) {
    dag.arc_begin[x] = static_cast<std::uint32_t>(dag.arcs.size());
    if (!dag.dist[x]) continue;
    for (const auto& arc : graph.neighbors(x)) {
      if (*dag.dist[x] + length[arc.edge] == *dag.dist[arc.to]) {
        dag.arcs.push_back(arc);
        if (length[arc.edge] == 0) uf[find(x)] = find(arc.to);
      }
    }
  }
  dag.arc_begin[n] = static_cast<std::uint32_t>(dag.arcs.size());

  for (VertexId v = 0; v < n; ++v) {
    if (dag.dist[v]) dag.order.push_back(v);
  }
  std::sort(dag.order.begin(), dag.order.end(), [&](VertexId a, VertexId b) {
    if (*dag.dist[a] != *dag.dist[b]) return *dag.dist[a] < *dag.dist[b];
    std::uint32_t ra = find(a), rb = find(b);
    return ra != rb ? ra < rb : a < b;
  });
  dag.plateau_of.assign(n, 0);
  for (std::size_t i = 0; i < dag.order.size(); ++i) {
    if (i == 0 || find(dag.order[i]) != find(dag.order[i - 1])) {
      dag.plateau_begin.push_back(static_cast<std::uint32_t>(i));
    }
    dag.plateau_of[dag.order[i]] = static_cast<std::uint32_t>(dag.plateau_begin.size() - 1);
  }
  dag.plateau_begin.push_back(static_cast<std::uint32_t>(dag.order.size()));
  return dag;
}

template <class Num>
ShortestPathDag<Num> build_dag(const WeightedGraph& graph, std::span<const Num> length,
                               VertexId source) {
  return build_dag(graph, length, source, dijkstra(graph, length, source));
}

template <class Num>
struct Extrema {
  Num lo;
  Num hi;

  void absorb(const Num& low, const Num& high) {
    if (low < lo) lo = low;
    if (hi < high) hi = high;
  }
};

/// Exhaustive simple-path search inside zero-length plateaus is exponential;
/// it only triggers on zero-weight edges and is capped.
inline constexpr std::size_t kPlateauStepBudget = 20'000'000;

/// For every vertex v reachable from dag.source: the min and max of
/// sum(value[e]) over all shortest simple paths source -> v.
template <class Num>
void path_extrema(const WeightedGraph& graph, const ShortestPathDag<Num>& dag,
                  std::span<const Num> value, std::vector<std::optional<Extrema<Num>>>& reach) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::optional<Extrema<Num>>> arrive(n);
  reach.assign(n, std::nullopt);
  arrive[dag.source] = Extrema<Num>{Num(0), Num(0)};

  auto relax = [&](std::optional<Extrema<Num>>& slot, const Num& low, const Num& high) {
    if (slot) {
      slot->absorb(low, high);
    } else {
      slot = Extrema<Num>{low, high};
    }
  };

  std::vector<char> on_path;
  std::size_t steps = 0;
  const std::size_t plateaus = dag.plateau_begin.size() - 1;
  for (std::size_t p = 0; p < plateaus; ++p) {
    const std::uint32_t begin = dag.plateau_begin[p], end = dag.plateau_begin[p + 1];
    if (end - begin == 1) {
      VertexId v = dag.order[begin];
      reach[v] = arrive[v];
    } else {
      if (on_path.empty()) on_path.assign(n, 0);
      for (std::uint32_t i = begin; i < end; ++i) {
        VertexId entry = dag.order[i];
        if (!arrive[entry]) continue;
        const Extrema<Num> base = *arrive[entry];
        std::function<void(VertexId, const Num&)> walk = [&](VertexId x, const Num& acc) {
          if (++steps > kPlateauStepBudget) {
            throw std::runtime_error("zero-weight plateau too large for exact path enumeration");
          }
          relax(reach[x], base.lo + acc, base.hi + acc);
          on_path[x] = 1;
          for (std::uint32_t k = dag.arc_begin[x]; k < dag.arc_begin[x + 1]; ++k) {
            const auto& arc = dag.arcs[k];
            if (dag.plateau_of[arc.to] != p || on_path[arc.to]) continue;
            walk(arc.to, acc + value[arc.edge]);
          }
          on_path[x] = 0;
        };
        walk(entry, Num(0));
      }
    }
    for (std::uint32_t i = begin; i < end; ++i) {
      VertexId x = dag.order[i];
      if (!reach[x]) continue;
      for (std::uint32_t k = dag.arc_begin[x]; k < dag.arc_begin[x + 1]; ++k) {
        const auto& arc = dag.arcs[k];
        if (dag.plateau_of[arc.to] == p) continue;
        relax(arrive[arc.to], reach[x]->lo + value[arc.edge], reach[x]->hi + value[arc.edge]);
      }
    }
  }
}

/// Scaled instance: original weights, threshold, and the verification logic.
template <class Num>
class VerifierEngine {
 public:
  struct Violation {
    VertexId u = 0;
    VertexId v = 0;
    int condition = 1;  // 1 error bound, 2 weak, 3 strong
    Num a{0};           // condition 1: min/max error; 2, 3: offending/expected length
    Num b{0};
  };

  struct Outcome {
    bool passed = true;
    bool have_error = false;
    Num min_error{0};
    Num max_error{0};
    std::optional<Violation> violation;  // first one found, in source-major order
  };

  VerifierEngine(const WeightedGraph& graph, const BigInt& scale, const Num& epsilon, Level level,
                 Comparison comparison)
      : graph_(&graph),
        weight_(scaled_weights<Num>(graph, scale)),
        epsilon_(epsilon),
        level_(level),
        comparison_(comparison) {
    dags_.reserve(graph.vertex_count());
    for (VertexId s = 0; s < graph.vertex_count(); ++s) {
      dags_.push_back(build_dag<Num>(graph, weight_, s));
    }
  }

  const std::vector<Num>& weights() const { return weight_; }
  const ShortestPathDag<Num>& dag(VertexId source) const { return dags_[source]; }

  bool within(const Num& err) const {
    if (comparison_ == Comparison::strict) return -epsilon_ < err && err < epsilon_;
    return -epsilon_ <= err && err <= epsilon_;
  }

  /// `stop_early`: return at the first violation (no worst-error tracking).
  Outcome run(std::span<const Num> rounded, bool stop_early, bool errors_only = false) const {
    const WeightedGraph& g = *graph_;
    const std::size_t n = g.vertex_count();
    std::vector<Num> delta(g.edge_count());
    for (std::size_t e = 0; e < delta.size(); ++e) delta[e] = rounded[e] - weight_[e];

    Outcome out;
    auto fail = [&](VertexId u, VertexId v, int condition, const Num& a, const Num& b) {
      if (out.passed) out.violation = Violation{u, v, condition, a, b};
      out.passed = false;
    };

    std::vector<std::optional<Extrema<Num>>> reach, reach_rounded;
    for (VertexId s = 0; s + 1 < n; ++s) {
      const auto& dag = dags_[s];
      path_extrema<Num>(g, dag, delta, reach);
      for (VertexId v = s + 1; v < n; ++v) {
        if (!reach[v]) continue;
        const auto& ext = *reach[v];
        if (!out.have_error) {
          out.min_error = ext.lo;
          out.max_error = ext.hi;
          out.have_error = true;
        } else {
          if (ext.lo < out.min_error) out.min_error = ext.lo;
          if (out.max_error < ext.hi) out.max_error = ext.hi;
        }
        if (!within(ext.lo) || !within(ext.hi)) {
          fail(s, v, 1, ext.lo, ext.hi);
          if (stop_early) return out;
        }
      }
      if (errors_only || level_ == Level::path_oblivious) continue;

      auto rounded_dist = dijkstra<Num>(g, rounded, s);
      for (VertexId v = s + 1; v < n; ++v) {
        if (!reach[v]) continue;
        // Every original shortest path must stay shortest after rounding.
        Num longest_rounded = *dag.dist[v] + reach[v]->hi;
        if (longest_rounded != *rounded_dist[v]) {
          fail(s, v, 2, longest_rounded, *rounded_dist[v]);
          if (stop_early) return out;
        }
      }
      if (level_ != Level::strong) continue;

      auto rounded_dag = build_dag<Num>(g, rounded, s, std::move(rounded_dist));
      path_extrema<Num>(g, rounded_dag, weight_, reach_rounded);
      for (VertexId v = s + 1; v < n; ++v) {
        if (!reach_rounded[v]) continue;
        if (reach_rounded[v]->hi != *dag.dist[v]) {
          fail(s, v, 3, reach_rounded[v]->hi, *dag.dist[v]);
          if (stop_early) return out;
        }
      }
    }
    return out;
  }

 private:
  const WeightedGraph* graph_;
  std::vector<Num> weight_;
  Num epsilon_;
  Level level_;
  Comparison comparison_;
  std::vector<ShortestPathDag<Num>> dags_;
};

}  // namespace spround::detail
