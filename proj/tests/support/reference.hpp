#pragma once

// Slow, obviously-correct reference computations used as test oracles. They
// share nothing with the library beyond the data types.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "spround/graph.hpp"
#include "spround/rational.hpp"
#include "spround/shortest_paths.hpp"

namespace spround::reference {

using Path = std::vector<EdgeId>;

/// Every simple path from u to v, by depth-first search.
inline std::vector<Path> simple_paths(const WeightedGraph& g, VertexId u, VertexId v) {
  std::vector<Path> out;
  std::vector<char> seen(g.vertex_count(), 0);
  Path current;
  std::function<void(VertexId)> dfs = [&](VertexId x) {
    if (x == v) {
      out.push_back(current);
      return;
    }
    seen[x] = 1;
    for (const auto& arc : g.neighbors(x)) {
      if (seen[arc.to]) continue;
      current.push_back(arc.edge);
      dfs(arc.to);
      current.pop_back();
    }
    seen[x] = 0;
  };
  dfs(u);
  return out;
}

inline Rational path_weight(const WeightedGraph& g, const Path& p) {
  Rational total = 0;
  for (EdgeId e : p) total += g.edge(e).weight;
  return total;
}

inline Rational path_weight(const Rounding& r, const Path& p) {
  Rational total = 0;
  for (EdgeId e : p) total += r.values[e];
  return total;
}

/// Simple paths of minimum weight under `weight`.
inline std::vector<Path> shortest_paths(const WeightedGraph& g, VertexId u, VertexId v,
                                        const std::function<Rational(const Path&)>& weight) {
  auto all = simple_paths(g, u, v);
  std::vector<Path> best;
  std::optional<Rational> min;
  for (auto& p : all) {
    Rational w = weight(p);
    if (!min || w < *min) {
      min = w;
      best.clear();
    }
    if (w == *min) best.push_back(std::move(p));
  }
  return best;
}

/// Floyd-Warshall over exact rationals.
inline DistanceMatrix floyd_warshall(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  DistanceMatrix d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = Rational(0);
  for (const Edge& e : g.edges()) {
    if (!d[e.u][e.v] || e.weight < *d[e.u][e.v]) d[e.u][e.v] = d[e.v][e.u] = e.weight;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!d[k][j]) continue;
        Rational via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  }
  return d;
}

struct Extrema {
  Rational lo, hi;
};

inline std::optional<Extrema> error_extrema(const WeightedGraph& g, const Rounding& r, VertexId u,
                                            VertexId v) {
  auto paths = shortest_paths(g, u, v, [&](const Path& p) { return path_weight(g, p); });
  if (paths.empty()) return std::nullopt;
  std::optional<Extrema> out;
  for (const auto& p : paths) {
    Rational err = path_weight(r, p) - path_weight(g, p);
    if (!out) {
      out = Extrema{err, err};
    } else {
      out->lo = std::min(out->lo, err);
      out->hi = std::max(out->hi, err);
    }
  }
  return out;
}

/// Definition-level check by explicit path enumeration.
inline bool verify(const WeightedGraph& g, const Rounding& r, const Rational& eps, Level level,
                   Comparison cmp) {
  auto within = [&](const Rational& x) {
    return cmp == Comparison::strict ? (-eps < x && x < eps) : (-eps <= x && x <= eps);
  };
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (VertexId v = u + 1; v < g.vertex_count(); ++v) {
      auto original = shortest_paths(g, u, v, [&](const Path& p) { return path_weight(g, p); });
      if (original.empty()) continue;
      for (const auto& p : original) {
        if (!within(path_weight(r, p) - path_weight(g, p))) return false;
      }
      if (level == Level::path_oblivious) continue;
      auto rounded = shortest_paths(g, u, v, [&](const Path& p) { return path_weight(r, p); });
      auto contains = [](const std::vector<Path>& set, const Path& p) {
        return std::find(set.begin(), set.end(), p) != set.end();
      };
      for (const auto& p : original) {
        if (!contains(rounded, p)) return false;
      }
      if (level == Level::weak) continue;
      for (const auto& p : rounded) {
        if (!contains(original, p)) return false;
      }
    }
  }
  return true;
}

/// Largest |error| over all pairs and all of their shortest paths.
inline Rational worst_abs_error(const WeightedGraph& g, const Rounding& r) {
  Rational worst = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (VertexId v = u + 1; v < g.vertex_count(); ++v) {
      if (auto ext = error_extrema(g, r, u, v)) {
        worst = std::max({worst, abs(ext->lo), abs(ext->hi)});
      }
    }
  }
  return worst;
}

}  // namespace spround::reference
