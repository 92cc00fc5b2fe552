#include "spround/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace spround {

WeightSampler uniform_rational_weights(std::int64_t max_denominator, std::int64_t max_value) {
  if (max_denominator < 1 || max_value < 0) {
    throw std::invalid_argument("weight bounds must be positive");
  }
  return [=](Rng& rng) {
    std::int64_t q = std::uniform_int_distribution<std::int64_t>(1, max_denominator)(rng);
    std::int64_t p = std::uniform_int_distribution<std::int64_t>(0, q * max_value)(rng);
    return Rational(p, q);
  };
}

WeightSampler grid_weights(std::int64_t step, std::int64_t max_value) {
  if (step < 1 || max_value < 0) throw std::invalid_argument("grid bounds must be positive");
  return [=](Rng& rng) {
    std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, step * max_value)(rng);
    return Rational(k, step);
  };
}

WeightedGraph random_tree(Rng& rng, std::size_t vertex_count, const WeightSampler& weight) {
  if (vertex_count == 0) throw std::invalid_argument("a tree needs at least one vertex");
  std::vector<Edge> edges;
  for (VertexId v = 1; v < vertex_count; ++v) {
    VertexId parent = std::uniform_int_distribution<VertexId>(0, v - 1)(rng);
    edges.push_back(Edge{parent, v, weight(rng)});
  }
  return WeightedGraph(vertex_count, std::move(edges));
}

WeightedGraph random_path(Rng& rng, std::size_t vertex_count, const WeightSampler& weight) {
  if (vertex_count == 0) throw std::invalid_argument("a path needs at least one vertex");
  std::vector<Edge> edges;
  for (VertexId v = 1; v < vertex_count; ++v) edges.push_back(Edge{v - 1, v, weight(rng)});
  return WeightedGraph(vertex_count, std::move(edges));
}

WeightedGraph random_star(Rng& rng, std::size_t vertex_count, const WeightSampler& weight) {
  if (vertex_count == 0) throw std::invalid_argument("a star needs at least one vertex");
  std::vector<Edge> edges;
  for (VertexId v = 1; v < vertex_count; ++v) edges.push_back(Edge{0, v, weight(rng)});
  return WeightedGraph(vertex_count, std::move(edges));
}

std::vector<Rational> random_weights(Rng& rng, std::size_t count, const WeightSampler& weight) {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(weight(rng));
  return out;
}

CnfFormula random_formula(Rng& rng, std::uint32_t variable_count, std::size_t clause_count) {
  if (variable_count < 3 && clause_count > 0) {
    throw std::invalid_argument("need at least 3 variables for 3-literal clauses");
  }
  CnfFormula f;
  f.variable_count = variable_count;
  std::uniform_int_distribution<std::uint32_t> pick(1, variable_count);
  std::bernoulli_distribution sign(0.5);
  for (std::size_t j = 0; j < clause_count; ++j) {
    Clause clause;
    while (clause.size() < 3) {
      std::uint32_t v = pick(rng);
      if (std::any_of(clause.begin(), clause.end(), [&](const Literal& l) { return l.variable == v; })) {
        continue;
      }
      clause.push_back(Literal{v, sign(rng)});
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace spround
