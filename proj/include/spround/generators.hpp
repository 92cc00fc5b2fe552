#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "spround/graph.hpp"
#include "spround/rational.hpp"
#include "spround/sat_reduction.hpp"

namespace spround {

// Seeded random instances. All randomness in the project goes through a
// caller-owned std::mt19937_64.

using Rng = std::mt19937_64;
using WeightSampler = std::function<Rational(Rng&)>;

/// p/q with q uniform in [1, max_denominator] and p uniform in [0, q * max_value].
WeightSampler uniform_rational_weights(std::int64_t max_denominator, std::int64_t max_value = 5);

/// k/step with k uniform in [0, step * max_value].
WeightSampler grid_weights(std::int64_t step, std::int64_t max_value);

/// Random recursive tree: vertex v > 0 attaches to a uniform earlier vertex.
WeightedGraph random_tree(Rng& rng, std::size_t vertex_count, const WeightSampler& weight);

/// Path 0 - 1 - ... - (vertex_count-1).
WeightedGraph random_path(Rng& rng, std::size_t vertex_count, const WeightSampler& weight);

/// Vertex 0 joined to every other vertex.
WeightedGraph random_star(Rng& rng, std::size_t vertex_count, const WeightSampler& weight);

std::vector<Rational> random_weights(Rng& rng, std::size_t count, const WeightSampler& weight);

/// Clauses over three distinct variables with random signs (already normalized).
CnfFormula random_formula(Rng& rng, std::uint32_t variable_count, std::size_t clause_count);

}  // namespace spround
