#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spround/rational.hpp"

namespace spround {

/// 1-rounding of a path e1..en: out[i] = floor(d_i) - floor(d_{i-1}) with
/// d_i = offset + w_1 + ... + w_i. With the default offset of 1/2 every
/// contiguous subpath changes by strictly less than 1. Weights must be
/// non-negative (throws std::invalid_argument otherwise).
std::vector<std::int64_t> round_path(std::span<const Rational> weights);
std::vector<std::int64_t> round_path(std::span<const Rational> weights, const Rational& offset);

}  // namespace spround
