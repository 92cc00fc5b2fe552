#include "spround/path_rounding.hpp"

#include <stdexcept>

namespace spround {

std::vector<std::int64_t> round_path(std::span<const Rational> weights) {
  return round_path(weights, Rational(1, 2));
}

std::vector<std::int64_t> round_path(std::span<const Rational> weights, const Rational& offset) {
  std::vector<std::int64_t> out;
  out.reserve(weights.size());
  Rational prefix = offset;
  BigInt previous_floor = floor(prefix);
  for (const Rational& w : weights) {
    if (w < 0) throw std::invalid_argument("negative path weight " + to_string(w));
    prefix += w;
    BigInt current = floor(prefix);
    out.push_back(to_int64(current - previous_floor));
    previous_floor = std::move(current);
  }
  return out;
}

}  // namespace spround
