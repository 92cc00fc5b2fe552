#include <doctest.h>

#include "spround/generators.hpp"
#include "spround/path_rounding.hpp"
#include "spround/shortest_paths.hpp"

using namespace spround;

namespace {

std::vector<Rational> weights(std::initializer_list<Rational> list) { return list; }

}  // namespace

TEST_CASE("round_path examples") {
  using V = std::vector<std::int64_t>;
  // Prefix sums 1, 3/2, 2 have floors 1, 1, 2 after the initial floor 0.
  CHECK(round_path(weights({Rational(1, 2), Rational(1, 2), Rational(1, 2)})) == V{1, 0, 1});
  CHECK(round_path(weights({Rational(3), Rational(7), Rational(2)})) == V{3, 7, 2});
  CHECK(round_path(std::vector<Rational>{}).empty());
  CHECK(round_path(weights({Rational(0), Rational(0)})) == V{0, 0});
  CHECK_THROWS_AS(round_path(weights({Rational(-1)})), std::invalid_argument);
}

TEST_CASE("round_path with an explicit offset") {
  using V = std::vector<std::int64_t>;
  CHECK(round_path(weights({Rational(1, 2), Rational(1, 2)}), Rational(0)) == V{0, 1});
}

TEST_CASE("every contiguous subpath changes by less than 1") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, 60)(rng);
    auto w = random_weights(rng, n, uniform_rational_weights(100, 5));
    auto r = round_path(w);
    REQUIRE(r.size() == n);
    for (std::size_t a = 0; a < n; ++a) {
      Rational error = 0;
      for (std::size_t z = a; z < n; ++z) {
        CHECK(r[z] >= 0);
        error += Rational(r[z]) - w[z];
        CHECK(error > -1);
        CHECK(error < 1);
      }
    }
  }
}

TEST_CASE("path roundings pass strong verification at epsilon 1") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 30;
    WeightedGraph path = random_path(rng, n, uniform_rational_weights(20, 4));
    std::vector<Rational> w;
    for (const Edge& e : path.edges()) w.push_back(e.weight);  // canonical order is path order
    Rounding r{round_path(w)};
    CHECK(verify_rounding(path, r, Rational(1), Level::strong).passed);
  }
}
