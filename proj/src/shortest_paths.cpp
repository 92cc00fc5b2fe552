#include "spround/shortest_paths.hpp"

#include <variant>

#include "path_engine.hpp"

namespace spround {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::path_oblivious: return "path_oblivious";
    case Level::weak: return "weak";
    case Level::strong: return "strong";
  }
  return "?";
}

std::string_view to_string(Comparison comparison) {
  return comparison == Comparison::strict ? "strict" : "closed";
}

Level parse_level(std::string_view text) {
  if (text == "oblivious" || text == "path_oblivious" || text == "path-oblivious") {
    return Level::path_oblivious;
  }
  if (text == "weak") return Level::weak;
  if (text == "strong") return Level::strong;
  throw std::invalid_argument("unknown level '" + std::string(text) + "'");
}

Comparison parse_comparison(std::string_view text) {
  if (text == "strict") return Comparison::strict;
  if (text == "closed") return Comparison::closed;
  throw std::invalid_argument("unknown comparison mode '" + std::string(text) + "'");
}

namespace {

void check_rounding(const WeightedGraph& graph, const Rounding& rounding) {
  if (rounding.values.size() != graph.edge_count()) {
    throw std::invalid_argument("rounding has " + std::to_string(rounding.values.size()) +
                                " values for " + std::to_string(graph.edge_count()) + " edges");
  }
  for (std::int64_t v : rounding.values) {
    if (v < 0) throw std::invalid_argument("rounded weight " + std::to_string(v) + " is negative");
  }
}

BigInt weight_sum(const WeightedGraph& graph, const BigInt& scale) {
  BigInt total = 0;
  for (const Edge& e : graph.edges()) total += detail::scaled(e.weight, scale);
  return total;
}

BigInt rounding_sum(const Rounding& rounding) {
  BigInt total = 0;
  for (std::int64_t v : rounding.values) total += v;
  return total;
}

template <class Num>
DistanceMatrix distances_with(const WeightedGraph& graph, std::span<const Num> length,
                              const BigInt& scale) {
  DistanceMatrix out;
  out.reserve(graph.vertex_count());
  for (VertexId s = 0; s < graph.vertex_count(); ++s) {
    auto dist = detail::dijkstra<Num>(graph, length, s);
    std::vector<std::optional<Rational>> row(dist.size());
    for (std::size_t v = 0; v < dist.size(); ++v) {
      if (dist[v]) row[v] = Rational(detail::to_big(*dist[v]), scale);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

DistanceMatrix all_pairs_shortest(const WeightedGraph& graph) {
  BigInt scale = detail::common_denominator(graph);
  return detail::with_integer_type(weight_sum(graph, scale), [&](auto tag) {
    using Num = typename decltype(tag)::type;
    auto w = detail::scaled_weights<Num>(graph, scale);
    return distances_with<Num>(graph, w, scale);
  });
}

DistanceMatrix all_pairs_shortest(const WeightedGraph& graph, const Rounding& rounding) {
  check_rounding(graph, rounding);
  return detail::with_integer_type(rounding_sum(rounding), [&](auto tag) {
    using Num = typename decltype(tag)::type;
    auto w = detail::scaled_rounding<Num>(rounding, BigInt(1));
    return distances_with<Num>(graph, w, BigInt(1));
  });
}

ErrorExtrema shortest_path_error_extrema(const WeightedGraph& graph, const Rounding& rounding,
                                         VertexId u, VertexId v) {
  check_rounding(graph, rounding);
  if (u >= graph.vertex_count() || v >= graph.vertex_count()) {
    throw std::invalid_argument("vertex outside graph");
  }
  BigInt scale = detail::common_denominator(graph);
  BigInt magnitude = 2 * (weight_sum(graph, scale) + scale * rounding_sum(rounding));
  return detail::with_integer_type(magnitude, [&](auto tag) {
    using Num = typename decltype(tag)::type;
    auto w = detail::scaled_weights<Num>(graph, scale);
    auto r = detail::scaled_rounding<Num>(rounding, scale);
    std::vector<Num> delta(w.size());
    for (std::size_t e = 0; e < w.size(); ++e) delta[e] = r[e] - w[e];
    auto dag = detail::build_dag<Num>(graph, w, u);
    std::vector<std::optional<detail::Extrema<Num>>> reach;
    detail::path_extrema<Num>(graph, dag, delta, reach);
    if (!reach[v]) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " unreachable from " +
                                  std::to_string(u));
    }
    return ErrorExtrema{Rational(detail::to_big(reach[v]->lo), scale),
                        Rational(detail::to_big(reach[v]->hi), scale)};
  });
}

struct RoundingVerifier::Impl {
  using Engines = std::variant<detail::VerifierEngine<std::int64_t>,
                               detail::VerifierEngine<detail::Int256>,
                               detail::VerifierEngine<BigInt>>;

  WeightedGraph graph;
  Rational epsilon;
  Level level;
  Comparison comparison;
  BigInt scale;
  BigInt base_magnitude;      // scaled weights + threshold
  BigInt rounding_capacity;   // largest rounding sum the engine below handles
  std::unique_ptr<Engines> engine;

  Impl(const WeightedGraph& g, const Rational& eps, Level lvl, Comparison cmp)
      : graph(g), epsilon(eps), level(lvl), comparison(cmp) {
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    Rational extra[] = {eps};
    scale = detail::common_denominator(graph, extra);
    base_magnitude = weight_sum(graph, scale) + detail::scaled(eps, scale);
    // Size the engine for roundings within the admissible band of each edge.
    BigInt typical = 0;
    BigInt band = spround::ceil(eps) + 1;
    for (const Edge& e : graph.edges()) typical += spround::ceil(e.weight) + band;
    rounding_capacity = typical;
    engine = make_engine(magnitude_for(typical));
  }

  BigInt magnitude_for(const BigInt& rounding_total) const {
    return 2 * (base_magnitude + scale * rounding_total);
  }

  std::unique_ptr<Engines> make_engine(const BigInt& magnitude) const {
    return detail::with_integer_type(magnitude, [&](auto tag) {
      using Num = typename decltype(tag)::type;
      return std::make_unique<Engines>(std::in_place_type<detail::VerifierEngine<Num>>, graph,
                                       scale, detail::from_big<Num>(detail::scaled(epsilon, scale)),
                                       level, comparison);
    });
  }

  struct Result {
    bool passed;
    Rational min_error;
    Rational max_error;
    std::optional<Witness> witness;
  };

  Result run(const Rounding& rounding, bool stop_early, bool errors_only) const {
    check_rounding(graph, rounding);
    BigInt total = rounding_sum(rounding);
    std::unique_ptr<Engines> oversized;
    const Engines* use = engine.get();
    if (total > rounding_capacity) {
      oversized = make_engine(magnitude_for(total));
      use = oversized.get();
    }
    return std::visit(
        [&](const auto& eng) {
          using Num = std::decay_t<decltype(eng.weights().front())>;
          auto rounded = detail::scaled_rounding<Num>(rounding, scale);
          auto out = eng.run(rounded, stop_early, errors_only);
          Result r{out.passed, Rational(0), Rational(0), std::nullopt};
          if (out.have_error) {
            r.min_error = Rational(detail::to_big(out.min_error), scale);
            r.max_error = Rational(detail::to_big(out.max_error), scale);
          }
          if (out.violation) {
            const auto& vi = *out.violation;
            Rational a(detail::to_big(vi.a), scale), b(detail::to_big(vi.b), scale);
            std::string text;
            if (vi.condition == 1) {
              const char* open = comparison == Comparison::strict ? "(" : "[";
              const char* close = comparison == Comparison::strict ? ")" : "]";
              text = "error bound: shortest-path errors span [" + to_string(a) + ", " +
                     to_string(b) + "], allowed " + open + "-" + to_string(epsilon) + ", " +
                     to_string(epsilon) + close;
            } else if (vi.condition == 2) {
              text = "weak: an original shortest path has rounded length " + to_string(a) +
                     " but the rounded distance is " + to_string(b);
            } else {
              text = "strong: a rounded shortest path has original length " + to_string(a) +
                     " but the original distance is " + to_string(b);
            }
            r.witness = Witness{vi.u, vi.v, std::move(text)};
          }
          return r;
        },
        *use);
  }
};

RoundingVerifier::RoundingVerifier(const WeightedGraph& graph, const Rational& epsilon,
                                   Level level, Comparison comparison)
    : impl_(std::make_unique<Impl>(graph, epsilon, level, comparison)) {}

RoundingVerifier::~RoundingVerifier() = default;
RoundingVerifier::RoundingVerifier(RoundingVerifier&&) noexcept = default;
RoundingVerifier& RoundingVerifier::operator=(RoundingVerifier&&) noexcept = default;

const WeightedGraph& RoundingVerifier::graph() const { return impl_->graph; }

VerificationReport RoundingVerifier::report(const Rounding& rounding) const {
  auto r = impl_->run(rounding, false, false);
  VerificationReport report;
  report.level_checked = impl_->level;
  report.comparison = impl_->comparison;
  report.epsilon = impl_->epsilon;
  report.passed = r.passed;
  report.worst_error = abs(r.max_error) >= abs(r.min_error) ? r.max_error : r.min_error;
  report.witness = std::move(r.witness);
  return report;
}

bool RoundingVerifier::passes(const Rounding& rounding) const {
  return impl_->run(rounding, true, false).passed;
}

Rational RoundingVerifier::worst_abs_error(const Rounding& rounding) const {
  auto r = impl_->run(rounding, false, true);
  return std::max(abs(r.min_error), abs(r.max_error));
}

VerificationReport verify_rounding(const WeightedGraph& graph, const Rounding& rounding,
                                   const Rational& epsilon, Level level, Comparison comparison) {
  return RoundingVerifier(graph, epsilon, level, comparison).report(rounding);
}

}  // namespace spround
