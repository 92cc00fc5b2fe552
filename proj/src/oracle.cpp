#include "spround/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "path_engine.hpp"

namespace spround {

CandidateDomain candidate_domains(const WeightedGraph& graph, const Rational& epsilon,
                                  Comparison comparison) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  CandidateDomain out;
  out.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) {
    Rational low = e.weight - epsilon, high = e.weight + epsilon;
    BigInt first, last;
    if (comparison == Comparison::strict) {
      first = floor(low) + 1;
      last = ceil(high) - 1;
    } else {
      first = ceil(low);
      last = floor(high);
    }
    if (first < 0) first = 0;
    std::vector<std::int64_t> values;
    for (BigInt z = first; z <= last; ++z) values.push_back(to_int64(z));
    out.push_back(std::move(values));
  }
  return out;
}

void apply_pins(const WeightedGraph& graph, std::span<const Pin> pins, CandidateDomain& domains) {
  for (const Pin& pin : pins) {
    auto id = graph.find_edge(pin.edge.u, pin.edge.v);
    if (!id) {
      throw std::invalid_argument("pinned edge {" + std::to_string(pin.edge.u) + ", " +
                                  std::to_string(pin.edge.v) + "} is not in the graph");
    }
    const Rational& w = graph.edge(*id).weight;
    std::int64_t forced = to_int64(pin.direction == PinDirection::up ? ceil(w) : floor(w));
    auto& values = domains[*id];
    bool present = std::find(values.begin(), values.end(), forced) != values.end();
    values.clear();
    if (present) values.push_back(forced);
  }
}

BigInt domain_product(const CandidateDomain& domains) {
  BigInt product = 1;
  for (const auto& values : domains) product *= values.size();
  return product;
}

void enumerate_roundings(const CandidateDomain& domains,
                         const std::function<bool(const Rounding&)>& visit, std::uint64_t budget) {
  BigInt product = domain_product(domains);
  if (product > budget) {
    throw BudgetExceeded("enumeration needs " + product.str() + " roundings, budget is " +
                             std::to_string(budget),
                         product);
  }
  if (product == 0) return;
  const std::size_t m = domains.size();
  std::vector<std::size_t> index(m, 0);
  Rounding current;
  current.values.resize(m);
  for (std::size_t e = 0; e < m; ++e) current.values[e] = domains[e][0];
  while (true) {
    if (!visit(current)) return;
    std::size_t e = m;
    while (e > 0) {
      --e;
      if (++index[e] < domains[e].size()) {
        current.values[e] = domains[e][index[e]];
        break;
      }
      index[e] = 0;
      current.values[e] = domains[e][0];
      if (e == 0) return;
    }
    if (m == 0) return;
  }
}

void enumerate_roundings(const WeightedGraph& graph, const Rational& epsilon, Comparison comparison,
                         const std::function<bool(const Rounding&)>& visit, std::uint64_t budget) {
  enumerate_roundings(candidate_domains(graph, epsilon, comparison), visit, budget);
}

namespace {

// Verifies with a threshold no smaller than necessary: the verifier rejects
// epsilon = 0, which only arises in closed mode where it means "error 0".
std::optional<RoundingVerifier> make_verifier(const WeightedGraph& graph, const Rational& epsilon,
                                              Level level, Comparison comparison) {
  if (epsilon > 0) return RoundingVerifier(graph, epsilon, level, comparison);
  return std::nullopt;
}

// epsilon = 0 closed: only the exact weights themselves qualify, and those
// exist only for integer weights, so every candidate rounding is exact.
bool exact_passes(const WeightedGraph& graph, const Rounding& rounding) {
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    if (Rational(rounding.values[e]) != graph.edge(static_cast<EdgeId>(e)).weight) return false;
  }
  return true;
}

}  // namespace

BruteForceResult brute_force_decide(const WeightedGraph& graph, const Rational& epsilon,
                                    Level level, Comparison comparison, std::uint64_t budget) {
  auto domains = candidate_domains(graph, epsilon, comparison);
  auto verifier = make_verifier(graph, epsilon, level, comparison);
  BruteForceResult result;
  enumerate_roundings(
      domains,
      [&](const Rounding& r) {
        bool ok = verifier ? verifier->passes(r) : exact_passes(graph, r);
        if (ok) {
          result.admits = true;
          result.witness = r;
          return false;
        }
        return true;
      },
      budget);
  return result;
}

std::uint64_t count_roundings(const WeightedGraph& graph, const Rational& epsilon, Level level,
                              Comparison comparison, std::span<const Pin> pins,
                              std::uint64_t budget) {
  auto domains = candidate_domains(graph, epsilon, comparison);
  apply_pins(graph, pins, domains);
  auto verifier = make_verifier(graph, epsilon, level, comparison);
  std::uint64_t count = 0;
  enumerate_roundings(
      domains,
      [&](const Rounding& r) {
        if (verifier ? verifier->passes(r) : exact_passes(graph, r)) ++count;
        return true;
      },
      budget);
  return count;
}

namespace {

template <class Num>
class Backtracker {
 public:
  Backtracker(const WeightedGraph& graph, const CandidateDomain& domains, const BigInt& scale,
              const Rational& epsilon, Comparison comparison, const RoundingVerifier* verifier,
              std::uint64_t node_budget)
      : graph_(graph),
        domains_(domains),
        scale_(scale),
        epsilon_(detail::from_big<Num>(detail::scaled(epsilon, scale))),
        comparison_(comparison),
        verifier_(verifier),
        node_budget_(node_budget),
        weight_(detail::scaled_weights<Num>(graph, scale)) {
    const std::size_t n = graph.vertex_count(), m = graph.edge_count();
    for (VertexId s = 0; s < n; ++s) dags_.push_back(detail::build_dag<Num>(graph, weight_, s));

    // Edge set of every pair's shortest paths: tight arcs that can still reach
    // the target. Collected as (pair, edge) incidences.
    struct PairEdges {
      VertexId s, v;
      std::vector<EdgeId> edges;
    };
    std::vector<PairEdges> pairs;
    std::vector<std::uint32_t> uses(m, 0);
    for (VertexId s = 0; s < n; ++s) {
      const auto& dag = dags_[s];
      std::vector<std::vector<WeightedGraph::Arc>> reverse(n);
      for (VertexId x = 0; x < n; ++x) {
        for (std::uint32_t k = dag.arc_begin[x]; k < dag.arc_begin[x + 1]; ++k) {
          reverse[dag.arcs[k].to].push_back({x, dag.arcs[k].edge});
        }
      }
      std::vector<char> marked(n);
      std::vector<char> edge_seen(m);
      for (VertexId v = s + 1; v < n; ++v) {
        if (!dag.dist[v]) continue;
        std::fill(marked.begin(), marked.end(), 0);
        std::fill(edge_seen.begin(), edge_seen.end(), 0);
        PairEdges pe{s, v, {}};
        std::vector<VertexId> stack{v};
        marked[v] = 1;
        while (!stack.empty()) {
          VertexId y = stack.back();
          stack.pop_back();
          for (const auto& arc : reverse[y]) {
            if (!edge_seen[arc.edge]) {
              edge_seen[arc.edge] = 1;
              pe.edges.push_back(arc.edge);
            }
            if (!marked[arc.to]) {
              marked[arc.to] = 1;
              stack.push_back(arc.to);
            }
          }
        }
        for (EdgeId e : pe.edges) ++uses[e];
        pairs.push_back(std::move(pe));
      }
    }

    order_.resize(m);
    std::iota(order_.begin(), order_.end(), EdgeId{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](EdgeId a, EdgeId b) { return uses[a] > uses[b]; });
    std::vector<std::uint32_t> position(m);
    for (std::uint32_t i = 0; i < m; ++i) position[order_[i]] = i;

    checks_.resize(m);
    for (const auto& pe : pairs) {
      std::uint32_t depth = 0;
      for (EdgeId e : pe.edges) depth = std::max(depth, position[e]);
      auto& at = checks_[depth];
      if (at.empty() || at.back().source != pe.s) at.push_back({pe.s, {}});
      at.back().targets.push_back(pe.v);
    }

    delta_.assign(m, Num(0));
    current_.values.assign(m, 0);
  }

  std::uint64_t run(const std::function<bool(const Rounding&)>& visit) {
    visit_ = &visit;
    found_ = 0;
    stopped_ = false;
    nodes_ = 0;
    if (std::any_of(domains_.begin(), domains_.end(), [](const auto& d) { return d.empty(); })) {
      return 0;
    }
    descend(0);
    return found_;
  }

 private:
  struct Check {
    VertexId source;
    std::vector<VertexId> targets;
  };

  bool within(const Num& err) const {
    if (comparison_ == Comparison::strict) return -epsilon_ < err && err < epsilon_;
    return -epsilon_ <= err && err <= epsilon_;
  }

  bool consistent(std::size_t depth) {
    for (const Check& check : checks_[depth]) {
      detail::path_extrema<Num>(graph_, dags_[check.source], delta_, reach_);
      for (VertexId v : check.targets) {
        if (!within(reach_[v]->lo) || !within(reach_[v]->hi)) return false;
      }
    }
    return true;
  }

  void descend(std::size_t depth) {
    if (stopped_) return;
    if (depth == order_.size()) {
      if (verifier_ && !verifier_->passes(current_)) return;
      ++found_;
      if (!(*visit_)(current_)) stopped_ = true;
      return;
    }
    const EdgeId e = order_[depth];
    for (std::int64_t value : domains_[e]) {
      if (++nodes_ > node_budget_) {
        throw BudgetExceeded("backtracking exceeded " + std::to_string(node_budget_) + " nodes",
                             BigInt(nodes_));
      }
      current_.values[e] = value;
      delta_[e] = detail::from_big<Num>(BigInt(value) * scale_) - weight_[e];
      if (consistent(depth)) descend(depth + 1);
      if (stopped_) break;
    }
    delta_[e] = Num(0);
  }

  const WeightedGraph& graph_;
  const CandidateDomain& domains_;
  BigInt scale_;
  Num epsilon_;
  Comparison comparison_;
  const RoundingVerifier* verifier_;
  std::uint64_t node_budget_;
  std::vector<Num> weight_;
  std::vector<detail::ShortestPathDag<Num>> dags_;
  std::vector<EdgeId> order_;
  std::vector<std::vector<Check>> checks_;  // by depth of the last edge assigned
  std::vector<Num> delta_;
  std::vector<std::optional<detail::Extrema<Num>>> reach_;
  Rounding current_;
  const std::function<bool(const Rounding&)>* visit_ = nullptr;
  std::uint64_t found_ = 0;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::uint64_t backtracking_enumerate(const WeightedGraph& graph, const Rational& epsilon,
                                     Level level, Comparison comparison,
                                     const BacktrackOptions& options,
                                     const std::function<bool(const Rounding&)>& visit) {
  auto domains = candidate_domains(graph, epsilon, comparison);
  apply_pins(graph, options.pins, domains);
  auto verifier = make_verifier(graph, epsilon, level, comparison);

  Rational extra[] = {epsilon};
  BigInt scale = detail::common_denominator(graph, extra);
  BigInt magnitude = detail::scaled(epsilon, scale);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    magnitude += detail::scaled(graph.edge(static_cast<EdgeId>(e)).weight, scale);
    if (!domains[e].empty()) magnitude += BigInt(domains[e].back()) * scale;
  }
  magnitude *= 2;
  return detail::with_integer_type(magnitude, [&](auto tag) {
    using Num = typename decltype(tag)::type;
    Backtracker<Num> search(graph, domains, scale, epsilon, comparison,
                            verifier ? &*verifier : nullptr, options.node_budget);
    return search.run(visit);
  });
}

std::optional<Rounding> backtracking_solve(const WeightedGraph& graph, const Rational& epsilon,
                                           Level level, Comparison comparison,
                                           const BacktrackOptions& options) {
  std::optional<Rounding> found;
  backtracking_enumerate(graph, epsilon, level, comparison, options, [&](const Rounding& r) {
    found = r;
    return false;
  });
  return found;
}

Rational brute_force_min_epsilon(const WeightedGraph& graph, std::uint64_t budget) {
  if (graph.edge_count() == 0) return Rational(0);
  // Any rounding moving an edge by 2 or more is beaten by one that keeps all
  // errors below 2, so the search can stay inside the open band of width 2.
  auto domains = candidate_domains(graph, Rational(2), Comparison::strict);
  RoundingVerifier verifier(graph, Rational(2), Level::path_oblivious, Comparison::strict);
  std::optional<Rational> best;
  enumerate_roundings(
      domains,
      [&](const Rounding& r) {
        Rational worst = verifier.worst_abs_error(r);
        if (!best || worst < *best) best = worst;
        return *best != 0;
      },
      budget);
  if (!best) throw std::logic_error("no rounding within distance 2");
  return *best;
}

std::vector<std::pair<Rational, Rational>> brute_force_error_range_set(
    const WeightedGraph& tree, VertexId root, const Rational& epsilon, Comparison comparison,
    std::uint64_t budget) {
  RootedTree rooted(tree, root);
  auto verifier = make_verifier(tree, epsilon, Level::path_oblivious, comparison);
  std::vector<std::pair<Rational, Rational>> ranges;
  enumerate_roundings(
      tree, epsilon, comparison,
      [&](const Rounding& r) {
        if (!(verifier ? verifier->passes(r) : exact_passes(tree, r))) return true;
        std::vector<Rational> error(tree.vertex_count());
        Rational lo = 0, hi = 0;
        for (VertexId v : rooted.preorder()) {
          if (v == root) continue;
          EdgeId e = rooted.parent_edge(v);
          error[v] = error[rooted.parent(v)] + Rational(r.values[e]) - tree.edge(e).weight;
          lo = std::min(lo, error[v]);
          hi = std::max(hi, error[v]);
        }
        ranges.emplace_back(lo, hi);
        return true;
      },
      budget);
  std::sort(ranges.begin(), ranges.end());
  ranges.erase(std::unique(ranges.begin(), ranges.end()), ranges.end());
  std::vector<std::pair<Rational, Rational>> minimal;
  for (const auto& candidate : ranges) {
    bool dominated = std::any_of(ranges.begin(), ranges.end(), [&](const auto& other) {
      return other != candidate && candidate.first <= other.first && other.second <= candidate.second;
    });
    if (!dominated) minimal.push_back(candidate);
  }
  return minimal;
}

}  // namespace spround
