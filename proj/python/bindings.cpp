#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spround/json_io.hpp"
#include "spround/oracle.hpp"
#include "spround/path_rounding.hpp"
#include "spround/sat_reduction.hpp"
#include "spround/shortest_paths.hpp"
#include "spround/tree_rounding.hpp"

namespace py = pybind11;
using namespace spround;

namespace {

// Rationals cross the boundary as fractions.Fraction; any object whose str()
// is a decimal or p/q literal is accepted on the way in.
Rational to_rational(const py::handle& value) {
  return parse_rational(py::str(value).cast<std::string>());
}

py::object to_fraction(const Rational& value) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(value));
}

std::vector<Rational> to_rationals(const py::iterable& values) {
  std::vector<Rational> out;
  for (const auto& v : values) out.push_back(to_rational(v));
  return out;
}

WeightedGraph make_graph(std::size_t vertex_count, const py::iterable& edges) {
  std::vector<Edge> list;
  for (const auto& item : edges) {
    auto t = item.cast<py::tuple>();
    if (t.size() != 3) throw std::invalid_argument("edges are (u, v, weight) triples");
    list.push_back(Edge{t[0].cast<VertexId>(), t[1].cast<VertexId>(), to_rational(t[2])});
  }
  return WeightedGraph(vertex_count, std::move(list));
}

RootedTree as_tree(const WeightedGraph& graph, VertexId root) {
  if (graph.vertex_count() == 0) return RootedTree(WeightedGraph(1, {}), 0);
  return RootedTree(graph, root);
}

std::optional<std::vector<std::int64_t>> values_of(const std::optional<Rounding>& r) {
  if (!r) return std::nullopt;
  return r->values;
}

}  // namespace

PYBIND11_MODULE(_spround, m) {
  m.doc() = "Integer roundings of edge weights that preserve shortest paths";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<WeightedGraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("vertex_count"), py::arg("edges"))
      .def_static("parse", [](const std::string& text) { return parse_graph(text); },
                  py::arg("text"))
      .def_property_readonly("vertex_count", &WeightedGraph::vertex_count)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def_property_readonly("edges",
                             [](const WeightedGraph& g) {
                               py::list out;
                               for (const Edge& e : g.edges()) {
                                 out.append(py::make_tuple(e.u, e.v, to_fraction(e.weight)));
                               }
                               return out;
                             })
      .def("serialize", &serialize_graph)
      .def("__repr__", [](const WeightedGraph& g) {
        return "<Graph with " + std::to_string(g.vertex_count()) + " vertices and " +
               std::to_string(g.edge_count()) + " edges>";
      });

  m.def("round_path", [](const py::iterable& weights) { return round_path(to_rationals(weights)); },
        py::arg("weights"), "1-rounding of a path given by its edge weights in order");

  m.def("two_rounding",
        [](const WeightedGraph& g, VertexId root) { return two_rounding(as_tree(g, root)).values; },
        py::arg("tree"), py::arg("root") = 0);

  m.def("decide",
        [](const WeightedGraph& g, const py::object& eps, const std::string& mode, VertexId root) {
          return decide(as_tree(g, root), to_rational(eps), parse_comparison(mode));
        },
        py::arg("tree"), py::arg("epsilon"), py::arg("mode") = "strict", py::arg("root") = 0);

  m.def("extract_rounding",
        [](const WeightedGraph& g, const py::object& eps, const std::string& mode, VertexId root) {
          return values_of(extract_rounding(as_tree(g, root), to_rational(eps), parse_comparison(mode)));
        },
        py::arg("tree"), py::arg("epsilon"), py::arg("mode") = "strict", py::arg("root") = 0);

  m.def("error_range_set",
        [](const WeightedGraph& g, const py::object& eps, const std::string& mode, VertexId root) {
          py::list out;
          for (const ErrorRange& r :
               error_range_set(as_tree(g, root), to_rational(eps), parse_comparison(mode))) {
            out.append(py::make_tuple(to_fraction(r.lo), to_fraction(r.hi)));
          }
          return out;
        },
        py::arg("tree"), py::arg("epsilon"), py::arg("mode") = "strict", py::arg("root") = 0);

  m.def("minimize_epsilon",
        [](const WeightedGraph& g) {
          MinimumEpsilon best = minimize_epsilon(as_tree(g, 0));
          return py::make_tuple(to_fraction(best.epsilon), best.witness.values);
        },
        py::arg("tree"), "Smallest closed error bound and a rounding attaining it");

  m.def("verify",
        [](const WeightedGraph& g, const std::vector<std::int64_t>& values, const py::object& eps,
           const std::string& level, const std::string& mode) {
          auto report = verify_rounding(g, Rounding{values}, to_rational(eps), parse_level(level),
                                        parse_comparison(mode));
          py::dict out;
          out["passed"] = report.passed;
          out["worst_error"] = to_fraction(report.worst_error);
          if (report.witness) {
            out["witness"] = py::make_tuple(report.witness->u, report.witness->v,
                                            report.witness->condition);
          } else {
            out["witness"] = py::none();
          }
          return out;
        },
        py::arg("graph"), py::arg("rounding"), py::arg("epsilon"), py::arg("level") = "strong",
        py::arg("mode") = "strict");

  m.def("brute_force_decide",
        [](const WeightedGraph& g, const py::object& eps, const std::string& level,
           const std::string& mode, std::uint64_t budget) {
          return values_of(brute_force_decide(g, to_rational(eps), parse_level(level),
                                              parse_comparison(mode), budget)
                               .witness);
        },
        py::arg("graph"), py::arg("epsilon"), py::arg("level") = "strong",
        py::arg("mode") = "strict", py::arg("budget") = kDefaultEnumerationBudget,
        "First passing rounding in enumeration order, or None");

  m.def("count_roundings",
        [](const WeightedGraph& g, const py::object& eps, const std::string& level,
           const std::string& mode, std::uint64_t budget) {
          return count_roundings(g, to_rational(eps), parse_level(level), parse_comparison(mode),
                                 {}, budget);
        },
        py::arg("graph"), py::arg("epsilon"), py::arg("level") = "strong",
        py::arg("mode") = "strict", py::arg("budget") = kDefaultEnumerationBudget);

  m.def("brute_force_min_epsilon",
        [](const WeightedGraph& g, std::uint64_t budget) {
          return to_fraction(brute_force_min_epsilon(g, budget));
        },
        py::arg("graph"), py::arg("budget") = kDefaultEnumerationBudget);

  py::class_<GadgetGraph>(m, "Reduction")
      .def_property_readonly("graph", [](const GadgetGraph& g) { return g.graph; })
      .def_property_readonly("D", [](const GadgetGraph& g) { return to_fraction(g.D); })
      .def_property_readonly("variable_count", [](const GadgetGraph& g) { return g.variable_count; })
      .def("rounding_from_assignment",
           [](const GadgetGraph& g, const std::vector<bool>& assignment) {
             return rounding_from_assignment(g, assignment).values;
           },
           py::arg("assignment"))
      .def("assignment_from_rounding",
           [](const GadgetGraph& g, const std::vector<std::int64_t>& values) {
             return assignment_from_rounding(g, Rounding{values});
           },
           py::arg("rounding"))
      .def("sidecar_json", &sidecar_to_json);

  m.def("reduce",
        [](const std::string& dimacs) { return build_reduction(normalize_cnf(parse_dimacs(dimacs))); },
        py::arg("dimacs"), "Reduction graph of a 3-CNF formula in DIMACS format");
}
