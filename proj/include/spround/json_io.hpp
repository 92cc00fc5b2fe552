#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "spround/graph.hpp"
#include "spround/sat_reduction.hpp"
#include "spround/shortest_paths.hpp"
#include "spround/tree_rounding.hpp"

namespace spround {

// JSON documents exchanged by the command-line tool. Rationals are written as
// "p/q" strings (or "p" when integral) so they round-trip exactly.

/// {"epsilon": "...", "rounding": [{"u": 0, "v": 1, "value": 2}, ...]}; the
/// epsilon member only when given. Entries follow canonical edge order.
std::string rounding_to_json(const WeightedGraph& graph, const Rounding& rounding,
                             const std::optional<Rational>& epsilon = std::nullopt);

/// Accepts the document above or a bare array of entries. Every edge of
/// `graph` must appear exactly once. Throws std::invalid_argument.
Rounding rounding_from_json(const WeightedGraph& graph, std::string_view text);

/// {"level", "comparison", "epsilon", "passed", "worst_error",
///  "witness": {"u", "v", "condition"} | null}
std::string report_to_json(const VerificationReport& report);
std::string report_to_text(const VerificationReport& report);

/// [["lo", "hi"], ...]
std::string error_range_set_to_json(const ErrorRangeSet& set);

/// Anchors, roles and parameters of a reduction graph.
std::string sidecar_to_json(const GadgetGraph& g);

/// Rebuilds the reduction from the formula recorded in the sidecar and
/// checks that it matches the recorded edges. Throws std::invalid_argument.
GadgetGraph gadget_graph_from_sidecar(std::string_view text);

}  // namespace spround
