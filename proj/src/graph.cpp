#include "spround/graph.hpp"

#include <algorithm>
#include <sstream>

namespace spround {

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(vertex_count) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw InputError(0, "self-loop at vertex " + std::to_string(e.u));
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw InputError(0, "edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                              "} outside vertex range");
    }
    if (e.weight < 0) throw InputError(0, "negative weight " + to_string(e.weight));
    if (e.weight > max_weight()) throw InputError(0, "weight " + to_string(e.weight) + " too large");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.key() < b.key(); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].key() == edges_[i - 1].key()) {
      throw InputError(0, "duplicate edge {" + std::to_string(edges_[i].u) + ", " +
                              std::to_string(edges_[i].v) + "}");
    }
  }
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    adjacency_[edges_[id].u].push_back({edges_[id].v, id});
    adjacency_[edges_[id].v].push_back({edges_[id].u, id});
  }
}

std::optional<EdgeId> WeightedGraph::find_edge(VertexId a, VertexId b) const {
  EdgeKey key(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                             [](const Edge& e, const EdgeKey& k) { return e.key() < k; });
  if (it == edges_.end() || it->key() != key) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

bool WeightedGraph::is_connected() const {
  if (vertex_count() == 0) return true;
  std::vector<char> seen(vertex_count(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const Arc& a : adjacency_[v]) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++count;
        stack.push_back(a.to);
      }
    }
  }
  return count == vertex_count();
}

RootedTree::RootedTree(WeightedGraph graph, VertexId root) : graph_(std::move(graph)), root_(root) {
  const std::size_t n = graph_.vertex_count();
  if (n == 0) throw InputError(0, "a tree needs at least one vertex");
  if (root >= n) throw InputError(0, "root " + std::to_string(root) + " outside vertex range");
  if (graph_.edge_count() != n - 1 || !graph_.is_connected()) {
    throw InputError(0, "graph is not a tree (" + std::to_string(n) + " vertices, " +
                            std::to_string(graph_.edge_count()) + " edges)");
  }
  parent_.assign(n, kNoVertex);
  parent_edge_.assign(n, 0);
  children_.assign(n, {});
  preorder_.reserve(n);
  preorder_.push_back(root);
  for (std::size_t i = 0; i < preorder_.size(); ++i) {
    VertexId v = preorder_[i];
    for (const auto& arc : graph_.neighbors(v)) {
      if (arc.to == root_ || parent_[arc.to] != kNoVertex) continue;
      parent_[arc.to] = v;
      parent_edge_[arc.to] = arc.edge;
      children_[v].push_back(arc.to);
      preorder_.push_back(arc.to);
    }
  }
}

RootedTree RootedTree::from_parents(VertexId root, std::span<const VertexId> parents,
                                    std::span<const Rational> weights) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < parents.size(); ++v) {
    if (v == root) continue;
    edges.push_back({parents[v], v, weights[v]});
  }
  return RootedTree(WeightedGraph(parents.size(), std::move(edges)), root);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

VertexId parse_vertex(std::string_view field, std::size_t line) {
  if (field.empty() || field.size() > 9 ||
      !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InputError(line, "bad vertex id '" + std::string(field) + "'");
  }
  return static_cast<VertexId>(std::stoul(std::string(field)));
}

}  // namespace

WeightedGraph parse_graph(std::istream& in) {
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  std::size_t vertex_count = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto fields = split_fields(raw);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 3) throw InputError(line_no, "expected 'u v w', got '" + raw + "'");
    VertexId u = parse_vertex(fields[0], line_no);
    VertexId v = parse_vertex(fields[1], line_no);
    if (u == v) throw InputError(line_no, "self-loop at vertex " + std::to_string(u));
    Rational w;
    try {
      w = parse_rational(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw InputError(line_no, e.what());
    }
    if (w < 0) throw InputError(line_no, "negative weight " + to_string(w));
    if (w > max_weight()) throw InputError(line_no, "weight " + to_string(w) + " too large");
    vertex_count = std::max<std::size_t>(vertex_count, std::max(u, v) + std::size_t{1});
    edges.push_back({std::min(u, v), std::max(u, v), std::move(w)});
    edge_line.push_back(line_no);
  }
  // Report duplicates against the line of the second occurrence.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a].key() < edges[b].key(); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]].key() == edges[order[i - 1]].key()) {
      const auto& e = edges[order[i]];
      throw InputError(edge_line[order[i]], "duplicate edge {" + std::to_string(e.u) + ", " +
                                                std::to_string(e.v) + "}");
    }
  }
  return WeightedGraph(vertex_count, std::move(edges));
}

WeightedGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

std::string serialize_graph(const WeightedGraph& graph) {
  std::string out;
  for (const Edge& e : graph.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + to_string(e.weight) + "\n";
  }
  return out;
}

}  // namespace spround
