#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spround/generators.hpp"
#include "spround/graph.hpp"
#include "spround/json_io.hpp"
#include "spround/oracle.hpp"
#include "spround/path_rounding.hpp"
#include "spround/sat_reduction.hpp"
#include "spround/shortest_paths.hpp"
#include "spround/tree_rounding.hpp"

namespace spround::cli {

namespace {

struct Options {
  std::string epsilon;
  std::string mode = "strict";
  std::string level = "strong";
  std::string format = "text";
  std::string input;
  std::string second_input;
  std::vector<std::string> weights;
  std::vector<std::string> pins;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::uint64_t node_budget = kDefaultNodeBudget;
  VertexId root = 0;
  bool print_set = false;
  bool print_witness = false;
  // reduce
  std::string graph_out;
  std::string sidecar;
  std::string assignment;
  std::string rounding_out;
  std::string decode;
  // gen
  std::uint64_t seed = 1;
  std::size_t vertices = 10;
  std::int64_t max_denominator = 10;
  std::int64_t max_weight = 5;
  std::string shape = "tree";
  std::uint32_t variables = 4;
  std::size_t clauses = 3;
};

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    buffer << file.rdbuf();
  }
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

WeightedGraph load_graph(const std::string& path, std::istream& in) {
  return parse_graph(read_text(path, in));
}

RootedTree load_tree(const std::string& path, VertexId root, std::istream& in) {
  WeightedGraph graph = load_graph(path, in);
  if (root >= graph.vertex_count() && !(root == 0 && graph.vertex_count() == 0)) {
    throw std::invalid_argument("root " + std::to_string(root) + " is not a vertex");
  }
  if (graph.vertex_count() == 0) graph = WeightedGraph(1, {});
  return RootedTree(std::move(graph), root);
}

Rational parse_epsilon(const std::string& text) {
  Rational eps = parse_rational(text);
  if (eps < 0) throw std::invalid_argument("epsilon must be non-negative");
  return eps;
}

Pin parse_pin(const std::string& text) {
  auto comma = text.find(',');
  auto equals = text.find('=');
  if (comma == std::string::npos || equals == std::string::npos || equals < comma) {
    throw std::invalid_argument("pin '" + text + "' is not of the form u,v=up|down");
  }
  auto vertex = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad vertex in pin '" + text + "'");
    return static_cast<VertexId>(value);
  };
  VertexId u = vertex(text.substr(0, comma));
  VertexId v = vertex(text.substr(comma + 1, equals - comma - 1));
  std::string dir = text.substr(equals + 1);
  if (dir != "up" && dir != "down") {
    throw std::invalid_argument("pin direction must be 'up' or 'down', got '" + dir + "'");
  }
  return Pin{EdgeKey(u, v), dir == "up" ? PinDirection::up : PinDirection::down};
}

std::vector<bool> parse_bits(const std::string& text) {
  std::vector<bool> bits;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("assignment must be a string of 0/1");
    bits.push_back(ch == '1');
  }
  return bits;
}

std::string bits_text(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

int cmd_decide(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  RootedTree tree = load_tree(o.input, o.root, in);
  Rational eps = parse_epsilon(o.epsilon);
  Comparison cmp = parse_comparison(o.mode);
  bool yes = decide(tree, eps, cmp);
  out << (yes ? "yes" : "no") << '\n';
  if (o.print_set) {
    if (eps < 2) {
      out << error_range_set_to_json(error_range_set(tree, eps, cmp)) << '\n';
    } else {
      err << "error range set is not computed for epsilon >= 2\n";
    }
  }
  return yes ? kYes : kNo;
}

int cmd_round(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  RootedTree tree = load_tree(o.input, o.root, in);
  Rational eps = parse_epsilon(o.epsilon);
  auto rounding = extract_rounding(tree, eps, parse_comparison(o.mode));
  if (!rounding) {
    err << "no rounding within epsilon " << to_string(eps) << '\n';
    return kNo;
  }
  out << rounding_to_json(tree.graph(), *rounding, eps) << '\n';
  return kYes;
}

int cmd_minimize(const Options& o, std::istream& in, std::ostream& out) {
  RootedTree tree = load_tree(o.input, o.root, in);
  MinimumEpsilon best = minimize_epsilon(tree);
  out << rounding_to_json(tree.graph(), best.witness, best.epsilon) << '\n';
  return kYes;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  WeightedGraph graph = load_graph(o.input, in);
  Rounding rounding = rounding_from_json(graph, read_text(o.second_input, in));
  Rational eps = parse_epsilon(o.epsilon);
  auto report = verify_rounding(graph, rounding, eps, parse_level(o.level),
                                parse_comparison(o.mode));
  if (o.format == "json") {
    out << report_to_json(report) << '\n';
  } else {
    out << report_to_text(report);
  }
  return report.passed ? kYes : kNo;
}

int cmd_path(const Options& o, std::istream& in, std::ostream& out) {
  std::vector<std::string> tokens = o.weights;
  if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "-")) {
    tokens.clear();
    std::istringstream text(read_text("-", in));
    for (std::string t; text >> t;) tokens.push_back(t);
  }
  std::vector<Rational> weights;
  for (const auto& t : tokens) weights.push_back(parse_rational(t));
  auto rounded = round_path(weights);
  for (std::size_t i = 0; i < rounded.size(); ++i) out << (i ? " " : "") << rounded[i];
  out << '\n';
  return kYes;
}

int cmd_oracle_decide(const Options& o, std::istream& in, std::ostream& out) {
  WeightedGraph graph = load_graph(o.input, in);
  Rational eps = parse_epsilon(o.epsilon);
  Level level = parse_level(o.level);
  Comparison cmp = parse_comparison(o.mode);
  std::vector<Pin> pins;
  for (const auto& p : o.pins) pins.push_back(parse_pin(p));
  std::optional<Rounding> witness;
  if (pins.empty()) {
    witness = brute_force_decide(graph, eps, level, cmp, o.budget).witness;
  } else {
    // Pinned search: enumerate the restricted product.
    auto domains = candidate_domains(graph, eps, cmp);
    apply_pins(graph, pins, domains);
    std::optional<RoundingVerifier> verifier;
    if (eps > 0) verifier.emplace(graph, eps, level, cmp);
    enumerate_roundings(
        domains,
        [&](const Rounding& r) {
          bool ok = verifier ? verifier->passes(r) : true;
          if (ok) witness = r;
          return !ok;
        },
        o.budget);
  }
  out << (witness ? "yes" : "no") << '\n';
  if (witness && o.print_witness) out << rounding_to_json(graph, *witness) << '\n';
  return witness ? kYes : kNo;
}

int cmd_oracle_min_eps(const Options& o, std::istream& in, std::ostream& out) {
  WeightedGraph graph = load_graph(o.input, in);
  out << to_string(brute_force_min_epsilon(graph, o.budget)) << '\n';
  return kYes;
}

int cmd_oracle_solve(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  WeightedGraph graph = load_graph(o.input, in);
  Rational eps = parse_epsilon(o.epsilon);
  BacktrackOptions options;
  options.node_budget = o.node_budget;
  for (const auto& p : o.pins) options.pins.push_back(parse_pin(p));
  auto found =
      backtracking_solve(graph, eps, parse_level(o.level), parse_comparison(o.mode), options);
  if (!found) {
    err << "no rounding within epsilon " << to_string(eps) << '\n';
    return kNo;
  }
  out << rounding_to_json(graph, *found, eps) << '\n';
  return kYes;
}

int cmd_reduce(const Options& o, std::istream& in, std::ostream& out) {
  if (!o.decode.empty()) {
    if (o.sidecar.empty()) throw std::invalid_argument("--decode needs --sidecar");
    GadgetGraph g = gadget_graph_from_sidecar(read_text(o.sidecar, in));
    Rounding rounding = rounding_from_json(g.graph, read_text(o.decode, in));
    out << bits_text(assignment_from_rounding(g, rounding)) << '\n';
    return kYes;
  }
  if (o.input.empty()) throw std::invalid_argument("reduce needs a DIMACS file");
  CnfFormula original = parse_dimacs(read_text(o.input, in));
  GadgetGraph g = build_reduction(normalize_cnf(original));
  write_text(o.graph_out, serialize_graph(g.graph), out);
  if (!o.sidecar.empty()) write_text(o.sidecar, sidecar_to_json(g), out);
  if (!o.assignment.empty()) {
    std::vector<bool> bits = parse_bits(o.assignment);
    // Fresh normalization variables default to false.
    if (bits.size() == original.variable_count) bits.resize(g.variable_count, false);
    write_text(o.rounding_out, rounding_to_json(g.graph, rounding_from_assignment(g, bits)) + "\n",
               out);
  }
  return kYes;
}

int cmd_gen(const Options& o, std::ostream& out) {
  Rng rng(o.seed);
  if (o.shape == "cnf") {
    out << serialize_dimacs(random_formula(rng, o.variables, o.clauses));
    return kYes;
  }
  auto weight = uniform_rational_weights(o.max_denominator, o.max_weight);
  WeightedGraph graph;
  if (o.shape == "tree") {
    graph = random_tree(rng, o.vertices, weight);
  } else if (o.shape == "path") {
    graph = random_path(rng, o.vertices, weight);
  } else {
    graph = random_star(rng, o.vertices, weight);
  }
  out << serialize_graph(graph);
  return kYes;
}

void add_epsilon(CLI::App* cmd, Options& o, bool required = true) {
  auto* opt = cmd->add_option("--epsilon,-e", o.epsilon, "Error bound: decimal or p/q");
  if (required) opt->required();
}

void add_mode(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode,-m", o.mode, "strict: |error| < epsilon; closed: |error| <= epsilon")
      ->check(CLI::IsMember({"strict", "closed"}));
}

void add_level(CLI::App* cmd, Options& o) {
  cmd->add_option("--level,-l", o.level, "oblivious, weak or strong")
      ->check(CLI::IsMember({"oblivious", "path_oblivious", "weak", "strong"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Integer roundings of edge weights that preserve shortest paths", "spround"};
  app.require_subcommand(1);

  auto* decide_cmd = app.add_subcommand("decide", "Does a tree admit an epsilon-rounding?");
  add_epsilon(decide_cmd, o);
  add_mode(decide_cmd, o);
  decide_cmd->add_flag("--print-set", o.print_set, "Also print the root error range set");
  decide_cmd->add_option("--root", o.root, "Root vertex for the dynamic program");
  decide_cmd->add_option("tree", o.input, "Tree edge list ('-' for stdin)")->required();

  auto* round_cmd = app.add_subcommand("round", "Epsilon-rounding of a tree as JSON");
  add_epsilon(round_cmd, o);
  add_mode(round_cmd, o);
  round_cmd->add_option("--root", o.root, "Root vertex for the dynamic program");
  round_cmd->add_option("tree", o.input, "Tree edge list ('-' for stdin)")->required();

  auto* minimize_cmd = app.add_subcommand("minimize", "Smallest achievable error bound of a tree");
  minimize_cmd->add_option("--root", o.root, "Root vertex for the dynamic program");
  minimize_cmd->add_option("tree", o.input, "Tree edge list ('-' for stdin)")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check a rounding of a graph");
  add_epsilon(verify_cmd, o);
  add_mode(verify_cmd, o);
  add_level(verify_cmd, o);
  verify_cmd->add_option("--format,-f", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("graph", o.input, "Graph edge list")->required();
  verify_cmd->add_option("rounding", o.second_input, "Rounding JSON")->required();

  auto* path_cmd = app.add_subcommand("path", "1-rounding of a path given by its edge weights");
  path_cmd->add_option("weights", o.weights, "Edge weights in order (stdin when omitted)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive solvers for small graphs");
  oracle_cmd->require_subcommand(1);
  auto* oracle_decide = oracle_cmd->add_subcommand("decide", "Brute-force decision");
  auto* oracle_min = oracle_cmd->add_subcommand("min-eps", "Brute-force smallest error bound");
  auto* oracle_solve = oracle_cmd->add_subcommand("solve", "Backtracking search for a rounding");
  for (auto* cmd : {oracle_decide, oracle_solve}) {
    add_epsilon(cmd, o);
    add_mode(cmd, o);
    add_level(cmd, o);
    cmd->add_option("--pin", o.pins, "Force an edge: u,v=up|down (repeatable)");
  }
  oracle_decide->add_flag("--print-witness", o.print_witness, "Print the passing rounding");
  oracle_decide->add_option("--budget", o.budget, "Largest number of roundings to enumerate");
  oracle_min->add_option("--budget", o.budget, "Largest number of roundings to enumerate");
  oracle_solve->add_option("--budget", o.node_budget, "Largest number of search nodes");
  for (auto* cmd : {oracle_decide, oracle_min, oracle_solve}) {
    cmd->add_option("graph", o.input, "Graph edge list ('-' for stdin)")->required();
  }

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduction graph of a 3-CNF formula");
  reduce_cmd->add_option("cnf", o.input, "DIMACS CNF file ('-' for stdin)");
  reduce_cmd->add_option("--graph-out", o.graph_out, "Edge list destination (default stdout)");
  reduce_cmd->add_option("--sidecar", o.sidecar, "Sidecar JSON (written, or read by --decode)");
  reduce_cmd->add_option("--assignment", o.assignment, "Assignment bits x1 x2 ... as 0/1");
  reduce_cmd->add_option("--rounding-out", o.rounding_out,
                         "Destination of the rounding for --assignment");
  reduce_cmd->add_option("--decode", o.decode, "Rounding JSON to turn back into an assignment");

  auto* gen_cmd = app.add_subcommand("gen", "Seeded random instance");
  gen_cmd->add_option("--seed", o.seed, "Random seed");
  gen_cmd->add_option("--vertices,-n", o.vertices, "Number of vertices")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
  gen_cmd->add_option("--max-denominator", o.max_denominator, "Largest weight denominator")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 30));
  gen_cmd->add_option("--max-weight", o.max_weight, "Largest weight")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 30));
  gen_cmd->add_option("--shape", o.shape, "tree, path, star or cnf")
      ->check(CLI::IsMember({"tree", "path", "star", "cnf"}));
  gen_cmd->add_option("--variables", o.variables, "Variables of a random formula");
  gen_cmd->add_option("--clauses", o.clauses, "Clauses of a random formula");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  try {
    if (decide_cmd->parsed()) return cmd_decide(o, in, out, err);
    if (round_cmd->parsed()) return cmd_round(o, in, out, err);
    if (minimize_cmd->parsed()) return cmd_minimize(o, in, out);
    if (verify_cmd->parsed()) return cmd_verify(o, in, out);
    if (path_cmd->parsed()) return cmd_path(o, in, out);
    if (oracle_decide->parsed()) return cmd_oracle_decide(o, in, out);
    if (oracle_min->parsed()) return cmd_oracle_min_eps(o, in, out);
    if (oracle_solve->parsed()) return cmd_oracle_solve(o, in, out, err);
    if (reduce_cmd->parsed()) return cmd_reduce(o, in, out);
    if (gen_cmd->parsed()) return cmd_gen(o, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace spround::cli
