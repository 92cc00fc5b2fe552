#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = spround::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(SPROUND_TEST_DATA_DIR) + "/" + name; }

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "spround_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream file(path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("decide on the star") {
  auto no = run({"decide", "--epsilon", "1", "--mode", "strict", data("star.tree")});
  CHECK(no.code == spround::cli::kNo);
  CHECK(no.out == "no\n");

  auto closed = run({"decide", "-e", "1", "--mode", "closed", "--print-set", data("star.tree")});
  CHECK(closed.code == spround::cli::kYes);
  CHECK(closed.out.rfind("yes\n", 0) == 0);

  auto two = run({"decide", "-e", "2", data("star.tree")});
  CHECK(two.code == spround::cli::kYes);

  auto stdin_tree = run({"decide", "-e", "1", "-"}, "0 1 1/2\n1 2 1/2\n");
  CHECK(stdin_tree.code == spround::cli::kYes);
}

TEST_CASE("round and minimize print JSON roundings") {
  auto round = run({"round", "-e", "1", data("path2.tree")});
  REQUIRE(round.code == spround::cli::kYes);
  json doc = json::parse(round.out);
  CHECK(doc["epsilon"] == "1");
  CHECK(doc["rounding"].size() == 2);

  auto none = run({"round", "-e", "1", data("star.tree")});
  CHECK(none.code == spround::cli::kNo);

  auto minimize = run({"minimize", data("star.tree")});
  REQUIRE(minimize.code == spround::cli::kYes);
  CHECK(json::parse(minimize.out)["epsilon"] == "1");
}

TEST_CASE("verify reads a graph and a rounding") {
  auto dir = scratch_dir();
  std::ofstream(dir / "good.json") << R"([{"u":0,"v":1,"value":1},{"u":0,"v":2,"value":0},{"u":0,"v":3,"value":0}])";
  auto strict = run({"verify", "-e", "1", data("star.tree"), (dir / "good.json").string()});
  CHECK(strict.code == spround::cli::kNo);
  CHECK(strict.out.find("witness:") != std::string::npos);

  auto closed = run({"verify", "-e", "1", "--mode", "closed", "--format", "json", data("star.tree"),
                     (dir / "good.json").string()});
  CHECK(closed.code == spround::cli::kYes);
  CHECK(json::parse(closed.out)["passed"] == true);

  std::ofstream(dir / "short.json") << R"([{"u":0,"v":1,"value":1}])";
  auto bad = run({"verify", "-e", "1", data("star.tree"), (dir / "short.json").string()});
  CHECK(bad.code == spround::cli::kUsage);
  CHECK(bad.err.find("no rounded value") != std::string::npos);
}

TEST_CASE("path rounding") {
  CHECK(run({"path", "1/2", "1/2", "1/2"}).out == "1 0 1\n");
  CHECK(run({"path"}, "0.5 0.5\n").out == "1 0\n");
  CHECK(run({"path", "-1"}).code == spround::cli::kUsage);
}

TEST_CASE("oracle subcommands") {
  auto no = run({"oracle", "decide", "-e", "1", "--level", "oblivious", data("star.tree")});
  CHECK(no.code == spround::cli::kNo);

  auto witness = run({"oracle", "decide", "-e", "1", "--print-witness", data("path2.tree")});
  CHECK(witness.code == spround::cli::kYes);
  CHECK(witness.out.find("\"rounding\"") != std::string::npos);

  auto pinned = run({"oracle", "decide", "-e", "1", "--pin", "0,1=up", "--pin", "1,2=up",
                     data("path2.tree")});
  CHECK(pinned.code == spround::cli::kNo);

  CHECK(run({"oracle", "min-eps", data("star.tree")}).out == "1\n");

  auto budget = run({"oracle", "decide", "-e", "1", "--budget", "4", data("star.tree")});
  CHECK(budget.code == spround::cli::kBudget);

  auto solve = run({"oracle", "solve", "-e", "1", "--pin", "0,1=down", data("path2.tree")});
  REQUIRE(solve.code == spround::cli::kYes);
  CHECK(json::parse(solve.out)["rounding"][0]["value"] == 0);

  CHECK(run({"oracle", "solve", "-e", "1", "--pin", "0,2=up", data("path2.tree")}).code ==
        spround::cli::kUsage);
  CHECK(run({"oracle", "solve", "-e", "1", "--pin", "0-1=up", data("path2.tree")}).code ==
        spround::cli::kUsage);
}

TEST_CASE("reduce writes the graph, sidecar and rounding, and decodes") {
  auto dir = scratch_dir();
  auto graph = dir / "g.txt", sidecar = dir / "g.json", rounding = dir / "r.json";
  auto built = run({"reduce", data("four_variables.cnf"), "--graph-out", graph.string(), "--sidecar",
                    sidecar.string(), "--assignment", "0110", "--rounding-out", rounding.string()});
  REQUIRE(built.code == spround::cli::kYes);
  CHECK(json::parse(slurp(sidecar))["D"] == "35");

  auto verified = run({"verify", "-e", "1", "--level", "strong", graph.string(), rounding.string()});
  CHECK(verified.code == spround::cli::kYes);

  auto decoded = run({"reduce", "--sidecar", sidecar.string(), "--decode", rounding.string()});
  CHECK(decoded.code == spround::cli::kYes);
  CHECK(decoded.out == "0110\n");

  // Repeated literals are normalized; the short assignment is padded.
  auto padded = run({"reduce", "-", "--assignment", "11"}, "p cnf 2 1\n1 1 2 0\n");
  CHECK(padded.code == spround::cli::kYes);

  CHECK(run({"reduce", "-"}, "p cnf 2 1\n1 2 0\n").code == spround::cli::kUsage);
  CHECK(run({"reduce", "--decode", rounding.string()}).code == spround::cli::kUsage);
}

TEST_CASE("gen is seeded") {
  auto a = run({"gen", "--seed", "5", "-n", "8"});
  auto b = run({"gen", "--seed", "5", "-n", "8"});
  CHECK(a.code == spround::cli::kYes);
  CHECK(a.out == b.out);
  CHECK(run({"gen", "--shape", "cnf", "--variables", "5", "--clauses", "4"}).out.rfind("p cnf 5 4",
                                                                                    0) == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == spround::cli::kUsage);
  CHECK(run({"decide", data("star.tree")}).code == spround::cli::kUsage);
  CHECK(run({"decide", "-e", "x", data("star.tree")}).code == spround::cli::kUsage);
  CHECK(run({"decide", "-e", "1", "--mode", "open", data("star.tree")}).code ==
        spround::cli::kUsage);
  CHECK(run({"decide", "-e", "1", data("missing.tree")}).code == spround::cli::kUsage);
  CHECK(run({"decide", "-e", "1", "-"}, "0 1 1\n1 2 1\n0 2 1\n").code == spround::cli::kUsage);
  CHECK(run({"--help"}).code == spround::cli::kYes);
}
