#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace cavoid;
using namespace cavoid::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  Json record;
  std::string out, err;
};

// Runs the CLI in-process from the fixtures directory.
Run run(std::vector<std::string> args) {
  fs::current_path(CAVOID_FIXTURES);
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  Run r{code, nullptr, out.str(), err.str()};
  if (!r.out.empty() && r.out.front() == '{') r.record = Json::parse(r.out);
  return r;
}

std::string temp_file(const std::string& name) { return (fs::temp_directory_path() / name).string(); }

}  // namespace

TEST(Cli, VerifyExitCodes) {
  auto ok = run({"verify", "--part", "edge", "--mode", "edge", "-k", "1", "-l", "1", "fig2_g2.cg"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.record["result"]["verdict"]["holds"].get<bool>());
  auto bad = run({"verify", "--part", "internal-vertex", "-k", "1", "-l", "1", "fig4_mid.cg"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.record["result"]["verdict"]["witness"]["colors"], Json::array({1}));
  EXPECT_EQ(run({"verify", "no-such-file.cg"}).code, 2);
  EXPECT_EQ(run({"verify", "--part", "sideways", "fig1.cg"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, RecordSchema) {
  auto r = run({"--timing", "verify", "fig1.cg"});
  ASSERT_TRUE(r.record.is_object());
  std::vector<std::string> keys;
  for (auto it = r.record.begin(); it != r.record.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "input_digest", "exit", "result", "wall_ms"}));
  EXPECT_EQ(r.record["command"], "--timing verify fig1.cg");
  EXPECT_EQ(r.record["input_digest"], digest(slurp(fixture_path("fig1.cg"))));
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1) << "exactly one line";
}

TEST(Cli, ParseErrorsReportLine) {
  std::string path = temp_file("cavoid_bad.cg");
  std::ofstream(path) << "graph x\ndirected 0\nedge 0 1 c=a\n";
  auto r = run({"verify", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.record["result"]["error"], "parse");
  EXPECT_EQ(r.record["result"]["line"], 3);
}

TEST(Cli, SubsetGuardIsAUsageError) {
  std::string path = temp_file("cavoid_wide.cg");
  ColoredGraph g = empty_graph(2);
  for (int c = 1; c <= 40; ++c) g.add_edge(0, 1, {c});
  std::ofstream(path) << serialize(g);
  auto r = run({"verify", "-l", "3", "--max-subsets", "100", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.record["result"]["error"], "guard");
  EXPECT_NE(r.err.find("needs about"), std::string::npos);
}

TEST(Cli, ColorExamples) {
  auto poly = run({"color", "--poly", "fig1.cg"});
  EXPECT_EQ(poly.code, 0);
  EXPECT_EQ(poly.record["result"]["coloring"]["colors_used"], 3);
  auto rooted = run({"color", "--poly", "--rooted", "-l", "1", "bidirected_triangle.cg"});
  EXPECT_EQ(rooted.code, 0);
  EXPECT_EQ(rooted.record["result"]["coloring"]["colors_used"], 2);
  auto exact = run({"color", "--exact", "--part", "internal-vertex", "c4.cg"});
  EXPECT_EQ(exact.code, 0);
  EXPECT_EQ(exact.record["result"]["status"], "optimal");
  EXPECT_EQ(exact.record["result"]["coloring"]["colors_used"], 2);
  auto budget = run({"color", "--exact", "--budget", "2", "k4.cg"});
  EXPECT_EQ(budget.code, 3);
  auto none = run({"color", "--existence", "-k", "2", "c4.cg"});
  EXPECT_EQ(none.code, 1);
}

TEST(Cli, ColoringArtifactRoundTrips) {
  std::string path = temp_file("cavoid_fig1.col");
  ASSERT_EQ(run({"--out", path, "color", "--poly", "fig1.cg"}).code, 0);
  ColoredGraph g = load("fig1.cg");
  auto col = read_coloring(g, slurp(path));
  EXPECT_EQ(col.colors_used, 3);
  EXPECT_TRUE(verify(apply_coloring(g, col), {Part::edge, ConnMode::edge, 1, 1, Scope::undirected}).holds);
}

TEST(Cli, OrientExamples) {
  EXPECT_EQ(run({"orient", "--ca-strong", "-k", "1", "-l", "1", "fig7_parallel.cg"}).code, 1);
  EXPECT_EQ(run({"orient", "--ca-rooted", "-k", "1", "-l", "1", "fig7_triangle.cg"}).code, 1);
  auto rob = run({"orient", "--robbins", "k4.cg"});
  EXPECT_EQ(rob.code, 0);
  ColoredGraph k4 = load("k4.cg");
  auto o = read_orientation(k4, rob.record["result"]["artifact"].get<std::string>());
  EXPECT_TRUE(is_strongly_k_arc_connected(apply_orientation(k4, o), 1));
  EXPECT_EQ(run({"orient", "--nash-williams", "2", "k4.cg"}).code, 1);
  EXPECT_EQ(run({"orient", "--rooted-k", "1", "--root", "0", "c4.cg"}).code, 0);
  EXPECT_EQ(run({"orient", "--and-color", "2", "--root", "0", "--scope", "rooted", "k4.cg"}).code, 0);
  EXPECT_EQ(run({"orient", "--robbins", "--thomassen", "k4.cg"}).code, 2);
}

TEST(Cli, ReduceAndCheck) {
  auto r = run({"reduce", "nae-strong", "fig8.nae"});
  EXPECT_EQ(r.code, 0);
  ColoredGraph gad = parse(r.record["result"]["artifact"].get<std::string>());
  EXPECT_EQ(serialize(gad), serialize(build_nae_gadget(parse_nae(slurp(fixture_path("fig8.nae"))), NaeScope::strong).graph));
  auto bad = run({"reduce", "nae-strong", "fig8.nae", "--assignment", "TTTTT"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(run({"reduce", "nae-strong", "fig8.nae", "--assignment", "TT"}).code, 2);
  EXPECT_EQ(run({"reduce", "teleport", "fig8.nae"}).code, 2);
  auto chk = run({"check", "hyp", "--max-vertices", "3", "--max-edges", "2"});
  EXPECT_EQ(chk.code, 0);
  EXPECT_TRUE(chk.record["result"]["report"]["ok"].get<bool>());
}

TEST(Cli, GenIsDeterministic) {
  auto a = run({"gen", "--random", "-n", "6", "-m", "10", "--seed", "7"});
  auto b = run({"gen", "--random", "-n", "6", "-m", "10", "--seed", "7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  ColoredGraph g = parse(a.record["result"]["artifact"].get<std::string>());
  EXPECT_EQ(g.vertex_count(), 6);
  EXPECT_EQ(g.edge_count(), 10);
  auto nae = run({"gen", "--nae-exact4", "--vars", "9", "--seed", "3"});
  EXPECT_EQ(nae.code, 0);
  EXPECT_FALSE(nae.record["result"]["toy"].get<bool>());
}

TEST(Cli, GoldenFilesReproduce) {
  for (const auto& gc : golden_cases()) {
    SCOPED_TRACE(gc.file);
    std::string expect = slurp(fixture_path("golden/" + gc.file));
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<std::string> args = gc.args;
      std::string path = temp_file("cavoid_golden_" + gc.file);
      if (!gc.record) args.insert(args.begin(), {"--out", path});
      auto r = run(args);
      ASSERT_LT(r.code, 2) << r.err;
      EXPECT_EQ(gc.record ? r.out : slurp(path), expect);
    }
  }
}
