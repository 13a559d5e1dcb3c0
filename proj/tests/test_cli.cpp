#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rigidlab/families.hpp"
#include "rigidlab_cli/commands.hpp"
#include "rigidlab_cli/framework_io.hpp"
#include "rigidlab_cli/svg.hpp"
#include "support.hpp"

using namespace rigidlab;
using namespace rigidlab::cli;
using rigidlab::testing::fixture;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("rigidlab_test_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, BoundsPlanar) {
  const auto r = run({"bounds", "--dim", "2", "--n", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2*D = 70"), std::string::npos) << r.out;
}

TEST(Cli, BoundsTable) {
  const auto r = run({"bounds", "--dim", "3", "--n", "4", "--table", "--to", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("7\t112\t224\t"), std::string::npos) << r.out;
  EXPECT_EQ(run({"bounds", "--dim", "3", "--n", "2"}).code, 1);
  EXPECT_EQ(run({"bounds", "--dim", "2", "--n", "5", "--to", "7"}).code, 1);
}

TEST(Cli, SolveFanTriangulation) {
  const auto r = run({"solve", fixture("fan_triangulation_5.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("count = 8, complete = true"), std::string::npos) << r.out;
}

TEST(Cli, SolveWritesSolutions) {
  TempDir tmp;
  const auto out = tmp.file("sol.json");
  const auto r = run({"solve", fixture("hi_fan_4.json"), "--method", "newton", "--starts", "500", "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("count = 4, complete = false"), std::string::npos) << r.out;
  const auto doc = read_document(out);
  EXPECT_EQ(doc.solutions.size(), 4u);
  for (const auto& s : doc.solutions) EXPECT_LE(max_relative_residual(doc.framework, s), 1e-9);
}

TEST(Cli, SolveInfeasibleIsNotAnError) {
  const auto r = run({"solve", fixture("infeasible_triangle.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("count = 0"), std::string::npos);
}

TEST(Cli, SolveAutoPicksNewtonForTypeII) {
  const auto r = run({"solve", fixture("desargues_witness.json"), "--threads", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("method = newton"), std::string::npos);
  EXPECT_NE(r.out.find("count = 24"), std::string::npos) << r.out;
  EXPECT_EQ(run({"solve", fixture("desargues_witness.json"), "--method", "branch"}).code, 1);
  EXPECT_EQ(run({"solve", fixture("four_cycle.json")}).code, 2);
}

TEST(Cli, CheckK33) {
  const auto r = run({"check", fixture("k33.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Laman: yes"), std::string::npos);
  EXPECT_NE(r.out.find("generic rank: 9"), std::string::npos);
  EXPECT_NE(r.out.find("DOF: 0"), std::string::npos);
  const auto c4 = run({"check", fixture("four_cycle.json")});
  EXPECT_EQ(c4.code, 4);
  EXPECT_NE(c4.out.find("Laman: no"), std::string::npos);
}

TEST(Cli, Henneberg) {
  const auto c = run({"henneberg", fixture("k33.json"), "--classify"});
  EXPECT_EQ(c.out, "II\n");
  const auto s = run({"henneberg", fixture("fan_triangulation_5.json")});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out.rfind("base ", 0), 0u);
  const auto k = run({"henneberg", fixture("k33.json")});
  EXPECT_NE(k.out.find("II "), std::string::npos);
  EXPECT_EQ(run({"henneberg", fixture("four_cycle.json")}).code, 4);
  EXPECT_EQ(run({"henneberg", fixture("four_cycle.json"), "--classify"}).out, "not-laman\n");
}

TEST(Cli, MalformedFilesExitTwoWithLocation) {
  const auto syn = run({"check", fixture("bad_syntax.json")});
  EXPECT_EQ(syn.code, 2);
  EXPECT_NE(syn.err.find("line 7"), std::string::npos) << syn.err;
  const auto len = run({"check", fixture("bad_length.json")});
  EXPECT_EQ(len.code, 2);
  EXPECT_NE(len.err.find("edges[1][2]"), std::string::npos) << len.err;
  const auto idx = run({"check", fixture("bad_index.json")});
  EXPECT_EQ(idx.code, 2);
  EXPECT_NE(idx.err.find("edges[1][1]"), std::string::npos) << idx.err;
  const auto miss = run({"check", fixture("missing_edges.json")});
  EXPECT_EQ(miss.code, 2);
  EXPECT_NE(miss.err.find("'edges'"), std::string::npos) << miss.err;
  EXPECT_EQ(run({"check", fixture("no_such_file.json")}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"solve"}).code, 1);
  EXPECT_EQ(run({"solve", fixture("hi_fan_4.json"), "--method", "magic"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SearchBudget) {
  TempDir tmp;
  EXPECT_EQ(run({"search-desargues", "--budget", "10", "-o", tmp.file("w.json")}).code, 1);
  const auto r = run({"search-desargues", "--seed", "1", "-o", tmp.file("w.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(tmp.file("w.json")), slurp(fixture("desargues_witness.json")));
}

TEST(Cli, SearchExhaustedBudgetExitsThree) {
  // seeds whose first 1000 candidates all fail exist; find one quickly
  TempDir tmp;
  bool saw_three = false;
  for (int seed = 2; seed < 40 && !saw_three; ++seed) {
    const auto r = run({"search-desargues", "--seed", std::to_string(seed), "--budget", "1000", "-o",
                        tmp.file("w.json")});
    ASSERT_TRUE(r.code == 0 || r.code == 3);
    saw_three = r.code == 3;
  }
  if (!saw_three) GTEST_SKIP() << "every tried seed succeeded within 1000 evaluations";
}

TEST(Cli, Families) {
  TempDir tmp;
  for (const std::string name : {"fan-triangulation", "k33", "desargues", "caterpillar", "fan",
                                 "simplex-chain", "henneberg1"}) {
    const auto out = tmp.file(name + ".json");
    const auto r = run({"family", name, "--n", "6", "--blocks", "2", "--dim", "3", "-o", out});
    ASSERT_EQ(r.code, 0) << name << ": " << r.err;
    EXPECT_NO_THROW(read_document(out)) << name;
  }
  const auto fan = run({"family", "fan", "--blocks", "2", "-o", tmp.file("f.json")});
  EXPECT_NE(fan.out.find("compositional count = 576"), std::string::npos) << fan.out;
  EXPECT_NE(fan.out.find("pinned embedding count = 288"), std::string::npos) << fan.out;
  const auto sc = run({"family", "simplex-chain", "--dim", "3", "--n", "8", "-o", tmp.file("s.json")});
  EXPECT_NE(sc.out.find("rigid (exact): yes"), std::string::npos);
  EXPECT_EQ(run({"family", "nope", "-o", tmp.file("x.json")}).code, 1);
}

TEST(Cli, SeedFromEnvironment) {
  TempDir tmp;
  ::setenv("RIGIDLAB_SEED", "17", 1);
  ASSERT_EQ(run({"family", "k33", "-o", tmp.file("a.json")}).code, 0);
  ::unsetenv("RIGIDLAB_SEED");
  ASSERT_EQ(run({"family", "k33", "--seed", "17", "-o", tmp.file("b.json")}).code, 0);
  ASSERT_EQ(run({"family", "k33", "--seed", "18", "-o", tmp.file("c.json")}).code, 0);
  EXPECT_EQ(slurp(tmp.file("a.json")), slurp(tmp.file("b.json")));
  EXPECT_NE(slurp(tmp.file("a.json")), slurp(tmp.file("c.json")));
  ::setenv("RIGIDLAB_SEED", "abc", 1);
  EXPECT_EQ(run({"bounds", "--dim", "2", "--n", "4"}).code, 1);
  ::unsetenv("RIGIDLAB_SEED");
}

TEST(Cli, PlotIsDeterministic) {
  TempDir tmp;
  ASSERT_EQ(run({"solve", fixture("fan_triangulation_5.json"), "-o", tmp.file("s.json")}).code, 0);
  ASSERT_EQ(run({"plot", fixture("fan_triangulation_5.json"), "--solutions", tmp.file("s.json"), "-o",
                 tmp.file("a.svg")}).code, 0);
  ASSERT_EQ(run({"plot", fixture("fan_triangulation_5.json"), "--solutions", tmp.file("s.json"), "-o",
                 tmp.file("b.svg")}).code, 0);
  const auto a = slurp(tmp.file("a.svg"));
  EXPECT_EQ(a, slurp(tmp.file("b.svg")));
  EXPECT_NE(a.find("viewBox"), std::string::npos);
  EXPECT_EQ(a.rfind("<?xml", 0), 0u);
}

TEST(Cli, PlotCoupler) {
  TempDir tmp;
  const auto r = run({"plot", fixture("desargues_witness.json"), "--coupler", "-o", tmp.file("c.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("crossings = 24"), std::string::npos) << r.out;
  const auto svg = slurp(tmp.file("c.svg"));
  std::size_t red = 0;
  for (auto p = svg.find("fill=\"red\""); p != std::string::npos; p = svg.find("fill=\"red\"", p + 1)) ++red;
  EXPECT_EQ(red, 24u);
  EXPECT_EQ(run({"plot", fixture("desargues_witness.json"), "--coupler", "--circle", "1,2", "-o",
                 tmp.file("d.svg")}).code, 1);
  const auto custom = run({"plot", fixture("desargues_witness.json"), "--coupler", "--circle",
                           "0.5,0.5,1", "-o", tmp.file("e.svg")});
  EXPECT_EQ(custom.code, 0);
  EXPECT_EQ(run({"plot", fixture("k33.json"), "--coupler", "-o", tmp.file("f.svg")}).code, 2);
}

TEST(FrameworkIo, RoundTripIsIdentity) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(1e-3, 1e3);
  for (int t = 0; t < 50; ++t) {
    FrameworkDocument doc;
    const Graph g = random_henneberg1_graph(3 + t % 6, t);
    std::map<Edge, double> lengths;
    for (const Edge& e : g.edges()) lengths[e] = u(rng);
    doc.framework = Framework(g, 2, lengths);
    if (t % 2) doc.fourbar = FourBar{u(rng), u(rng), u(rng), u(rng), {u(rng), -u(rng)}};
    const auto back = parse_document(to_json(doc));
    EXPECT_TRUE(back.framework.graph().same_edges(g));
    for (const auto& [e, l] : lengths) EXPECT_EQ(back.framework.length(e.u, e.v), l);
    if (doc.fourbar) {
      ASSERT_TRUE(back.fourbar);
      EXPECT_EQ(back.fourbar->crank, doc.fourbar->crank);
      EXPECT_EQ(back.fourbar->offset.y, doc.fourbar->offset.y);
    }
    EXPECT_EQ(to_json(back), to_json(doc));
  }
}

TEST(FrameworkIo, AcceptsNumericLengths) {
  const auto doc = parse_document(R"({"dimension": 2, "n": 2, "edges": [[1, 0, 2.5]]})");
  EXPECT_EQ(doc.framework.length(0, 1), 2.5);
  EXPECT_THROW(parse_document(R"({"dimension": 2, "n": 2, "edges": [[1, 0, "2.5x"]]})"), FileError);
  EXPECT_THROW(parse_document(R"({"dimension": 2, "n": 2, "edges": [[1, 0, 1], [0, 1, 1]]})"), FileError);
  EXPECT_THROW(parse_document(R"({"dimension": 2, "n": 2, "edges": [[1, 1, 1]]})"), FileError);
  EXPECT_THROW(parse_document(R"({"dimension": 2, "n": 2, "edges": [], "points": [[0, 0]]})"), FileError);
  EXPECT_THROW(parse_document(R"([1, 2])"), FileError);
}

TEST(Svg, ViewBoxHasFivePercentMargin) {
  SvgCanvas svg;
  svg.line({0, 0}, {10, 0}, "black");
  svg.line({0, 0}, {0, 20}, "black");
  const auto s = svg.str();
  EXPECT_NE(s.find("viewBox=\"-0.5 -21 11 22\""), std::string::npos) << s;
}
