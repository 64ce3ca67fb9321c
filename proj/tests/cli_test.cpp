#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "enrich/cli.hpp"
#include "enrich/errors.hpp"

using namespace enrich;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("enrich_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, TriangleDissection) {
  const Outcome r = run({"sample", "--class", "dissection", "--size", "2", "--count", "1", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "polygon 3\n");
}

TEST(Cli, CountCactus) {
  const Outcome r = run({"count", "--class", "cactus", "--size", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4\n");
  EXPECT_EQ(run({"count", "--class", "sp", "--size", "7"}).out, "576964\n");
}

TEST(Cli, SinglePermutation) {
  const auto s = write_file("simples.txt", "# separable plus two\n2413\n3142\n");
  const Outcome r = run({"sample", "--class", "permutation", "--simples", s.string(), "--size", "1", "--count", "1",
                     "--seed", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
  EXPECT_EQ(run({"count", "--class", "permutation", "--simples", s.string(), "--size", "5"}).out, "114\n");
}

TEST(Cli, SerializeForms) {
  SampledObject t;
  t.tree.outdeg = {1, 0};
  EXPECT_EQ(serialize(t, Format::tree), "1 0\n");
  SampledObject g;
  g.kind = ObjectKind::graph;
  g.graph = LabeledGraph::from_edges(2, {{1, 2}});
  EXPECT_EQ(serialize(g, Format::edges), "2 1\n1 2\n");
  g.graph = LabeledGraph::from_edges(3, {{2, 3}, {1, 2}, {1, 3}});
  EXPECT_EQ(serialize(g, Format::automatic), "3 3\n1 2\n1 3\n2 3\n");
  EXPECT_THROW(serialize(g, Format::perm), UsageError);
  EXPECT_THROW(serialize(g, Format::polygon), UsageError);
  SampledObject p;
  p.kind = ObjectKind::permutation;
  p.permutation = {2, 4, 1, 3};
  EXPECT_EQ(serialize(p, Format::automatic), "2 4 1 3\n");
  EXPECT_THROW(parse_format("json"), UsageError);
}

TEST(Cli, OutputDoesNotDependOnJobs) {
  const std::vector<std::string> base{"sample", "--class", "outerplanar", "-n", "40", "-m", "25", "--seed", "3"};
  auto with = [&](const char* j) {
    auto a = base;
    a.insert(a.end(), {"--jobs", j});
    return run(a);
  };
  const Outcome a = with("1"), b = with("4");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, run(base).out);
  EXPECT_NE(a.out, run({"sample", "--class", "outerplanar", "-n", "40", "-m", "25", "--seed", "4"}).out);
}

TEST(Cli, EnvironmentSuppliesDefaults) {
  const Outcome flag = run({"sample", "--class", "cograph", "-n", "12", "-m", "3", "--seed", "99"});
  ::setenv("ENRICH_SEED", "99", 1);
  ::setenv("ENRICH_CLASS", "cograph", 1);
  const Outcome env = run({"sample", "-n", "12", "-m", "3"});
  const Outcome both = run({"sample", "-n", "12", "-m", "3", "--seed", "98"});
  ::unsetenv("ENRICH_SEED");
  ::unsetenv("ENRICH_CLASS");
  EXPECT_EQ(env.code, 0) << env.err;
  EXPECT_EQ(env.out, flag.out);
  EXPECT_NE(both.out, flag.out);  // the flag wins over the variable
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"sample", "--class", "planar", "-n", "3"}).code, 2);
  EXPECT_EQ(run({"sample", "--class", "cactus"}).code, 2);
  EXPECT_EQ(run({"sample", "--class", "permutation", "-n", "3"}).code, 2);
  EXPECT_EQ(run({"sample", "--class", "cactus", "-n", "3", "--format", "polygon"}).code, 2);
  EXPECT_EQ(run({"sample", "--class", "cactus", "-n", "0"}).code, 2);
  EXPECT_EQ(run({"count", "--class", "tree-leaves", "-n", "3"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bench", "--class", "cactus", "--min-log", "10", "--max-log", "12"}).code, 2);
  const Outcome r = run({"sample", "--class", "tree-leaves", "--zeta", "/nonexistent/zeta", "-n", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("enrich:"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RuntimeErrorsExitOne) {
  // Size 1 has no dissection.
  EXPECT_EQ(run({"sample", "--class", "dissection", "-n", "1"}).code, 1);
  // t0 below the tilt.
  EXPECT_EQ(run({"sample", "--class", "cactus", "-n", "5", "--t0", "0.1"}).code, 1);
}

TEST(Cli, OutWritesOneFilePerSample) {
  const fs::path base = scratch_dir() / "draw";
  const Outcome r = run({"sample", "--class", "cactus", "-n", "6", "-m", "3", "--seed", "5", "--out", base.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Outcome s = run({"sample", "--class", "cactus", "-n", "6", "-m", "3", "--seed", "5"});
  std::string joined;
  for (int i = 0; i < 3; ++i) {
    std::ifstream f(base.string() + "." + std::to_string(i));
    ASSERT_TRUE(f) << i;
    std::stringstream ss;
    ss << f.rdbuf();
    if (i) joined += "\n";
    joined += ss.str();
  }
  EXPECT_EQ(joined, s.out);
}

TEST(Cli, TreeLeavesWithZetaFile) {
  const auto z = write_file("zeta.txt", "0.5  # leaves\n0\n0.5\n");
  const Outcome r = run({"sample", "--class", "tree-leaves", "--zeta", z.string(), "-n", "4", "-m", "5", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    // Full binary tree with four leaves: seven outdegrees, three of them 2.
    std::istringstream ls(line);
    int d, n = 0, twos = 0;
    while (ls >> d) ++n, twos += d == 2;
    EXPECT_EQ(n, 7);
    EXPECT_EQ(twos, 3);
  }
  EXPECT_EQ(lines, 5);
  const ZetaSpec spec = read_zeta_file(z.string(), {0});
  EXPECT_EQ(spec.prob(2), Real(0.5));
  const auto bad = write_file("bad.txt", "0.5 x\n");
  EXPECT_THROW(read_zeta_file(bad.string(), {0}), UsageError);
}

TEST(Cli, BuiltinZetaNames) {
  const Outcome r = run({"sample", "--class", "tree-leaves", "--zeta", "cograph", "-n", "6", "--seed", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.out.empty());
}

TEST(Cli, BenchCsv) {
  const Outcome r = run({"bench", "--class", "cayley", "--min-log", "4", "--max-log", "8", "--reps", "1", "--csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 6);  // header plus five sizes
}

TEST(Cli, SelftestPasses) {
  const Outcome r = run({"selftest", "--seed", "1", "--samples", "20000", "--jobs", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}
