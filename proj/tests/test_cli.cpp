#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rgp/cli.hpp"

using namespace rgp;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_graph(const std::string& name, const Graph& g) {
  const auto path = ::testing::TempDir() + name;
  save_graph(g, path);
  return path;
}

}  // namespace

TEST(Cli, GenMatchesLibrary) {
  const auto r = run({"gen", "--type", "hypercube", "--dim", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, write_graph(hypercube(3)));
  EXPECT_EQ(run({"gen", "--type", "product", "--factor", "K3", "--factor", "K3"}).out,
            write_graph(cartesian_product(std::vector<Graph>{complete_graph(3), complete_graph(3)})));
  EXPECT_EQ(run({"--seed", "9", "gen", "--type", "rrg", "--n", "20", "--d", "3"}).out,
            write_graph(random_regular(20, 3, 9)));
}

TEST(Cli, GenWritesFile) {
  const auto path = ::testing::TempDir() + "cli_c5.g";
  EXPECT_EQ(run({"gen", "--type", "cycle", "--n", "5", "--out", path}).code, 0);
  EXPECT_EQ(load_graph(path), cycle_graph(5));
  std::remove(path.c_str());
}

TEST(Cli, CertifyExitCodes) {
  const auto q10 = temp_graph("cli_q10.g", hypercube(10));
  const auto ok = run({"certify", "--graph", q10, "--property", "p1", "--c", "1", "--method", "spectral"});
  EXPECT_EQ(ok.code, 0);
  const auto j = Json::parse(ok.out);
  EXPECT_EQ(j["verdict"], "certified");
  EXPECT_NEAR(j["lambda2"].get<double>(), 8.0, 1e-6);

  const auto c8 = temp_graph("cli_c8.g", cycle_graph(8));
  EXPECT_EQ(run({"certify", "--graph", c8, "--property", "p1", "--c", "1", "--method", "brute", "--max-size", "4"}).code,
            1);
  EXPECT_EQ(run({"certify", "--graph", c8, "--property", "p1", "--c", "0.5", "--method", "brute", "--max-size", "2"}).code,
            3);
}

TEST(Cli, SimExhaustiveC4) {
  const auto c4 = temp_graph("cli_c4.g", cycle_graph(4));
  const auto r = run({"sim", "--graph", c4, "--exhaustive"});
  EXPECT_EQ(r.code, 0);
  const auto rep = read_report(r.out);
  EXPECT_EQ(rep.aggregates["equal_exact"], "16/24");
  EXPECT_EQ(run({"sim", "--graph", c4, "--exhaustive", "--expect-min", "0.9"}).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"gen", "--type", "hypercube", "--bogus"}).code, 2);
  EXPECT_EQ(run({"gen", "--type", "moebius"}).code, 2);
  EXPECT_EQ(run({"--seed", "12x", "gen", "--type", "cycle", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"sim", "--graph", "/nonexistent/graph.g"}).code, 2);
  const auto c6 = temp_graph("cli_c6.g", cycle_graph(6));
  EXPECT_EQ(run({"sim", "--graph", c6, "--k", "3"}).code, 2);
  EXPECT_EQ(run({"sweep", "--graph", c6, "--property", "planar"}).code, 2);
}

TEST(Cli, SeedAndThreadsInReport) {
  const auto q6 = temp_graph("cli_q6.g", hypercube(6));
  const auto a = run({"--seed", "0x2a", "sim", "--graph", q6, "--trials", "30", "--k", "2"});
  const auto b = run({"--seed", "42", "--threads", "3", "sim", "--graph", q6, "--trials", "30", "--k", "2"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(read_report(a.out).config["base_seed"], 42);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SweepCsvAndJson) {
  const auto q5 = temp_graph("cli_q5.g", hypercube(5));
  const auto csv = run({"--format", "csv", "sweep", "--graph", q5, "--property", "connected", "--pmin", "0", "--pmax",
                        "1", "--step", "0.25", "--trials", "20"});
  ASSERT_EQ(csv.code, 0);
  std::istringstream in(csv.out);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6u);
  const auto js = run({"sweep", "--graph", q5, "--property", "connected", "--pmin", "0", "--pmax", "1", "--step",
                       "0.25", "--trials", "20"});
  EXPECT_EQ(read_report(js.out).experiment, "sweep");
}

TEST(Cli, ExperimentExpectMin) {
  const auto q5 = temp_graph("cli_q5b.g", hypercube(5));
  EXPECT_EQ(run({"exp", "structure", "--graph", q5, "--trials", "10", "--p", "1"}).code, 0);
  EXPECT_EQ(run({"exp", "structure", "--graph", q5, "--trials", "10", "--p", "0.01", "--expect-min", "0.5"}).code, 1);
  EXPECT_EQ(run({"exp", "tightness", "--graph", q5, "--trials", "10"}).code, 2);
}
