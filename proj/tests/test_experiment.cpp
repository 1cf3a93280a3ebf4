#include <gtest/gtest.h>

#include "rgp/experiment.hpp"
#include "rgp/generators.hpp"

using namespace rgp;

namespace {

ExperimentConfig config(std::size_t trials, std::size_t k = 1) {
  ExperimentConfig c;
  c.graph_source = "test";
  c.trials = trials;
  c.k = k;
  return c;
}

}  // namespace

TEST(Hitting, C4ExhaustiveIsExact) {
  const auto r = run_hitting_experiment(cycle_graph(4), config(1));
  EXPECT_EQ(r.aggregates["mode"], "exhaustive");
  EXPECT_EQ(r.aggregates["equal_exact"], "16/24");
  EXPECT_EQ(r.trials.size(), 24u);
  EXPECT_DOUBLE_EQ(r.aggregates["equal"]["fraction"].get<double>(), 2.0 / 3.0);
}

TEST(Hitting, C4MonteCarlo) {
  auto cfg = config(20000);
  cfg.exhaustive = false;
  const auto r = run_hitting_experiment(cycle_graph(4), cfg);
  EXPECT_NEAR(r.aggregates["equal"]["fraction"].get<double>(), 2.0 / 3.0, 0.01);
}

TEST(Hitting, RejectsHostBelowK) {
  EXPECT_THROW(run_hitting_experiment(cycle_graph(6), config(5, 3)), ExperimentError);
}

TEST(Hitting, SeedsFollowSplitRule) {
  const auto r = run_hitting_experiment(hypercube(5), config(4));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(r.trials[i]["seed"].get<std::uint64_t>(), split_seed(kDefaultSeed, i));
}

TEST(Structure, FullRetentionPasses) {
  auto cfg = config(10, 2);
  cfg.p_override = 1.0;
  const auto r = run_structure_experiment(hypercube(6), cfg);
  EXPECT_EQ(r.aggregates["all"]["successes"], 10);
  EXPECT_EQ(r.aggregates["core_failures"]["none"], 10);
}

TEST(Structure, ThresholdProbability) {
  const auto r = run_structure_experiment(hypercube(10), config(3));
  EXPECT_NEAR(r.aggregates["p"].get<double>(), 0.393190249744548560, 1e-12);
}

TEST(Tightness, NeedsConstruction) {
  EXPECT_THROW(run_tightness_experiment(hypercube(4), config(1)), ExperimentError);
}

TEST(Tightness, SmallConstruction) {
  ConstructionSpec spec;
  spec.d = 38;
  spec.n = 1600;
  auto cfg = config(30);
  cfg.process_trials = 10;
  const auto r = run_tightness_experiment(tightness_construction(spec), cfg);
  const auto& perc = r.aggregates["percolation"];
  EXPECT_NEAR(perc["isolated_expected"].get<double>(), 1 / std::log(38.0), 1e-9);
  EXPECT_NEAR(perc["isolated_expected_identity"].get<double>(), 1 / std::log(38.0), 1e-15);
  EXPECT_EQ(r.trials.size(), 40u);
  EXPECT_EQ(r.aggregates["process"]["trials"], 10);
}

TEST(Sweep, ExtremeRows) {
  auto cfg = config(25);
  cfg.p_grid = {0.0, 0.5, 1.0};
  for (auto prop : {SweepProperty::min_degree_ge_k, SweepProperty::connected, SweepProperty::k_connected}) {
    const auto t = sweep_probability(hypercube(5), cfg, prop);
    EXPECT_EQ(t.rows.front().successes, 0u);
    EXPECT_EQ(t.rows.back().successes, 25u);
  }
}

// The critical-probability shortcut agrees with evaluating each sample directly.
TEST(Sweep, MatchesDirectEvaluation) {
  const Graph g = hypercube(6);
  auto cfg = config(40, 2);
  cfg.p_grid = {0.3, 0.45, 0.6, 0.75};
  for (auto prop : {SweepProperty::min_degree_ge_k, SweepProperty::connected, SweepProperty::k_connected}) {
    const auto t = sweep_probability(g, cfg, prop);
    for (const auto& row : t.rows) {
      std::size_t direct = 0;
      for (std::size_t i = 0; i < cfg.trials; ++i) {
        direct += sample_has_property(g, percolate(g, row.p, split_seed(cfg.base_seed, i)), prop, cfg.k);
      }
      EXPECT_EQ(row.successes, direct) << to_string(prop) << " p=" << row.p;
      EXPECT_GE(row.isotonic, row.ci.lo - 1e-12);
      EXPECT_LE(row.isotonic, row.ci.hi + 1e-12);
    }
    for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_GE(t.rows[i].isotonic, t.rows[i - 1].isotonic);
  }
}

TEST(Sweep, HalfThreshold) {
  SweepTable t;
  t.rows = {{0.2, "x", 0, 1, 0.0, {}, 0.0}, {0.4, "x", 1, 1, 1.0, {}, 1.0}};
  EXPECT_DOUBLE_EQ(estimate_half_threshold(t), 0.3);
  t.rows = {{0.1, "x", 0, 1, 0.2, {}, 0.2}, {0.3, "x", 0, 1, 0.5, {}, 0.5}, {0.5, "x", 0, 1, 0.9, {}, 0.9}};
  EXPECT_DOUBLE_EQ(estimate_half_threshold(t), 0.3);
  t.rows = {{0.1, "x", 0, 1, 0.6, {}, 0.6}};
  EXPECT_THROW(estimate_half_threshold(t), ExperimentError);
}

TEST(Sweep, CsvHeader) {
  auto cfg = config(5);
  cfg.p_grid = {0.5};
  const auto csv = sweep_csv(sweep_probability(cycle_graph(5), cfg, SweepProperty::connected));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,property,successes,trials,phat,ci_lo,ci_hi,isotonic");
}

TEST(Report, RoundTrips) {
  Report empty;
  empty.experiment = "hitting";
  const auto text = write_report(empty);
  EXPECT_EQ(write_report(read_report(text)), text);
  EXPECT_EQ(read_report(text), empty);

  auto cfg = config(3);
  const auto r = run_hitting_experiment(hypercube(4), cfg);
  EXPECT_EQ(r.trials.size(), 3u);
  EXPECT_EQ(read_report(write_report(r)), r);
}

TEST(Report, RejectsBadInput) {
  EXPECT_THROW(read_report("not json"), ReportError);
  EXPECT_THROW(read_report(R"({"format_version": 2})"), ReportError);
  EXPECT_THROW(read_report(R"({"format_version": 1, "experiment": "x"})"), ReportError);
  EXPECT_THROW(read_report(R"({"format_version":1,"experiment":"x","config":{},"host":{},"aggregates":{},"trials":{}})"),
               ReportError);
}

TEST(Config, Validation) {
  auto cfg = config(0);
  EXPECT_THROW(cfg.validate(), ExperimentError);
  cfg = config(1);
  cfg.p_grid = {0.2, 0.2};
  EXPECT_THROW(cfg.validate(), ExperimentError);
  cfg.p_grid = {0.2, 1.2};
  EXPECT_THROW(cfg.validate(), ExperimentError);
}

TEST(Determinism, ThreadCountDoesNotChangeBytes) {
  const Graph q7 = hypercube(7);
  ConstructionSpec spec;
  spec.d = 38;
  spec.n = 1600;
  const Graph tight = tightness_construction(spec);
  for (unsigned threads : {2u, 4u}) {
    auto one = config(24, 2);
    auto many = one;
    many.threads = threads;
    EXPECT_EQ(write_report(run_hitting_experiment(q7, one)), write_report(run_hitting_experiment(q7, many)));
    EXPECT_EQ(write_report(run_structure_experiment(q7, one)), write_report(run_structure_experiment(q7, many)));
    one.k = many.k = 1;
    one.process_trials = many.process_trials = 6;
    EXPECT_EQ(write_report(run_tightness_experiment(tight, one)), write_report(run_tightness_experiment(tight, many)));
    one.p_grid = many.p_grid = {0.3, 0.5, 0.7};
    EXPECT_EQ(sweep_csv(sweep_probability(q7, one, SweepProperty::connected)),
              sweep_csv(sweep_probability(q7, many, SweepProperty::connected)));
  }
}

TEST(Parallel, FirstExceptionByIndex) {
  std::vector<int> hit(50, 0);
  try {
    parallel_for(50, 4, [&](std::size_t i) {
      hit[i] = 1;
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}
