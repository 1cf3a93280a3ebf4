#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rgp/generators.hpp"
#include "rgp/percolation.hpp"

using namespace rgp;

TEST(Percolation, Extremes) {
  const Graph q4 = hypercube(4);
  EXPECT_TRUE(percolate(q4, 0.0, 1).retained.empty());
  EXPECT_EQ(percolate(q4, 1.0, 1).retained.size(), q4.size());
  EXPECT_TRUE(union_sample(q4, 0.0, 0.0, 3).retained.empty());
  EXPECT_EQ(union_sample(q4, 1.0, 0.3, 3).retained.size(), q4.size());
  EXPECT_THROW(percolate(q4, 1.5, 1), ParameterError);
  EXPECT_THROW(percolate(q4, std::nan(""), 1), ParameterError);
}

TEST(Percolation, SeededAndSorted) {
  const Graph q6 = hypercube(6);
  const auto a = percolate(q6, 0.3, 77);
  EXPECT_EQ(a.retained, percolate(q6, 0.3, 77).retained);
  EXPECT_NE(a.retained, percolate(q6, 0.3, 78).retained);
  EXPECT_TRUE(std::is_sorted(a.retained.begin(), a.retained.end()));
  const auto deg = sample_degrees(q6, a);
  const Graph s = sample_graph(q6, a);
  for (Vertex v = 0; v < q6.order(); ++v) EXPECT_EQ(deg[v], s.degree(v));
}

// Retained count is Binomial(5120, 1/2).
TEST(Percolation, BinomialMoments) {
  const Graph q10 = hypercube(10);
  const int samples = 2000;
  double sum = 0, sq = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = static_cast<double>(percolate(q10, 0.5, split_seed(9, i)).retained.size());
    sum += x;
    sq += x * x;
  }
  const double mean = sum / samples;
  const double var = sq / samples - mean * mean;
  EXPECT_NEAR(mean, 2560.0, 3 * std::sqrt(1280.0 / samples));
  EXPECT_NEAR(var, 1280.0, 1280.0 * 3 * std::sqrt(2.0 / samples));
}

TEST(Thresholds, MinDegree) {
  const auto t = mindeg_threshold_p(1024, 10, std::log(1024.0));
  EXPECT_NEAR(t.p, 0.393190249744548560, 1e-12);  // mpmath, 30 digits
  EXPECT_NEAR(t.p, 0.39320, 5e-5);
  EXPECT_NEAR(t.dp, 10 * t.p, 1e-15);
  EXPECT_NEAR(mindeg_threshold_p(100, 1, 7).p, 1 - 7.0 / 100, 1e-15);
  EXPECT_LT(mindeg_threshold_p(1e6, 10, 1e6 * (1 - 1e-12)).p, 1e-12);
  for (double n : {100.0, 1024.0, 1e5}) {
    for (double d : {3.0, 10.0, 40.0}) {
      const double phi = std::log(n);
      const double p = mindeg_threshold_p(n, d, phi).p;
      EXPECT_NEAR(n * std::pow(1 - p, d) / phi, 1.0, 1e-9);
    }
  }
  EXPECT_THROW(mindeg_threshold_p(10, 3, 0.5), ParameterError);
}

TEST(Thresholds, Construction) {
  EXPECT_NEAR(construction_threshold_p(1600, 38), 0.203982146100709707, 1e-12);  // mpmath
  EXPECT_NEAR(construction_threshold_p(4000, 38), 0.222946889652025286, 1e-12);
  EXPECT_NEAR(construction_threshold_p(1600, 38), 0.20399, 1e-4);
  EXPECT_NEAR(construction_threshold_p(4000, 38), 0.22303, 1e-4);
  for (double n : {1600.0, 4000.0, 1e5}) {
    for (double d : {38.0, 76.0}) {
      const double p = construction_threshold_p(n, d);
      EXPECT_NEAR(n * std::log(d) * std::pow(1 - p, d), 1.0, 1e-9);
      EXPECT_NEAR(n * std::pow(1 - p, d), 1 / std::log(d), 1e-9);
    }
  }
}

TEST(Thresholds, SprinkleSplit) {
  auto [p1, p2] = sprinkle_split(0.5, 10);
  EXPECT_NEAR(p1, 4.0 / 9.0, 1e-15);
  EXPECT_NEAR(p2, 0.1, 1e-15);
  EXPECT_NEAR((1 - p1) * (1 - p2), 0.5, 1e-15);
  std::tie(p1, p2) = sprinkle_split(0.1, 10);
  EXPECT_NEAR(p1, 0.0, 1e-15);
  std::tie(p1, p2) = sprinkle_split(1.0, 10);
  EXPECT_EQ(p1, 1.0);
  EXPECT_THROW(sprinkle_split(0.05, 10), ParameterError);
}

// Edge-subset distribution of the two-round union equals single-round G_p on K4.
TEST(Sprinkling, ChiSquareOnK4) {
  const Graph k4 = complete_graph(4);
  const std::size_t draws = 200'000;
  std::vector<std::size_t> a(64, 0), b(64, 0);
  for (std::size_t i = 0; i < draws; ++i) {
    std::size_t ma = 0, mb = 0;
    for (auto e : union_sample(k4, 0.25, 1.0 / 3.0, split_seed(1, i)).retained) ma |= std::size_t{1} << e;
    for (auto e : percolate(k4, 0.5, split_seed(2, i)).retained) mb |= std::size_t{1} << e;
    ++a[ma];
    ++b[mb];
  }
  const auto [stat, df] = oracle::chi2_two_sample(a, b);
  EXPECT_EQ(df, 63u);
  EXPECT_LT(stat, oracle::kChi2Df63Alpha1e3);
}

// A deliberately wrong split must be detected.
TEST(Sprinkling, ChiSquareHasPower) {
  const Graph k4 = complete_graph(4);
  const std::size_t draws = 200'000;
  std::vector<std::size_t> a(64, 0), b(64, 0);
  for (std::size_t i = 0; i < draws; ++i) {
    std::size_t ma = 0, mb = 0;
    for (auto e : union_sample(k4, 0.25, 0.3, split_seed(1, i)).retained) ma |= std::size_t{1} << e;
    for (auto e : percolate(k4, 0.5, split_seed(2, i)).retained) mb |= std::size_t{1} << e;
    ++a[ma];
    ++b[mb];
  }
  EXPECT_GT(oracle::chi2_two_sample(a, b).first, oracle::kChi2Df63Alpha1e3);
}
