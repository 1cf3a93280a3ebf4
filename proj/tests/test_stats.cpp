#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rgp/stats.hpp"

using namespace rgp;

TEST(Wilson, CloseToClopperPearsonAtN300) {
  double worst = 0;
  for (std::size_t x = 0; x <= 300; ++x) {
    const auto w = wilson_interval(x, 300);
    const auto [lo, hi] = oracle::clopper_pearson(x, 300);
    worst = std::max({worst, std::abs(w.lo - lo), std::abs(w.hi - hi)});
    EXPECT_LE(w.lo, static_cast<double>(x) / 300);
    EXPECT_GE(w.hi, static_cast<double>(x) / 300);
  }
  EXPECT_LE(worst, 0.02);
}

TEST(Wilson, Edges) {
  EXPECT_EQ(wilson_interval(0, 50).lo, 0.0);
  EXPECT_EQ(wilson_interval(50, 50).hi, 1.0);
  const auto e = wilson_interval(0, 0);
  EXPECT_EQ(e.lo, 0.0);
  EXPECT_EQ(e.hi, 1.0);
}

TEST(Isotonic, PoolsViolators) {
  const std::vector<double> v{0.1, 0.3, 0.2, 0.5, 0.4, 0.9};
  const std::vector<double> w(6, 1.0);
  const auto fit = isotonic_fit(v, w);
  const std::vector<double> expected{0.1, 0.25, 0.25, 0.45, 0.45, 0.9};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(fit[i], expected[i], 1e-15);
  const std::vector<double> w2{1, 3, 1, 1, 1, 1};
  EXPECT_NEAR(isotonic_fit(v, w2)[1], (0.9 + 0.2) / 4, 1e-15);
}

// PAVA is the least-squares monotone fit: compare with a brute-force search
// over monotone sequences drawn from the data values (the optimum lies there
// as a set of block means, so check optimality via objective only).
TEST(Isotonic, MonotoneAndOptimal) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> v(8), w(8);
    for (auto& x : v) x = u(rng);
    for (auto& x : w) x = 0.5 + u(rng);
    const auto fit = isotonic_fit(v, w);
    EXPECT_TRUE(std::is_sorted(fit.begin(), fit.end()));
    double obj = 0;
    for (int i = 0; i < 8; ++i) obj += w[i] * (fit[i] - v[i]) * (fit[i] - v[i]);
    // Random monotone competitors never do better.
    for (int t = 0; t < 200; ++t) {
      std::vector<double> c(8);
      for (auto& x : c) x = u(rng);
      std::sort(c.begin(), c.end());
      double o = 0;
      for (int i = 0; i < 8; ++i) o += w[i] * (c[i] - v[i]) * (c[i] - v[i]);
      EXPECT_GE(o, obj - 1e-12);
    }
  }
}

TEST(Moments, Basic) {
  const std::vector<int> xs{1, 2, 3, 4};
  const auto m = moments<int>(xs);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_DOUBLE_EQ(m.variance, 5.0 / 3.0);
}
