#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rgp/graph.hpp"
#include "rgp/rng.hpp"

namespace rgp {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Edge subset of a host graph, as sorted canonical edge indices.
struct PercolationSample {
  std::vector<EdgeIndex> retained;
  double p = 0.0;
  std::uint64_t seed = 0;
};

inline void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(what) + ": probability outside [0, 1]");
}

/// G_p: edge i is kept iff the i-th uniform draw of Stream(seed) is below p.
inline PercolationSample percolate(const Graph& g, double p, std::uint64_t seed) {
  require_probability(p, "percolate");
  PercolationSample s{{}, p, seed};
  Stream rng(seed);
  for (EdgeIndex i = 0; i < g.size(); ++i) {
    if (rng.bernoulli(p)) s.retained.push_back(i);
  }
  return s;
}

/// G_{p1} ∪ G_{p2} from two independent child streams split_seed(seed, 1), split_seed(seed, 2).
inline PercolationSample union_sample(const Graph& g, double p1, double p2, std::uint64_t seed) {
  require_probability(p1, "union_sample");
  require_probability(p2, "union_sample");
  PercolationSample s{{}, 1.0 - (1.0 - p1) * (1.0 - p2), seed};
  Stream first(split_seed(seed, 1));
  Stream second(split_seed(seed, 2));
  for (EdgeIndex i = 0; i < g.size(); ++i) {
    const bool a = first.bernoulli(p1);
    const bool b = second.bernoulli(p2);
    if (a || b) s.retained.push_back(i);
  }
  return s;
}

inline Graph sample_graph(const Graph& host, const PercolationSample& s) {
  return Graph::spanning_subgraph(host, s.retained);
}

inline std::vector<std::size_t> sample_degrees(const Graph& host, const PercolationSample& s) {
  std::vector<std::size_t> deg(host.order(), 0);
  for (EdgeIndex i : s.retained) {
    ++deg[host.edge(i).u];
    ++deg[host.edge(i).v];
  }
  return deg;
}

struct ThresholdValue {
  double p = 0.0;
  double dp = 0.0;  // d * p, logged against the O(log n) scale
};

/// p = 1 - (phi/n)^{1/d}: expected number of isolated vertices in G_p is phi.
inline ThresholdValue mindeg_threshold_p(double n, double d, double phi) {
  if (!(d >= 1.0)) throw ParameterError("mindeg_threshold_p: need d >= 1");
  if (!(phi > 1.0 && phi < n)) throw ParameterError("mindeg_threshold_p: need 1 < phi < n");
  const double p = -std::expm1(std::log(phi / n) / d);
  return {p, d * p};
}

/// p with (1-p)^d = 1/(n ln d).
inline double construction_threshold_p(double n, double d) {
  if (!(d >= 3.0)) throw ParameterError("construction_threshold_p: need d >= 3");
  if (!(n >= 1.0)) throw ParameterError("construction_threshold_p: need n >= 1");
  return -std::expm1(-std::log(n * std::log(d)) / d);
}

/// (p1, p2) with p2 = 1/d and (1-p1)(1-p2) = 1-p.
inline std::pair<double, double> sprinkle_split(double p, double d) {
  if (!(d >= 2.0)) throw ParameterError("sprinkle_split: need d >= 2");
  require_probability(p, "sprinkle_split");
  const double p2 = 1.0 / d;
  if (p < p2) throw ParameterError("sprinkle_split: need p >= 1/d");
  return {(p - p2) / (1.0 - p2), p2};
}

}  // namespace rgp
