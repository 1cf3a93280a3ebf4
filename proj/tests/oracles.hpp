#pragma once

// Independent brute-force reference implementations used only by the tests.
// They share no code paths with the library beyond the Graph container.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "rgp/graph.hpp"

namespace oracle {

using rgp::Edge;
using rgp::Graph;
using rgp::Vertex;

// Adjacency matrix as bitmasks (n <= 64).
inline std::vector<std::uint64_t> masks(const Graph& g) {
  std::vector<std::uint64_t> m(g.order(), 0);
  for (const auto& e : g.edges()) {
    m[e.u] |= std::uint64_t{1} << e.v;
    m[e.v] |= std::uint64_t{1} << e.u;
  }
  return m;
}

// Connectivity of the subgraph induced on `alive` (bitmask).
inline bool connected_on(const std::vector<std::uint64_t>& adj, std::uint64_t alive) {
  if (alive == 0) return true;
  std::uint64_t seen = alive & (~alive + 1);
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
    next &= alive & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == alive;
}

// Textbook definition: n >= k + 1 and no set of fewer than k vertices disconnects.
inline bool k_connected(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (n < k + 1) return false;
  const auto adj = masks(g);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::uint64_t cut = 0; cut <= all; ++cut) {
    if (static_cast<std::size_t>(std::popcount(cut)) >= k) continue;
    if (!connected_on(adj, all & ~cut)) return false;
  }
  return true;
}

// Maximum matching by exhaustive search over edge subsets.
inline std::size_t max_matching_size(const std::vector<Edge>& edges) {
  std::size_t best = 0;
  const std::size_t m = edges.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    std::set<Vertex> used;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(s >> i & 1)) continue;
      ok = used.insert(edges[i].u).second && used.insert(edges[i].v).second;
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(s)));
  }
  return best;
}

// Subtrees on m vertices containing v: for each vertex set S of size m holding v
// with G[S] connected, count spanning trees of G[S] by the matrix-tree theorem.
inline double rooted_tree_count(const Graph& g, Vertex v, std::size_t m) {
  const std::size_t n = g.order();
  const auto adj = masks(g);
  double total = 0.0;
  std::vector<Vertex> others;
  for (Vertex x = 0; x < n; ++x) {
    if (x != v) others.push_back(x);
  }
  std::vector<bool> pick(others.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m - 1), true);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<Vertex> s{v};
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (pick[i]) s.push_back(others[i]);
    }
    std::uint64_t alive = 0;
    for (Vertex x : s) alive |= std::uint64_t{1} << x;
    if (!connected_on(adj, alive)) continue;
    if (m == 1) {
      total += 1;
      continue;
    }
    // Reduced Laplacian (drop row/col 0), determinant by Gaussian elimination.
    const std::size_t r = m - 1;
    std::vector<std::vector<double>> lap(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 1; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        if (adj[s[i]] >> s[j] & 1) {
          lap[i - 1][i - 1] += 1;
          if (j > 0) lap[i - 1][j - 1] -= 1;
        }
      }
    }
    double det = 1.0;
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t piv = c;
      for (std::size_t i = c + 1; i < r; ++i) {
        if (std::abs(lap[i][c]) > std::abs(lap[piv][c])) piv = i;
      }
      if (std::abs(lap[piv][c]) < 1e-12) {
        det = 0.0;
        break;
      }
      if (piv != c) {
        std::swap(lap[piv], lap[c]);
        det = -det;
      }
      det *= lap[c][c];
      for (std::size_t i = c + 1; i < r; ++i) {
        const double f = lap[i][c] / lap[c][c];
        for (std::size_t j = c; j < r; ++j) lap[i][j] -= f * lap[c][j];
      }
    }
    total += std::round(det);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return total;
}

// Erdos-Renyi graph for randomized cross-checks (test-local RNG).
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

// Edge boundary straight from the definition.
inline std::size_t boundary(const Graph& g, const std::vector<Vertex>& u) {
  std::vector<bool> in(g.order(), false);
  for (Vertex x : u) in[x] = true;
  std::size_t c = 0;
  for (const auto& e : g.edges()) c += in[e.u] != in[e.v];
  return c;
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, static_cast<Vertex>((i + 1) % 5)});
    e.push_back({i, static_cast<Vertex>(i + 5)});
    e.push_back({static_cast<Vertex>(i + 5), static_cast<Vertex>((i + 2) % 5 + 5)});
  }
  return Graph::from_edges(10, std::move(e));
}

// Clopper-Pearson bounds by bisection on the binomial tail (log-space pmf).
inline double binom_cdf(std::size_t k, std::size_t n, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double lp = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(p) +
                      (n - i) * std::log1p(-p);
    s += std::exp(lp);
  }
  return s;
}

inline std::pair<double, double> clopper_pearson(std::size_t x, std::size_t n, double alpha = 0.05) {
  auto solve = [](auto f) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };
  // lower: P(X >= x | p) = alpha/2; upper: P(X <= x | p) = alpha/2
  const double lo = x == 0 ? 0.0 : solve([&](double p) { return 1.0 - binom_cdf(x - 1, n, p) >= alpha / 2; });
  const double hi = x == n ? 1.0 : solve([&](double p) { return binom_cdf(x, n, p) <= alpha / 2; });
  return {lo, hi};
}

// Two-sample chi-square statistic for equal sample sizes; df = (nonempty cells) - 1.
inline std::pair<double, std::size_t> chi2_two_sample(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = static_cast<double>(a[i] + b[i]);
    if (s == 0) continue;
    const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    stat += diff * diff / s;
    ++cells;
  }
  return {stat, cells - 1};
}

// scipy.stats.chi2.ppf(0.999, 63)
inline constexpr double kChi2Df63Alpha1e3 = 103.44237731987324;

}  // namespace oracle
