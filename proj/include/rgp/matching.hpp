#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rgp/graph.hpp"
#include "rgp/percolation.hpp"
#include "rgp/rng.hpp"

namespace rgp {

namespace detail {

// Edmonds' blossom algorithm: BFS for augmenting paths from each exposed
// vertex, contracting odd cycles via a base[] relabelling.
class Blossom {
 public:
  explicit Blossom(std::size_t n)
      : n_(n), adj_(n), match_(n, kNone), parent_(n), base_(n), used_(n), in_blossom_(n), lca_mark_(n) {}

  void add_edge(std::size_t a, std::size_t b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  std::vector<std::size_t> solve() {
    // Greedy start; augmentation then only has to fix the remainder.
    for (std::size_t v = 0; v < n_; ++v) {
      if (match_[v] != kNone) continue;
      for (std::size_t w : adj_[v]) {
        if (match_[w] == kNone) {
          match_[v] = w;
          match_[w] = v;
          break;
        }
      }
    }
    for (std::size_t v = 0; v < n_; ++v) {
      if (match_[v] != kNone) continue;
      const std::size_t end = find_path(v);
      for (std::size_t x = end; x != kNone;) {
        const std::size_t px = parent_[x];
        const std::size_t next = match_[px];
        match_[x] = px;
        match_[px] = x;
        x = next;
      }
    }
    return match_;
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  std::size_t lca(std::size_t a, std::size_t b) {
    ++stamp_;
    for (;;) {
      a = base_[a];
      lca_mark_[a] = stamp_;
      if (match_[a] == kNone) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (lca_mark_[b] == stamp_) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(std::size_t v, std::size_t b, std::size_t child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  // Returns the exposed endpoint of an augmenting path from root, or kNone.
  std::size_t find_path(std::size_t root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), kNone);
    for (std::size_t i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::vector<std::size_t> queue{root};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t v = queue[h];
      for (std::size_t to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
          const std::size_t cur = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (match_[to] == kNone) return to;
          used_[match_[to]] = 1;
          queue.push_back(match_[to]);
        }
      }
    }
    return kNone;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> base_;
  std::vector<std::uint8_t> used_;
  std::vector<std::uint8_t> in_blossom_;
  std::vector<std::size_t> lca_mark_;
  std::size_t stamp_ = 0;
};

}  // namespace detail

/// Maximum-cardinality matching of the graph spanned by a simple edge list.
/// The returned edges are oriented u < v and sorted.
inline std::vector<Edge> max_matching(std::span<const Edge> edges) {
  std::vector<Vertex> ids;
  ids.reserve(2 * edges.size());
  for (const auto& e : edges) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const auto local = [&](Vertex x) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };
  detail::Blossom solver(ids.size());
  for (const auto& e : edges) {
    if (e.u == e.v) throw GraphError("max_matching: loop in edge list");
    solver.add_edge(local(e.u), local(e.v));
  }
  const auto mate = solver.solve();
  std::vector<Edge> out;
  for (std::size_t i = 0; i < mate.size(); ++i) {
    if (mate[i] != detail::Blossom::kNone && i < mate[i]) out.push_back({ids[i], ids[mate[i]]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct MatchingStats {
  std::size_t s = 0;   // |F|
  double q = 0.0;      // retention probability delta1 / d
  std::size_t trials = 0;
  std::vector<std::size_t> samples;  // max matching size of F_q per trial
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  std::vector<std::pair<double, std::size_t>> quantiles;  // nearest-rank
  double delta2 = 0.0;  // d * (1st-percentile size) / s
};

/// Nearest-rank quantile of sorted data: element ceil(level * N) - 1.
inline std::size_t nearest_rank(std::span<const std::size_t> sorted, double level) {
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

/// Trial t keeps each edge of F with probability delta1/d using Stream(split_seed(seed, t)).
inline MatchingStats matching_percolation_stats(const Graph& g, std::span<const Edge> f, double delta1,
                                                std::size_t trials, std::uint64_t seed) {
  const auto d = g.regular_degree();
  if (!d || *d == 0) throw ParameterError("matching_percolation_stats: host must be d-regular with d >= 1");
  if (f.empty()) throw ParameterError("matching_percolation_stats: F must be nonempty");
  if (trials == 0) throw ParameterError("matching_percolation_stats: trials must be positive");
  MatchingStats st;
  st.s = f.size();
  st.q = delta1 / *d;
  require_probability(st.q, "matching_percolation_stats");
  st.trials = trials;
  st.samples.reserve(trials);
  std::vector<Edge> kept;
  for (std::size_t t = 0; t < trials; ++t) {
    Stream rng(split_seed(seed, t));
    kept.clear();
    for (const auto& e : f) {
      if (rng.bernoulli(st.q)) kept.push_back(e);
    }
    st.samples.push_back(max_matching(kept).size());
  }
  double sum = 0.0;
  for (auto x : st.samples) sum += static_cast<double>(x);
  st.mean = sum / static_cast<double>(trials);
  double sq = 0.0;
  for (auto x : st.samples) sq += (static_cast<double>(x) - st.mean) * (static_cast<double>(x) - st.mean);
  st.variance = trials > 1 ? sq / static_cast<double>(trials - 1) : 0.0;
  std::vector<std::size_t> sorted = st.samples;
  std::sort(sorted.begin(), sorted.end());
  for (double level : {0.01, 0.05, 0.5, 0.95, 0.99}) st.quantiles.emplace_back(level, nearest_rank(sorted, level));
  st.delta2 = static_cast<double>(*d) * static_cast<double>(nearest_rank(sorted, 0.01)) / static_cast<double>(st.s);
  return st;
}

}  // namespace rgp
