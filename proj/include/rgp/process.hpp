#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rgp/connectivity.hpp"
#include "rgp/graph.hpp"
#include "rgp/rng.hpp"
#include "rgp/traversal.hpp"

namespace rgp {

/// Edge-arrival order of the random graph process; G(i) holds order[0..i).
struct ProcessTrace {
  std::vector<EdgeIndex> order;
  std::uint64_t seed = 0;
};

/// Uniform permutation of the host's edges (Fisher-Yates on Stream(seed)).
inline ProcessTrace process_permutation(const Graph& g, std::uint64_t seed) {
  if (g.size() == 0) throw GraphError("process_permutation: host has no edges");
  ProcessTrace t;
  t.seed = seed;
  t.order.resize(g.size());
  std::iota(t.order.begin(), t.order.end(), EdgeIndex{0});
  Stream rng(seed);
  rng.shuffle(t.order.begin(), t.order.end());
  return t;
}

inline constexpr std::size_t kExhaustiveEdgeLimit = 8;

/// Calls fn(trace) for all m! orderings in lexicographic order; m <= 8.
template <typename Fn>
void for_each_ordering(const Graph& g, Fn&& fn) {
  if (g.size() == 0 || g.size() > kExhaustiveEdgeLimit) {
    throw GraphError("exhaustive ordering needs 1 <= m <= 8");
  }
  ProcessTrace t;
  t.order.resize(g.size());
  std::iota(t.order.begin(), t.order.end(), EdgeIndex{0});
  do {
    fn(static_cast<const ProcessTrace&>(t));
  } while (std::next_permutation(t.order.begin(), t.order.end()));
}

/// The graph G(i) of the first i arrivals.
inline Graph prefix_graph(const Graph& host, const ProcessTrace& t, std::size_t i) {
  return Graph::spanning_subgraph(host, std::span<const EdgeIndex>(t.order.data(), i));
}

/// Sentinel for a property that G(m) itself lacks.
inline std::size_t never_reached(const Graph& host) { return host.size() + 1; }

/// Least i with min degree of G(i) >= k.
inline std::size_t hitting_time_min_degree(const Graph& host, const ProcessTrace& t, std::size_t k) {
  if (k == 0) return 0;
  if (host.min_degree() < k || host.order() == 0) return never_reached(host);
  std::vector<std::size_t> deg(host.order(), 0);
  std::size_t deficient = host.order();
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    const auto& e = host.edge(t.order[i]);
    if (++deg[e.u] == k) --deficient;
    if (++deg[e.v] == k) --deficient;
    if (deficient == 0) return i + 1;
  }
  return never_reached(host);
}

/// Least i with G(i) connected (incremental union-find).
inline std::size_t hitting_time_connectivity(const Graph& host, const ProcessTrace& t) {
  if (host.order() <= 1) return 0;
  UnionFind uf(host.order());
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    const auto& e = host.edge(t.order[i]);
    if (uf.unite(e.u, e.v) && uf.components() == 1) return i + 1;
  }
  return never_reached(host);
}

/// Least i with G(i) k-connected. k-connectivity is monotone under edge
/// addition, so the answer is found by binary search above
/// max(tau_k, n - 1, ceil(kn/2)); the lower end is probed first since the
/// two hitting times usually coincide.
inline std::size_t hitting_time_k_connectivity(const Graph& host, const ProcessTrace& t, std::size_t k,
                                               bool host_checked = false) {
  if (!host_checked && !is_k_connected(host, k)) return never_reached(host);
  const std::size_t n = host.order();
  std::size_t lo = hitting_time_min_degree(host, t, k);
  lo = std::max(lo, n > 0 ? n - 1 : 0);
  lo = std::max(lo, (k * n + 1) / 2);
  const auto passes = [&](std::size_t i) { return is_k_connected(prefix_graph(host, t, i), k); };
  if (passes(lo)) return lo;
  std::size_t bad = lo;
  std::size_t good = host.size();
  while (good - bad > 1) {
    const std::size_t mid = bad + (good - bad) / 2;
    if (passes(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

struct HittingTimes {
  std::size_t k = 1;
  std::size_t tau_k = 0;
  std::size_t tau_kc = 0;
};

inline HittingTimes hitting_times(const Graph& host, const ProcessTrace& t, std::size_t k, bool host_checked = false) {
  return {k, hitting_time_min_degree(host, t, k), hitting_time_k_connectivity(host, t, k, host_checked)};
}

// Text record for replay: "seed <s>\nm <m>\n<e_0> <e_1> ... <e_{m-1}>\n".
inline std::string write_trace(const ProcessTrace& t) {
  std::string out = "seed " + std::to_string(t.seed) + "\nm " + std::to_string(t.order.size()) + "\n";
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(t.order[i]);
  }
  out += '\n';
  return out;
}

inline ProcessTrace read_trace(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  ProcessTrace t;
  std::size_t m = 0;
  if (!(in >> tag) || tag != "seed" || !(in >> t.seed)) throw GraphError("trace: malformed seed line");
  if (!(in >> tag) || tag != "m" || !(in >> m)) throw GraphError("trace: malformed size line");
  t.order.resize(m);
  for (auto& e : t.order) {
    if (!(in >> e)) throw GraphError("trace: too few entries");
  }
  if (in >> tag) throw GraphError("trace: trailing data");
  std::vector<bool> seen(m, false);
  for (auto e : t.order) {
    if (e >= m || seen[e]) throw GraphError("trace: not a permutation");
    seen[e] = true;
  }
  return t;
}

}  // namespace rgp
