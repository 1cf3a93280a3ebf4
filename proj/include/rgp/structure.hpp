#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "rgp/connectivity.hpp"
#include "rgp/graph.hpp"
#include "rgp/percolation.hpp"
#include "rgp/traversal.hpp"

namespace rgp {

enum class CoreFailure { none, no_core, multiple_big_components, core_not_k_connected, outsider_degree, outsider_distance };

inline const char* to_string(CoreFailure f) {
  switch (f) {
    case CoreFailure::none: return "none";
    case CoreFailure::no_core: return "no_core";
    case CoreFailure::multiple_big_components: return "multiple_big_components";
    case CoreFailure::core_not_k_connected: return "core_not_k_connected";
    case CoreFailure::outsider_degree: return "outsider_degree";
    case CoreFailure::outsider_distance: return "outsider_distance";
  }
  return "?";
}

struct CoreVerdict {
  bool pass = false;
  VertexSet core;
  VertexSet outsiders;
  std::size_t max_outsider_degree = 0;
  std::size_t min_pairwise_outsider_distance = kUnreachable;  // kUnreachable when < 2 outsiders or none reachable
  CoreFailure failure = CoreFailure::none;
};

namespace detail {

// Least host distance between two distinct members of `sources`, by
// multi-source BFS: the closest pair meets across an edge joining two regions.
inline std::size_t min_pairwise_distance(const Graph& g, std::span<const Vertex> sources) {
  if (sources.size() < 2) return kUnreachable;
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::vector<Vertex> owner(g.order(), 0);
  std::vector<Vertex> queue(sources.begin(), sources.end());
  for (Vertex s : sources) {
    dist[s] = 0;
    owner[s] = s;
  }
  std::size_t best = kUnreachable;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Vertex x = queue[h];
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        owner[y] = owner[x];
        queue.push_back(y);
      } else if (owner[y] != owner[x]) {
        best = std::min(best, dist[x] + dist[y] + 1);
      }
    }
  }
  return best;
}

}  // namespace detail

/// Core/outsider split of a sample: outsiders are the vertices of sample
/// degree <= k-1, the core is everything else. Passes when the core is
/// nonempty and induces a k-connected sample subgraph, and no two outsiders
/// are adjacent in the host.
inline CoreVerdict core_structure_check(const Graph& host, const PercolationSample& sample, std::size_t k) {
  if (k == 0) throw ParameterError("core_structure_check: k must be positive");
  const auto deg = sample_degrees(host, sample);
  std::vector<Vertex> low;
  std::vector<Vertex> high;
  for (Vertex v = 0; v < host.order(); ++v) (deg[v] + 1 <= k ? low : high).push_back(v);

  CoreVerdict out;
  out.core = VertexSet::of(high, host.order());
  out.outsiders = VertexSet::of(low, host.order());
  for (Vertex v : low) out.max_outsider_degree = std::max(out.max_outsider_degree, deg[v]);
  out.min_pairwise_outsider_distance = detail::min_pairwise_distance(host, low);

  if (high.empty()) {
    out.failure = CoreFailure::no_core;
    return out;
  }
  const Graph core_graph = induced_subgraph(sample_graph(host, sample), out.core);
  if (!is_connected(core_graph)) {
    out.failure = CoreFailure::multiple_big_components;
  } else if (!is_k_connected(core_graph, k)) {
    out.failure = CoreFailure::core_not_k_connected;
  } else if (out.max_outsider_degree + 1 > k && !low.empty()) {
    out.failure = CoreFailure::outsider_degree;
  } else if (out.min_pairwise_outsider_distance < 2) {
    out.failure = CoreFailure::outsider_distance;
  }
  out.pass = out.failure == CoreFailure::none;
  return out;
}

struct DistanceVerdict {
  bool pass = true;
  std::optional<Edge> offending;  // lexicographically least host edge joining two low-degree vertices
  std::size_t low_degree_count = 0;
};

/// Vertices of sample degree < k must be pairwise non-adjacent in the host.
inline DistanceVerdict low_degree_distance_check(const Graph& host, const PercolationSample& sample, std::size_t k) {
  const auto deg = sample_degrees(host, sample);
  DistanceVerdict out;
  for (Vertex v = 0; v < host.order(); ++v) out.low_degree_count += deg[v] < k;
  for (const auto& e : host.edges()) {
    if (deg[e.u] < k && deg[e.v] < k) {
      out.pass = false;
      out.offending = e;
      break;
    }
  }
  return out;
}

struct GapReport {
  std::map<std::size_t, std::size_t> histogram;  // component size -> count, over V \ K
  std::vector<VertexSet> violations;              // components with size in [2, limit]
  VertexSet removed;
  double limit = 0.0;                             // C d ln n
  bool pass() const { return violations.empty(); }
};

/// Components of the sample with K deleted; flags any whose order lies in [2, C d ln n].
inline GapReport component_gap_check(const Graph& host, const PercolationSample& sample, const VertexSet& removed,
                                     double big_c, std::size_t k) {
  if (removed.size() > k) throw ParameterError("component_gap_check: |K| exceeds k");
  if (!(big_c > 0.0)) throw ParameterError("component_gap_check: C must be positive");
  if (!removed.empty() && removed.ids().back() >= host.order()) throw GraphError("component_gap_check: K out of range");
  const double d = static_cast<double>(host.regular_degree().value_or(static_cast<unsigned>(host.max_degree())));
  GapReport out;
  out.removed = removed;
  out.limit = big_c * d * std::log(static_cast<double>(host.order()));

  std::vector<std::uint8_t> gone(host.order(), 0);
  for (Vertex v : removed) gone[v] = 1;
  UnionFind uf(host.order());
  for (EdgeIndex i : sample.retained) {
    const auto& e = host.edge(i);
    if (!gone[e.u] && !gone[e.v]) uf.unite(e.u, e.v);
  }
  std::map<Vertex, std::vector<Vertex>> members;
  for (Vertex v = 0; v < host.order(); ++v) {
    if (!gone[v]) members[uf.find(v)].push_back(v);
  }
  std::vector<std::vector<Vertex>> bad;
  for (auto& [root, vs] : members) {
    ++out.histogram[vs.size()];
    if (vs.size() >= 2 && static_cast<double>(vs.size()) <= out.limit) bad.push_back(std::move(vs));
  }
  std::sort(bad.begin(), bad.end());
  for (auto& vs : bad) out.violations.push_back(VertexSet::of(std::move(vs), host.order()));
  return out;
}

struct RootedTreeCount {
  std::size_t count = 0;
  double bound = 0.0;  // (e d)^{m-1}
};

inline constexpr std::size_t kMaxTreeSize = 6;

/// Number of subtrees of g with m vertices that contain v, by growing trees
/// one pendant edge at a time from {v} and deduplicating edge sets.
inline RootedTreeCount count_rooted_trees(const Graph& g, Vertex v, std::size_t m, std::size_t max_states = 20'000'000) {
  if (m == 0 || m > kMaxTreeSize) throw ParameterError("count_rooted_trees: m must be in [1, 6]");
  if (v >= g.order()) throw GraphError("count_rooted_trees: vertex out of range");
  const double d = static_cast<double>(g.regular_degree().value_or(static_cast<unsigned>(g.max_degree())));
  RootedTreeCount out;
  out.bound = std::pow(std::numbers::e * d, static_cast<double>(m - 1));

  // A tree is its sorted edge-index list; its vertex set is derived on demand.
  std::set<std::vector<EdgeIndex>> level;
  level.insert(std::vector<EdgeIndex>{});
  std::size_t states = 1;
  std::vector<Vertex> verts;
  for (std::size_t size = 1; size < m; ++size) {
    std::set<std::vector<EdgeIndex>> next;
    for (const auto& tree : level) {
      verts.assign(1, v);
      for (EdgeIndex i : tree) {
        verts.push_back(g.edge(i).u);
        verts.push_back(g.edge(i).v);
      }
      std::sort(verts.begin(), verts.end());
      verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
      for (Vertex x : verts) {
        const auto nb = g.neighbors(x);
        const auto inc = g.incident_edges(x);
        for (std::size_t j = 0; j < nb.size(); ++j) {
          if (std::binary_search(verts.begin(), verts.end(), nb[j])) continue;
          auto grown = tree;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), inc[j]), inc[j]);
          if (next.insert(std::move(grown)).second && ++states > max_states) {
            throw ParameterError("count_rooted_trees: state budget exceeded");
          }
        }
      }
    }
    level = std::move(next);
  }
  out.count = level.size();
  return out;
}

}  // namespace rgp
