#pragma once

#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "rgp/graph.hpp"

namespace rgp {

/// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns true when a and b were in different sets.
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t component_size(Vertex x) { return size_[find(x)]; }
  std::size_t components() const { return components_; }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// BFS hop distances from `source`; unreachable vertices get kUnreachable.
inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

/// Shortest-path hop count, or nullopt when v is unreachable from u.
inline std::optional<std::size_t> graph_distance(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.order() || v >= g.order()) throw GraphError("graph_distance: vertex out of range");
  if (u == v) return 0;
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::vector<Vertex> queue{u};
  dist[u] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] != kUnreachable) continue;
      dist[y] = dist[x] + 1;
      if (y == v) return dist[y];
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

/// Component label per vertex (labels are 0.. in order of least member).
inline std::vector<std::size_t> component_labels(const Graph& g, std::size_t* count = nullptr) {
  std::vector<std::size_t> label(g.order(), kUnreachable);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (label[s] != kUnreachable) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (label[y] == kUnreachable) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

inline bool is_connected(const Graph& g) {
  if (g.order() <= 1) return true;
  std::size_t count = 0;
  component_labels(g, &count);
  return count == 1;
}

/// Number of edges with exactly one endpoint in `u`.
inline std::size_t edge_boundary(const Graph& g, const VertexSet& u) {
  if (!u.empty() && u.ids().back() >= g.order()) throw GraphError("edge_boundary: vertex out of range");
  std::size_t count = 0;
  for (Vertex x : u) {
    for (Vertex y : g.neighbors(x)) {
      if (!u.contains(y)) ++count;
    }
  }
  return count;
}

/// Number of edges with both endpoints in `u`.
inline std::size_t edges_inside(const Graph& g, const VertexSet& u) {
  std::size_t twice = 0;
  for (Vertex x : u) {
    for (Vertex y : g.neighbors(x)) {
      if (u.contains(y)) ++twice;
    }
  }
  return twice / 2;
}

/// V \ U.
inline VertexSet complement(const Graph& g, const VertexSet& u) {
  std::vector<Vertex> out;
  out.reserve(g.order() - u.size());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!u.contains(v)) out.push_back(v);
  }
  return VertexSet::of(std::move(out), g.order());
}

/// Subgraph induced on `keep`, relabelled to [0, |keep|) in increasing id order.
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<Vertex> index(g.order(), std::numeric_limits<Vertex>::max());
  Vertex next = 0;
  for (Vertex v : keep) index[v] = next++;
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (index[e.u] != std::numeric_limits<Vertex>::max() && index[e.v] != std::numeric_limits<Vertex>::max()) {
      edges.push_back({index[e.u], index[e.v]});
    }
  }
  return Graph::from_edges(keep.size(), std::move(edges));
}

}  // namespace rgp
