#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rgp {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint32_t;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unordered vertex pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Sorted list of distinct vertex ids.
class VertexSet {
 public:
  VertexSet() = default;

  /// Sorts and validates; throws GraphError on duplicates or ids >= n.
  static VertexSet of(std::vector<Vertex> ids, std::size_t n) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      throw GraphError("vertex set contains a duplicate id");
    }
    if (!ids.empty() && ids.back() >= n) {
      throw GraphError("vertex id " + std::to_string(ids.back()) + " out of range [0, " + std::to_string(n) + ")");
    }
    VertexSet s;
    s.ids_ = std::move(ids);
    return s;
  }

  std::span<const Vertex> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  bool operator==(const VertexSet&) const = default;
  auto operator<=>(const VertexSet&) const = default;

 private:
  std::vector<Vertex> ids_;
};

/// Q^dim with vertex i adjacent to i ^ (1 << b).
struct HypercubeFamily {
  unsigned dim = 0;
  bool operator==(const HypercubeFamily&) const = default;
};

/// Hubs occupy [0, hubs); the gadget of hub h is [hubs + h(d+1), hubs + (h+1)(d+1)).
struct ConstructionLayout {
  std::size_t hubs = 0;
  unsigned d = 0;
  unsigned d1 = 0;

  unsigned matching_size() const { return (d - d1) / 2; }
  Vertex gadget_vertex(std::size_t hub, unsigned local) const {
    return static_cast<Vertex>(hubs + hub * (d + 1) + local);
  }
  bool operator==(const ConstructionLayout&) const = default;
};

using Family = std::variant<std::monostate, HypercubeFamily, ConstructionLayout>;

/// Immutable simple undirected graph on vertices [0, n).
///
/// Edges are kept in lexicographic order; an edge's position in that order is
/// its canonical EdgeIndex. Adjacency is CSR with sorted neighbor lists and a
/// parallel array of incident edge indices.
class Graph {
 public:
  Graph() = default;

  /// Validating constructor. Edges may be given in any order and orientation;
  /// loops, duplicates and out-of-range endpoints throw GraphError.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& e : edges) {
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v >= n) throw GraphError("edge endpoint " + std::to_string(e.v) + " out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
      throw GraphError("duplicate edge " + std::to_string(it->u) + " " + std::to_string(it->v));
    }
    return Graph(n, std::move(edges));
  }

  /// Subgraph of `host` on all of its vertices keeping the listed edges.
  /// `kept` may be unsorted but must hold distinct valid indices.
  static Graph spanning_subgraph(const Graph& host, std::span<const EdgeIndex> kept) {
    std::vector<EdgeIndex> idx(kept.begin(), kept.end());
    std::sort(idx.begin(), idx.end());
    std::vector<Edge> edges;
    edges.reserve(idx.size());
    for (auto i : idx) edges.push_back(host.edges_[i]);
    return Graph(host.n_, std::move(edges));
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex i) const { return edges_[i]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::span<const EdgeIndex> incident_edges(Vertex v) const {
    return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool adjacent(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Index of edge {u, v}, if present.
  std::optional<EdgeIndex> find_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
  }

  /// d when every vertex has degree d.
  std::optional<unsigned> regular_degree() const { return regular_; }
  std::size_t min_degree() const { return min_degree_; }
  std::size_t max_degree() const { return max_degree_; }

  const Family& family() const { return family_; }
  Graph with_family(Family f) const& {
    Graph g = *this;
    g.family_ = std::move(f);
    return g;
  }
  Graph with_family(Family f) && {
    family_ = std::move(f);
    return std::move(*this);
  }

  /// Structural equality; family metadata is ignored.
  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  // Trusts that `edges` is sorted, oriented u < v, duplicate-free and in range.
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::vector<std::size_t> deg(n_, 0);
    for (const auto& e : edges_) {
      ++deg[e.u];
      ++deg[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    adj_.resize(2 * edges_.size());
    adj_edge_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Lexicographic edge order fills each list in increasing neighbor order:
    // for vertex w, neighbors u < w arrive via (u, w) sorted by u, and all of
    // them precede the (w, v) edges, which arrive sorted by v.
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto [u, v] = edges_[i];
      adj_[cursor[u]] = v;
      adj_edge_[cursor[u]++] = static_cast<EdgeIndex>(i);
      adj_[cursor[v]] = u;
      adj_edge_[cursor[v]++] = static_cast<EdgeIndex>(i);
    }
    if (n_ > 0) {
      min_degree_ = *std::min_element(deg.begin(), deg.end());
      max_degree_ = *std::max_element(deg.begin(), deg.end());
      if (min_degree_ == max_degree_) regular_ = static_cast<unsigned>(min_degree_);
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<EdgeIndex> adj_edge_;
  std::optional<unsigned> regular_;
  std::size_t min_degree_ = 0;
  std::size_t max_degree_ = 0;
  Family family_;
};

}  // namespace rgp
