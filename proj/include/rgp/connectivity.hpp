#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rgp/graph.hpp"
#include "rgp/traversal.hpp"

namespace rgp {

/// True when g is connected, has at least three vertices and no cut vertex.
inline bool is_biconnected(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 3) return false;
  std::vector<std::size_t> disc(n, 0);
  std::vector<std::size_t> low(n, 0);
  std::vector<Vertex> parent(n, 0);
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::size_t time = 0;
  disc[0] = low[0] = ++time;
  stack.push_back({0, 0});
  std::size_t root_children = 0;
  while (!stack.empty()) {
    auto& top = stack.back();
    const Vertex v = top.v;
    const auto nb = g.neighbors(v);
    if (top.next < nb.size()) {
      const Vertex w = nb[top.next++];
      if (disc[w] == 0) {
        parent[w] = v;
        disc[w] = low[w] = ++time;
        if (v == 0) ++root_children;
        stack.push_back({w, 0});
      } else if (w != parent[v] || v == 0) {
        low[v] = std::min(low[v], disc[w]);
      }
      continue;
    }
    stack.pop_back();
    if (stack.empty()) break;
    const Vertex u = stack.back().v;
    low[u] = std::min(low[u], low[v]);
    if (u != 0 && low[v] >= disc[u]) return false;  // u separates v's subtree
  }
  if (time != n) return false;
  return root_children == 1;
}

namespace detail {

// Unit-capacity vertex-split network: node 2x is x_in, 2x+1 is x_out.
class SplitNetwork {
 public:
  explicit SplitNetwork(const Graph& g) : head_(2 * g.order() + 1, 0) {
    const std::size_t nodes = 2 * g.order();
    std::vector<std::size_t> count(nodes, 0);
    const auto tally = [&](std::size_t a, std::size_t b) {
      ++count[a];
      ++count[b];
    };
    for (Vertex x = 0; x < g.order(); ++x) tally(2 * x, 2 * x + 1);
    for (const auto& e : g.edges()) {
      tally(2 * e.u + 1, 2 * e.v);
      tally(2 * e.v + 1, 2 * e.u);
    }
    for (std::size_t i = 0; i < nodes; ++i) head_[i + 1] = head_[i] + count[i];
    to_.resize(head_[nodes]);
    rev_.resize(head_[nodes]);
    cap_.resize(head_[nodes]);
    std::vector<std::size_t> fill(head_.begin(), head_.end() - 1);
    const auto arc = [&](std::size_t a, std::size_t b) {
      const std::size_t fa = fill[a]++;
      const std::size_t fb = fill[b]++;
      to_[fa] = static_cast<std::uint32_t>(b);
      cap_[fa] = 1;
      rev_[fa] = static_cast<std::uint32_t>(fb);
      to_[fb] = static_cast<std::uint32_t>(a);
      cap_[fb] = 0;
      rev_[fb] = static_cast<std::uint32_t>(fa);
    };
    for (Vertex x = 0; x < g.order(); ++x) arc(2 * x, 2 * x + 1);
    for (const auto& e : g.edges()) {
      arc(2 * e.u + 1, 2 * e.v);
      arc(2 * e.v + 1, 2 * e.u);
    }
    base_cap_ = cap_;
    pred_.assign(nodes, kNone);
  }

  /// Number of internally vertex-disjoint s-t paths, stopping once `cap` are found.
  std::size_t disjoint_paths(Vertex s, Vertex t, std::size_t cap) {
    cap_ = base_cap_;
    const std::size_t source = 2 * s + 1;
    const std::size_t sink = 2 * t;
    std::size_t flow = 0;
    std::vector<std::uint32_t> queue;
    while (flow < cap) {
      std::fill(pred_.begin(), pred_.end(), kNone);
      queue.clear();
      queue.push_back(static_cast<std::uint32_t>(source));
      pred_[source] = kRoot;
      bool found = false;
      for (std::size_t h = 0; h < queue.size() && !found; ++h) {
        const std::size_t x = queue[h];
        for (std::size_t a = head_[x]; a < head_[x + 1]; ++a) {
          const std::size_t y = to_[a];
          if (cap_[a] == 0 || pred_[y] != kNone) continue;
          pred_[y] = static_cast<std::uint32_t>(a);
          if (y == sink) {
            found = true;
            break;
          }
          queue.push_back(static_cast<std::uint32_t>(y));
        }
      }
      if (!found) break;
      for (std::size_t y = sink; y != source;) {
        const std::size_t a = pred_[y];
        --cap_[a];
        ++cap_[rev_[a]];
        y = to_[rev_[a]];
      }
      ++flow;
    }
    return flow;
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  static constexpr std::uint32_t kRoot = 0xfffffffeu;
  std::vector<std::size_t> head_;
  std::vector<std::uint32_t> to_;
  std::vector<std::uint32_t> rev_;
  std::vector<std::uint8_t> cap_;
  std::vector<std::uint8_t> base_cap_;
  std::vector<std::uint32_t> pred_;
};

}  // namespace detail

/// k-connectivity by capped max-flow. With v_1..v_k the k least vertices,
/// g is k-connected iff n >= k+1 and every v_i has >= k vertex-disjoint paths
/// to each non-neighbour: a separator of size < k misses some v_i, and v_i is
/// then cut off from some vertex on the far side, which is not its neighbour.
inline bool is_k_connected_flow(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (k == 0) return true;
  if (n < k + 1 || g.min_degree() < k) return false;
  detail::SplitNetwork net(g);
  for (Vertex v = 0; v < k; ++v) {
    for (Vertex u = 0; u < n; ++u) {
      if (u == v || g.adjacent(v, u)) continue;
      if (net.disjoint_paths(v, u, k) < k) return false;
    }
  }
  return true;
}

/// n >= k+1 and no set of fewer than k vertices disconnects g.
/// k = 1 and k = 2 use linear-time traversals; larger k uses is_k_connected_flow.
inline bool is_k_connected(const Graph& g, std::size_t k) {
  if (k == 0) return true;
  if (g.order() < k + 1 || g.min_degree() < k) return false;
  if (k == 1) return is_connected(g);
  if (k == 2) return is_biconnected(g);
  return is_k_connected_flow(g, k);
}

inline constexpr std::size_t kSmallConnectivityLimit = 14;

/// Exact vertex connectivity by removing every vertex subset; n <= 14.
inline std::size_t vertex_connectivity_small(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kSmallConnectivityLimit) throw GraphError("vertex_connectivity_small: n exceeds 14");
  if (n <= 1) return 0;
  std::vector<std::uint32_t> nbr(n, 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
  if (g.size() == n * (n - 1) / 2) return n - 1;

  const auto connected_without = [&](std::uint32_t removed) {
    const std::uint32_t alive = all & ~removed;
    std::uint32_t seen = alive & (~alive + 1);  // lowest alive vertex
    std::uint32_t frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr[std::countr_zero(f)];
      next &= alive & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == alive;
  };

  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    by_size[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    if (mask == all) break;
  }
  for (std::size_t s = 0; s + 2 <= n; ++s) {
    for (std::uint32_t removed : by_size[s]) {
      if (!connected_without(removed)) return s;
    }
  }
  return n - 1;
}

}  // namespace rgp
