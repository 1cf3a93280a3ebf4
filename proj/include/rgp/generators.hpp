#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "rgp/graph.hpp"
#include "rgp/rng.hpp"
#include "rgp/spectral.hpp"

namespace rgp {

inline Graph hypercube(unsigned dim) {
  if (dim == 0 || dim > 26) throw GraphError("hypercube dimension must be in [1, 26]");
  const std::size_t n = std::size_t{1} << dim;
  std::vector<Edge> edges;
  edges.reserve(n * dim / 2);
  for (std::size_t v = 0; v < n; ++v) {
    for (unsigned b = 0; b < dim; ++b) {
      const std::size_t w = v ^ (std::size_t{1} << b);
      if (v < w) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(w)});
    }
  }
  return Graph::from_edges(n, std::move(edges)).with_family(HypercubeFamily{dim});
}

inline Graph complete_graph(std::size_t n) {
  if (n == 0) throw GraphError("complete graph needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, std::move(edges));
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
  return Graph::from_edges(n, std::move(edges));
}

inline Graph path_graph(std::size_t n) {
  if (n == 0) throw GraphError("path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, std::move(edges));
}

inline constexpr std::size_t kMaxRegularRestarts = 10'000;

/// Random d-regular simple graph by Steger-Wormald pairing: shuffle the
/// remaining half-edges, pair them up, keep every pair that is neither a
/// loop nor a repeat, and retry the leftovers; restart from scratch when the
/// leftovers admit no valid pair. Deterministic in `seed`.
inline Graph random_regular(std::size_t n, unsigned d, std::uint64_t seed) {
  if (n == 0 || d == 0) throw GraphError("random_regular: n and d must be positive");
  if (d >= n) throw GraphError("random_regular: need d < n");
  if ((n * d) % 2 != 0) throw GraphError("random_regular: n*d must be even");

  Stream rng(seed);
  const auto key = [](Vertex a, Vertex b) { return (std::uint64_t{a} << 32) | b; };

  for (std::size_t attempt = 0; attempt < kMaxRegularRestarts; ++attempt) {
    std::unordered_set<std::uint64_t> present;
    present.reserve(n * d);
    std::vector<Edge> edges;
    edges.reserve(n * d / 2);

    std::vector<Vertex> stubs;
    stubs.reserve(n * d);
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);

    std::vector<std::uint32_t> leftover(n, 0);
    bool failed = false;
    while (!stubs.empty()) {
      rng.shuffle(stubs.begin(), stubs.end());
      std::vector<Vertex> touched;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        Vertex a = stubs[i];
        Vertex b = stubs[i + 1];
        if (a > b) std::swap(a, b);
        if (a != b && present.insert(key(a, b)).second) {
          edges.push_back({a, b});
        } else {
          for (Vertex x : {a, b}) {
            if (leftover[x]++ == 0) touched.push_back(x);
          }
        }
      }
      if (touched.empty()) break;
      std::sort(touched.begin(), touched.end());
      bool suitable = false;
      for (std::size_t i = 0; i < touched.size() && !suitable; ++i) {
        for (std::size_t j = i + 1; j < touched.size(); ++j) {
          if (!present.contains(key(touched[i], touched[j]))) {
            suitable = true;
            break;
          }
        }
      }
      if (!suitable) {
        failed = true;
        break;
      }
      stubs.clear();
      for (Vertex x : touched) {
        stubs.insert(stubs.end(), leftover[x], x);
        leftover[x] = 0;
      }
    }
    if (!failed) return Graph::from_edges(n, std::move(edges));
  }
  throw GraphError("random_regular: generation failed after " + std::to_string(kMaxRegularRestarts) + " restarts");
}

inline constexpr std::size_t kProductVertexCap = std::size_t{1} << 24;

/// Cartesian product; tuple (x_0, ..., x_{r-1}) has index sum x_i * stride_i
/// with the last factor varying fastest.
inline Graph cartesian_product(std::span<const Graph> factors, std::size_t vertex_cap = kProductVertexCap) {
  if (factors.empty()) throw GraphError("cartesian_product: empty factor list");
  std::vector<std::size_t> stride(factors.size(), 1);
  std::size_t n = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    stride[i] = n;
    const auto fo = factors[i].order();
    if (fo == 0 || n > vertex_cap / fo) throw GraphError("cartesian_product: vertex count exceeds cap");
    n *= fo;
  }
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto x = static_cast<Vertex>((v / stride[i]) % factors[i].order());
      for (Vertex y : factors[i].neighbors(x)) {
        if (y > x) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + (y - x) * stride[i])});
      }
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

struct HypercubeSpec {
  unsigned dim = 0;
};
struct CompleteSpec {
  std::size_t n = 0;
};
struct CycleSpec {
  std::size_t n = 0;
};
struct RandomRegularSpec {
  std::size_t n = 0;
  unsigned d = 0;
  std::uint64_t seed = 0;
};
using GeneratorSpec = std::variant<HypercubeSpec, CompleteSpec, CycleSpec, RandomRegularSpec>;

inline Graph generate_graph(const GeneratorSpec& spec) {
  struct Visitor {
    Graph operator()(const HypercubeSpec& s) const { return hypercube(s.dim); }
    Graph operator()(const CompleteSpec& s) const { return complete_graph(s.n); }
    Graph operator()(const CycleSpec& s) const { return cycle_graph(s.n); }
    Graph operator()(const RandomRegularSpec& s) const { return random_regular(s.n, s.d, s.seed); }
  };
  return std::visit(Visitor{}, spec);
}

// ---------------------------------------------------------------------------
// Hub-and-gadget construction separating the min-degree-1 and connectivity
// thresholds.

struct ConstructionSpec {
  unsigned d = 0;
  std::size_t n = 0;
  std::optional<double> lambda_ceiling;  // default 2.1 * sqrt(d1)
  std::size_t max_retries = 100;
  std::uint64_t seed = 0xC0FFEE;

  unsigned d1() const { return d / 19 * 10; }
  double ceiling() const { return lambda_ceiling.value_or(2.1 * std::sqrt(static_cast<double>(d1()))); }

  void validate() const {
    if (d == 0 || d % 38 != 0) throw GraphError("construction: d must be a positive multiple of 38");
    if (n % (d + 2) != 0) throw GraphError("construction: n must be divisible by d + 2");
    if (n < std::size_t{d} * d) throw GraphError("construction: need n >= d^2");
    if (max_retries == 0) throw GraphError("construction: max_retries must be positive");
  }
};

struct Construction {
  Graph graph;
  Graph base;  // H on the hubs
  SpectralGap base_gap;
  std::size_t attempts = 0;
};

/// Builds the graph and reports H with its certified spectrum.
inline Construction build_construction(const ConstructionSpec& spec) {
  spec.validate();
  const ConstructionLayout layout{spec.n / (spec.d + 2), spec.d, spec.d1()};
  const double ceiling = spec.ceiling();

  for (std::size_t attempt = 0; attempt < spec.max_retries; ++attempt) {
    Graph h = random_regular(layout.hubs, layout.d1, split_seed(spec.seed, attempt));
    const SpectralGap gap = second_eigenvalue(h);
    if (gap.nontrivial_abs() + gap.residual > ceiling) continue;

    std::vector<Edge> edges(h.edges().begin(), h.edges().end());
    const unsigned cut = 2 * layout.matching_size();  // locals [0, cut) carry M(v)
    for (std::size_t hub = 0; hub < layout.hubs; ++hub) {
      for (unsigned i = 0; i <= layout.d; ++i) {
        for (unsigned j = i + 1; j <= layout.d; ++j) {
          if (i % 2 == 0 && j == i + 1 && j < cut) continue;
          edges.push_back({layout.gadget_vertex(hub, i), layout.gadget_vertex(hub, j)});
        }
      }
      for (unsigned l = 0; l < cut; ++l) edges.push_back({static_cast<Vertex>(hub), layout.gadget_vertex(hub, l)});
    }
    Graph g = Graph::from_edges(spec.n, std::move(edges)).with_family(layout);
    return {std::move(g), std::move(h), gap, attempt + 1};
  }
  throw GraphError("construction: no base graph met the spectral ceiling within max_retries");
}

inline Graph tightness_construction(const ConstructionSpec& spec) { return build_construction(spec).graph; }

/// Human-readable violations of the construction's structural invariants; empty when valid.
inline std::vector<std::string> construction_violations(const Graph& g, const ConstructionLayout& layout) {
  std::vector<std::string> out;
  const unsigned d = layout.d;
  if (g.order() != layout.hubs * (d + 2)) {
    out.push_back("vertex count is not hubs * (d + 2)");
    return out;
  }
  if (g.regular_degree() != d) out.push_back("graph is not d-regular");
  for (std::size_t hub = 0; hub < layout.hubs; ++hub) {
    const auto hv = static_cast<Vertex>(hub);
    std::size_t to_hubs = 0;
    std::size_t to_gadget = 0;
    for (Vertex w : g.neighbors(hv)) {
      if (w < layout.hubs) {
        ++to_hubs;
      } else if (w >= layout.gadget_vertex(hub, 0) && w <= layout.gadget_vertex(hub, d)) {
        ++to_gadget;
      }
    }
    if (to_hubs != layout.d1 || to_gadget != d - layout.d1) {
      out.push_back("hub " + std::to_string(hub) + " degree split is " + std::to_string(to_hubs) + "+" +
                    std::to_string(to_gadget));
    }
    std::size_t missing = 0;
    for (unsigned i = 0; i <= d; ++i) {
      for (unsigned j = i + 1; j <= d; ++j) {
        const Vertex a = layout.gadget_vertex(hub, i);
        const Vertex b = layout.gadget_vertex(hub, j);
        if (g.adjacent(a, b)) continue;
        ++missing;
        if (!g.adjacent(hv, a) || !g.adjacent(hv, b)) {
          out.push_back("missing pair in gadget " + std::to_string(hub) + " not attached to its hub");
        }
      }
    }
    if (missing != layout.matching_size()) {
      out.push_back("gadget " + std::to_string(hub) + " misses " + std::to_string(missing) + " pairs");
    }
  }
  return out;
}

/// Recovers the construction layout from a d-regular graph laid out as build_construction does.
inline std::optional<ConstructionLayout> detect_construction(const Graph& g) {
  const auto d = g.regular_degree();
  if (!d || *d == 0 || *d % 38 != 0 || g.order() % (*d + 2) != 0) return std::nullopt;
  const ConstructionLayout layout{g.order() / (*d + 2), *d, *d / 19 * 10};
  if (!construction_violations(g, layout).empty()) return std::nullopt;
  return layout;
}

/// Dimension when g is Q^dim under the standard bit labelling.
inline std::optional<unsigned> detect_hypercube(const Graph& g) {
  const auto n = g.order();
  if (n < 2 || !std::has_single_bit(n)) return std::nullopt;
  const auto dim = static_cast<unsigned>(std::countr_zero(n));
  if (g.regular_degree() != dim) return std::nullopt;
  for (const auto& e : g.edges()) {
    if (!std::has_single_bit(e.u ^ e.v)) return std::nullopt;
  }
  return dim;
}

/// Restores family metadata that the file format does not carry.
inline Graph with_detected_family(Graph g) {
  if (auto dim = detect_hypercube(g)) return std::move(g).with_family(HypercubeFamily{*dim});
  if (auto layout = detect_construction(g)) return std::move(g).with_family(*layout);
  return g;
}

}  // namespace rgp
