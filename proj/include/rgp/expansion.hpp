#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rgp/generators.hpp"
#include "rgp/graph.hpp"
#include "rgp/spectral.hpp"

namespace rgp {

// Global expansion: e(U, U^c) >= c|U| for every |U| <= n/2.
struct P1 {
  double c = 0.0;
};

// Local expansion: e(U, U^c) >= (1 - epsilon) d |U| for every |U| <= size_bound.
struct P2 {
  double epsilon = 0.0;
  double size_bound = 0.0;
};

using ExpansionProperty = std::variant<P1, P2>;

/// C * d * ln n, the natural size range of the local property.
inline double local_size_bound(double big_c, unsigned d, std::size_t n) {
  return big_c * d * std::log(static_cast<double>(n));
}

enum class Method { brute, spectral, harper };
enum class Verdict { certified, refuted, unknown };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::brute: return "brute";
    case Method::spectral: return "spectral";
    case Method::harper: return "harper";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

struct ExpansionCertificate {
  ExpansionProperty property;
  Verdict verdict = Verdict::unknown;
  std::optional<Method> method;
  std::optional<VertexSet> witness;
  std::optional<std::size_t> witness_boundary;
  std::optional<SpectralGap> gap;
  std::optional<double> certified_c;    // spectral: largest certifiable P1 constant
  std::optional<double> worst_ratio;    // brute: min e(U,U^c)/|U| over the sets examined
  std::size_t max_size_checked = 0;     // brute
  std::size_t sets_enumerated = 0;      // brute
  std::string note;
};

class ExpansionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Largest |U| the property quantifies over.
inline std::size_t property_range(const ExpansionProperty& prop, std::size_t n) {
  if (std::holds_alternative<P1>(prop)) return n / 2;
  const auto& p2 = std::get<P2>(prop);
  if (p2.size_bound < 1.0) return 0;
  return std::min<std::size_t>(n, static_cast<std::size_t>(std::floor(p2.size_bound)));
}

// Required per-vertex boundary for sets in range.
inline double property_rate(const ExpansionProperty& prop, unsigned d) {
  if (const auto* p1 = std::get_if<P1>(&prop)) return p1->c;
  return (1.0 - std::get<P2>(prop).epsilon) * d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Spectral route.
//
// For d-regular G and indicator x of U, write x = (|U|/n) 1 + y with y ⟂ 1.
// Then 2 e(U) = x^T A x = d|U|^2/n + y^T A y <= d|U|^2/n + λ2 |y|^2 and
// |y|^2 = |U|(1 - |U|/n), so
//   e(U, U^c) = d|U| - 2 e(U) >= |U| (1 - |U|/n) (d - λ2).
// Only the signed λ2 appears, so bipartite graphs are fine.

/// One-sided: returns Certified or Unknown, never Refuted.
inline ExpansionCertificate spectral_certify(const Graph& g, const SpectralGap& gap, const ExpansionProperty& prop,
                                             double slack = 1e-8) {
  const auto d = g.regular_degree();
  if (!d || *d != gap.degree) throw ExpansionError("spectral_certify: gap does not belong to this regular graph");
  if (gap.lambda2 >= *d - slack) throw ExpansionError("spectral_certify: lambda2 >= d (graph disconnected)");
  ExpansionCertificate cert;
  cert.property = prop;
  cert.gap = gap;
  const double margin = *d - gap.lambda2 - gap.residual;
  const double n = static_cast<double>(g.order());
  cert.certified_c = margin / 2.0;
  bool ok = false;
  if (const auto* p1 = std::get_if<P1>(&prop)) {
    ok = p1->c <= margin / 2.0 + slack;
  } else {
    const auto& p2 = std::get<P2>(prop);
    const double s = std::min(p2.size_bound, n);
    ok = (1.0 - s / n) * margin + slack >= (1.0 - p2.epsilon) * *d;
  }
  if (ok) {
    cert.verdict = Verdict::certified;
    cert.method = Method::spectral;
  } else {
    cert.note = "spectral bound inconclusive";
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Harper route.

/// ceil(u (dim - log2 u)): lower bound on e(U, U^c) for any u-subset of Q^dim.
inline std::size_t harper_lower_bound(unsigned dim, std::size_t u_size) {
  if (dim == 0 || dim > 62) throw ExpansionError("harper_lower_bound: dimension out of range");
  if (u_size < 1 || u_size > (std::size_t{1} << dim)) throw ExpansionError("harper_lower_bound: size out of range");
  if (std::has_single_bit(u_size)) {
    return u_size * (dim - static_cast<unsigned>(std::countr_zero(u_size)));
  }
  const long double value = static_cast<long double>(u_size) * (dim - std::log2(static_cast<long double>(u_size)));
  return static_cast<std::size_t>(std::ceil(value - 1e-9L));
}

inline ExpansionCertificate harper_certify(unsigned dim, const ExpansionProperty& prop) {
  const std::size_t n = std::size_t{1} << dim;
  ExpansionCertificate cert;
  cert.property = prop;
  const double rate = detail::property_rate(prop, dim);
  const std::size_t range = detail::property_range(prop, n);
  for (std::size_t u = 1; u <= range; ++u) {
    if (static_cast<double>(harper_lower_bound(dim, u)) < rate * static_cast<double>(u)) {
      cert.note = "Harper bound below demand at |U| = " + std::to_string(u);
      return cert;
    }
  }
  cert.verdict = Verdict::certified;
  cert.method = Method::harper;
  return cert;
}

// ---------------------------------------------------------------------------
// Brute-force route: every connected vertex set up to max_size, each visited
// once by rooted growth from its least vertex (ESU extension rule).
//
// A disconnected U splits into its components U_1..U_r with no edges between
// them, so e(U, U^c) = sum e(U_i, U_i^c). A per-vertex bound that holds for
// every connected set of size <= s therefore holds for every set of size <= s.

struct BruteOptions {
  std::size_t max_sets = 200'000'000;
};

struct ConnectedSetStats {
  std::vector<std::size_t> count_by_size;  // index = size
};

namespace detail {

class ConnectedSetWalker {
 public:
  ConnectedSetWalker(const Graph& g, std::size_t max_size, std::size_t max_sets)
      : g_(g), max_size_(max_size), max_sets_(max_sets), in_set_(g.order(), 0), near_(g.order(), 0) {}

  // visit(members, boundary) is called once per connected set; returns false to stop.
  template <typename Visit>
  bool run(Visit&& visit) {
    for (Vertex root = 0; root < g_.order(); ++root) {
      root_ = root;
      std::vector<Vertex> ext;
      for (Vertex w : g_.neighbors(root)) {
        if (w > root) ext.push_back(w);
      }
      add(root);
      const bool go_on = grow(g_.degree(root), ext, visit);
      remove(root);
      if (!go_on) return false;
    }
    return true;
  }

  std::size_t visited() const { return visited_; }
  bool exhausted() const { return budget_hit_; }

 private:
  void add(Vertex v) {
    members_.push_back(v);
    in_set_[v] = 1;
    for (Vertex w : g_.neighbors(v)) ++near_[w];
  }
  void remove(Vertex v) {
    members_.pop_back();
    in_set_[v] = 0;
    for (Vertex w : g_.neighbors(v)) --near_[w];
  }

  template <typename Visit>
  bool grow(std::size_t boundary, std::vector<Vertex> ext, Visit& visit) {
    if (visited_ >= max_sets_) {
      budget_hit_ = true;
      return false;
    }
    ++visited_;
    if (!visit(std::span<const Vertex>(members_), boundary)) return false;
    if (members_.size() == max_size_) return true;
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next_ext = ext;
      for (Vertex u : g_.neighbors(w)) {
        if (u > root_ && !in_set_[u] && near_[u] == 0) next_ext.push_back(u);
      }
      const std::size_t inside = near_[w];
      const std::size_t next_boundary = boundary + g_.degree(w) - 2 * inside;
      add(w);
      const bool go_on = grow(next_boundary, std::move(next_ext), visit);
      remove(w);
      if (!go_on) return false;
    }
    return true;
  }

  const Graph& g_;
  std::size_t max_size_;
  std::size_t max_sets_;
  Vertex root_ = 0;
  std::vector<Vertex> members_;
  std::vector<std::uint8_t> in_set_;
  std::vector<std::uint32_t> near_;
  std::size_t visited_ = 0;
  bool budget_hit_ = false;
};

}  // namespace detail

/// Calls visit(members, boundary) for every connected set of size <= max_size.
/// `members` is in growth order, not sorted. Returns the number of sets per size.
template <typename Visit>
ConnectedSetStats for_each_connected_set(const Graph& g, std::size_t max_size, Visit&& visit,
                                         std::size_t max_sets = BruteOptions{}.max_sets) {
  ConnectedSetStats stats;
  stats.count_by_size.assign(max_size + 1, 0);
  if (max_size == 0) return stats;
  detail::ConnectedSetWalker walker(g, max_size, max_sets);
  walker.run([&](std::span<const Vertex> members, std::size_t boundary) {
    ++stats.count_by_size[members.size()];
    return visit(members, boundary);
  });
  if (walker.exhausted()) throw ExpansionError("connected-set enumeration exceeded its budget");
  return stats;
}

inline ExpansionCertificate brute_force_expansion(const Graph& g, std::size_t max_size, const ExpansionProperty& prop,
                                                  const BruteOptions& opt = {}) {
  const auto d = g.regular_degree();
  if (std::holds_alternative<P2>(prop) && !d) throw ExpansionError("brute_force_expansion: P2 needs a regular graph");
  ExpansionCertificate cert;
  cert.property = prop;
  const std::size_t range = detail::property_range(prop, g.order());
  const std::size_t limit = std::min(max_size, range);
  const double rate = detail::property_rate(prop, d.value_or(0));
  cert.max_size_checked = limit;
  if (limit == 0) {
    cert.verdict = range == 0 ? Verdict::certified : Verdict::unknown;
    if (cert.verdict == Verdict::certified) cert.method = Method::brute;
    return cert;
  }

  // Witness order: least ratio boundary/|U|, then smaller |U|, then lexicographically least set.
  std::optional<std::pair<std::size_t, std::size_t>> worst;  // (boundary, size)
  std::optional<std::pair<std::size_t, std::size_t>> best_violation;
  std::vector<Vertex> violation_set;
  std::vector<Vertex> sorted;
  const auto ratio_less = [](std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) {
    return a.first * b.second < b.first * a.second;
  };

  detail::ConnectedSetWalker walker(g, limit, opt.max_sets);
  walker.run([&](std::span<const Vertex> members, std::size_t boundary) {
    const std::pair<std::size_t, std::size_t> r{boundary, members.size()};
    if (!worst || ratio_less(r, *worst)) worst = r;
    if (static_cast<double>(boundary) < rate * static_cast<double>(members.size())) {
      sorted.assign(members.begin(), members.end());
      std::sort(sorted.begin(), sorted.end());
      bool better = !best_violation || ratio_less(r, *best_violation);
      if (!better && !ratio_less(*best_violation, r)) {
        better = r.second < best_violation->second ||
                 (r.second == best_violation->second && sorted < violation_set);
      }
      if (better) {
        best_violation = r;
        violation_set = sorted;
      }
    }
    return true;
  });

  cert.sets_enumerated = walker.visited();
  if (worst) cert.worst_ratio = static_cast<double>(worst->first) / static_cast<double>(worst->second);
  if (best_violation) {
    cert.verdict = Verdict::refuted;
    cert.method = Method::brute;
    cert.witness = VertexSet::of(violation_set, g.order());
    cert.witness_boundary = best_violation->first;
    if (walker.exhausted()) cert.note = "budget exceeded after a violation was found";
    return cert;
  }
  if (walker.exhausted()) {
    cert.note = "enumeration budget exceeded after " + std::to_string(walker.visited()) + " sets";
    return cert;
  }
  if (limit >= range) {
    cert.verdict = Verdict::certified;
    cert.method = Method::brute;
  } else {
    cert.note = "no violation among connected sets up to size " + std::to_string(limit) +
                "; property quantifies up to " + std::to_string(range);
  }
  return cert;
}

// ---------------------------------------------------------------------------

struct CertifyOptions {
  std::size_t max_size = 4;
  EigenOptions eigen;
  BruteOptions brute;
};

/// Tries each method in order; the first Certified or Refuted verdict wins.
inline ExpansionCertificate certify(const Graph& g, const ExpansionProperty& prop, std::span<const Method> order,
                                    const CertifyOptions& opt = {}) {
  ExpansionCertificate last;
  last.property = prop;
  std::string notes;
  const auto remember = [&](Method m, const std::string& why) {
    if (!notes.empty()) notes += "; ";
    notes += std::string(to_string(m)) + ": " + why;
  };
  for (Method m : order) {
    ExpansionCertificate cert;
    try {
      switch (m) {
        case Method::harper: {
          auto dim = detect_hypercube(g);
          if (const auto* fam = std::get_if<HypercubeFamily>(&g.family())) dim = fam->dim;
          if (!dim) {
            remember(m, "graph is not a hypercube");
            continue;
          }
          cert = harper_certify(*dim, prop);
          break;
        }
        case Method::spectral: {
          const SpectralGap gap = second_eigenvalue(g, opt.eigen);
          cert = spectral_certify(g, gap, prop, opt.eigen.tol);
          break;
        }
        case Method::brute:
          cert = brute_force_expansion(g, opt.max_size, prop, opt.brute);
          break;
      }
    } catch (const std::runtime_error& e) {
      remember(m, e.what());
      continue;
    }
    if (cert.verdict != Verdict::unknown) return cert;
    remember(m, cert.note.empty() ? "inconclusive" : cert.note);
    last = std::move(cert);
  }
  last.verdict = Verdict::unknown;
  last.method.reset();
  last.note = notes;
  return last;
}

// ---------------------------------------------------------------------------
// Serialization.

inline constexpr int kCertificateFormatVersion = 1;

inline nlohmann::ordered_json to_json(const ExpansionProperty& prop) {
  nlohmann::ordered_json j;
  if (const auto* p1 = std::get_if<P1>(&prop)) {
    j["name"] = "P1";
    j["c"] = p1->c;
  } else {
    const auto& p2 = std::get<P2>(prop);
    j["name"] = "P2";
    j["epsilon"] = p2.epsilon;
    j["size_bound"] = p2.size_bound;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const ExpansionCertificate& cert) {
  nlohmann::ordered_json j;
  j["format_version"] = kCertificateFormatVersion;
  j["property"] = to_json(cert.property);
  j["verdict"] = to_string(cert.verdict);
  j["method"] = cert.method ? nlohmann::ordered_json(to_string(*cert.method)) : nlohmann::ordered_json(nullptr);
  if (cert.witness) {
    j["witness"] = std::vector<Vertex>(cert.witness->begin(), cert.witness->end());
    j["witness_boundary"] = *cert.witness_boundary;
  } else {
    j["witness"] = nullptr;
    j["witness_boundary"] = nullptr;
  }
  if (cert.gap) {
    j["lambda2"] = cert.gap->lambda2;
    j["lambda_min"] = cert.gap->lambda_min;
    j["residual"] = cert.gap->residual;
    j["certified_c"] = *cert.certified_c;
  }
  if (cert.method == Method::brute || cert.sets_enumerated > 0) {
    j["max_size_checked"] = cert.max_size_checked;
    j["sets_enumerated"] = cert.sets_enumerated;
    j["worst_ratio"] = cert.worst_ratio ? nlohmann::ordered_json(*cert.worst_ratio) : nlohmann::ordered_json(nullptr);
  }
  j["note"] = cert.note;
  return j;
}

}  // namespace rgp
