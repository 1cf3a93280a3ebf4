#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rgp/graph.hpp"
#include "rgp/rng.hpp"

namespace rgp {

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Extreme nontrivial adjacency eigenvalues of a regular graph.
struct SpectralGap {
  unsigned degree = 0;
  double lambda2 = 0.0;     // second largest, signed
  double lambda_min = 0.0;  // smallest
  double residual = 0.0;    // max eigen-residual norm of the two reported pairs

  /// λ of an (n, d, λ)-graph: max(|λ2|, |λ_min|).
  double nontrivial_abs() const { return std::max(std::abs(lambda2), std::abs(lambda_min)); }
};

struct EigenOptions {
  double tol = 1e-8;
  std::size_t dense_limit = 2000;
  std::size_t max_lanczos_steps = 600;
};

namespace detail {

inline void adjacency_apply(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  for (Vertex v = 0; v < g.order(); ++v) {
    double s = 0.0;
    for (Vertex w : g.neighbors(v)) s += x[w];
    y[v] = s;
  }
}

inline void project_off_ones(Eigen::VectorXd& x) { x.array() -= x.mean(); }

inline SpectralGap dense_gap(const Graph& g, unsigned d) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw SpectralError("dense eigensolve failed");
  const auto& vals = solver.eigenvalues();  // ascending
  const auto& vecs = solver.eigenvectors();
  SpectralGap gap;
  gap.degree = d;
  gap.lambda2 = vals[n - 2];
  gap.lambda_min = vals[0];
  const double r2 = (a * vecs.col(n - 2) - vals[n - 2] * vecs.col(n - 2)).norm();
  const double r0 = (a * vecs.col(0) - vals[0] * vecs.col(0)).norm();
  gap.residual = std::max(r2, r0);
  return gap;
}

// Lanczos with full reorthogonalisation on the complement of the all-ones
// vector; both ends of the Ritz spectrum must reach the tolerance.
inline SpectralGap lanczos_gap(const Graph& g, unsigned d, const EigenOptions& opt) {
  const auto n = static_cast<Eigen::Index>(g.order());
  const auto max_steps = static_cast<Eigen::Index>(std::min<std::size_t>(opt.max_lanczos_steps, g.order() - 1));
  Eigen::MatrixXd basis(n, max_steps + 1);
  std::vector<double> alpha;
  std::vector<double> beta;

  Stream rng(0x5eed);
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q[i] = rng.uniform() - 0.5;
  project_off_ones(q);
  q.normalize();
  basis.col(0) = q;

  Eigen::VectorXd w(n);
  for (Eigen::Index j = 0; j < max_steps; ++j) {
    adjacency_apply(g, basis.col(j), w);
    alpha.push_back(basis.col(j).dot(w));
    for (int pass = 0; pass < 2; ++pass) {
      const auto cols = basis.leftCols(j + 1);
      w -= cols * (cols.transpose() * w);
      project_off_ones(w);
    }
    const double b = w.norm();
    beta.push_back(b);

    const auto steps = j + 1;
    const bool invariant = b < 1e-12;
    if (invariant || steps % 10 == 0 || steps == max_steps) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
      for (Eigen::Index i = 0; i < steps; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < steps) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
      const auto& vals = small.eigenvalues();
      const auto& vecs = small.eigenvectors();
      const double r_top = std::abs(b * vecs(steps - 1, steps - 1));
      const double r_bottom = std::abs(b * vecs(steps - 1, 0));
      if (invariant || (r_top <= opt.tol && r_bottom <= opt.tol)) {
        SpectralGap gap;
        gap.degree = d;
        gap.lambda2 = vals[steps - 1];
        gap.lambda_min = vals[0];
        gap.residual = std::max(r_top, r_bottom);
        return gap;
      }
    }
    basis.col(j + 1) = w / b;
  }
  throw SpectralError("Lanczos did not converge within " + std::to_string(max_steps) + " steps");
}

}  // namespace detail

/// Second largest and smallest adjacency eigenvalues of a regular graph.
/// Dense symmetric solve up to `dense_limit` vertices, Lanczos beyond.
inline SpectralGap second_eigenvalue(const Graph& g, const EigenOptions& opt = {}) {
  const auto d = g.regular_degree();
  if (!d) throw SpectralError("second_eigenvalue requires a regular graph");
  if (g.order() < 2) throw SpectralError("second_eigenvalue requires at least two vertices");
  if (!(opt.tol > 0.0)) throw SpectralError("tolerance must be positive");
  if (g.order() <= opt.dense_limit) return detail::dense_gap(g, *d);
  return detail::lanczos_gap(g, *d, opt);
}

}  // namespace rgp
