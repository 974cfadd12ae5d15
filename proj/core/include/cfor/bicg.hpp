#pragma once

// Preconditioned bi-conjugate gradient iteration on flat vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cfor/error.hpp"

namespace cfor {

using Vec = std::vector<double>;
using LinearMap = std::function<void(const Vec& in, Vec& out)>;

struct BicgOptions {
  /// Converged when max |b - A x| <= tol.
  double tol = 1e-12;
  long max_iterations = 1000;
};

struct BicgResult {
  long iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
};

namespace detail {
inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline double max_abs(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}
}  // namespace detail

/// Solves A x = b starting from the given x. `a_t` and `m_inv_t` apply the transposes of A
/// and of the preconditioner inverse. Throws ConvergenceFailure with the residual history
/// on breakdown or when max_iterations is exhausted.
inline BicgResult bicg_solve(const LinearMap& a, const LinearMap& a_t, const LinearMap& m_inv,
                             const LinearMap& m_inv_t, const Vec& b, Vec& x, const BicgOptions& opt) {
  const std::size_t n = b.size();
  Vec r(n), rt(n), z(n), zt(n), p(n), pt(n), q(n), qt(n);
  a(x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
  rt = r;

  BicgResult res;
  res.residual = detail::max_abs(r);
  res.history.push_back(res.residual);
  if (res.residual <= opt.tol) return res;

  double rho_prev = 0.0;
  long it = 0;  // iteration within the current cycle
  for (long total = 1; total <= opt.max_iterations; ++total) {
    ++it;
    m_inv(r, z);
    m_inv_t(rt, zt);
    const double rho = detail::dot(z, rt);
    if (rho == 0.0 || !std::isfinite(rho)) {
      throw ConvergenceFailure("BiCG breakdown (rho = 0) at iteration " + std::to_string(total), res.history);
    }
    if (it == 1) {
      p = z;
      pt = zt;
    } else {
      const double beta = rho / rho_prev;
      for (std::size_t i = 0; i < n; ++i) {
        p[i] = z[i] + beta * p[i];
        pt[i] = zt[i] + beta * pt[i];
      }
    }
    a(p, q);
    a_t(pt, qt);
    const double denom = detail::dot(pt, q);
    if (denom == 0.0 || !std::isfinite(denom)) {
      throw ConvergenceFailure("BiCG breakdown (p~.Ap = 0) at iteration " + std::to_string(total), res.history);
    }
    const double alpha = rho / denom;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
      rt[i] -= alpha * qt[i];
    }
    rho_prev = rho;
    res.iterations = total;
    res.residual = detail::max_abs(r);
    res.history.push_back(res.residual);
    if (res.residual <= opt.tol) {
      // Guard against drift of the recursive residual.
      a(x, q);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
      res.residual = detail::max_abs(r);
      if (res.residual <= opt.tol) return res;
      rt = r;
      it = 0;  // restart from the true residual
    }
  }
  throw ConvergenceFailure("BiCG did not reach tolerance " + std::to_string(opt.tol) + " in " +
                               std::to_string(opt.max_iterations) + " iterations",
                           res.history);
}

}  // namespace cfor
