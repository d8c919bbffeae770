#pragma once

// Small dense Levenberg-Marquardt used by the calibration fits. Residual
// vectors are tiny (tens of points, <= 4 parameters), so the normal
// equations are solved directly with partial pivoting.

#include <cmath>
#include <functional>
#include <vector>

#include "logprod/errors.hpp"
#include "logprod/numeric.hpp"

namespace logprod::detail {

using ResidualFn =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct LmOptions {
  double tolerance = 1e-10;  // relative SSR decrease on an accepted step
  int max_iterations = 500;
};

struct LmOutcome {
  std::vector<double> params;
  double ssr = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline bool solve_dense(std::vector<std::vector<double>> a,
                        std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double sum = b[i];
    for (std::size_t c = i + 1; c < n; ++c) sum -= a[i][c] * b[c];
    b[i] = sum / a[i][i];
  }
  return true;
}

inline double ssr_of(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return s;
}

inline LmOutcome levenberg_marquardt(const ResidualFn& fn,
                                     std::vector<double> p,
                                     std::size_t n_residuals,
                                     const LmOptions& opt = {}) {
  const std::size_t np = p.size();
  std::vector<double> r(n_residuals), r_trial(n_residuals);
  std::vector<std::vector<double>> jac(n_residuals,
                                       std::vector<double>(np, 0.0));

  fn(p, r);
  double ssr = ssr_of(r);
  double mu = 1e-3;

  LmOutcome out;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    // Finite-difference Jacobian, centered, fd_step policy per parameter.
    std::vector<double> pp = p;
    for (std::size_t j = 0; j < np; ++j) {
      const double h = fd_step(p[j]);
      pp[j] = p[j] + h;
      fn(pp, r_trial);
      std::vector<double> up = r_trial;
      pp[j] = p[j] - h;
      fn(pp, r_trial);
      for (std::size_t i = 0; i < n_residuals; ++i)
        jac[i][j] = (up[i] - r_trial[i]) / (2.0 * h);
      pp[j] = p[j];
    }

    // Normal equations J^T J and gradient J^T r.
    std::vector<std::vector<double>> jtj(np, std::vector<double>(np, 0.0));
    std::vector<double> jtr(np, 0.0);
    for (std::size_t i = 0; i < n_residuals; ++i) {
      for (std::size_t a = 0; a < np; ++a) {
        jtr[a] += jac[i][a] * r[i];
        for (std::size_t b = a; b < np; ++b)
          jtj[a][b] += jac[i][a] * jac[i][b];
      }
    }
    for (std::size_t a = 0; a < np; ++a)
      for (std::size_t b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];

    double grad_inf = 0.0;
    for (double g : jtr) grad_inf = std::max(grad_inf, std::abs(g));
    if (grad_inf < 1e-14 * (1.0 + ssr)) {
      out.converged = true;
      break;
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
      auto lhs = jtj;
      for (std::size_t a = 0; a < np; ++a)
        lhs[a][a] += mu * std::max(jtj[a][a], 1e-12);
      std::vector<double> delta = jtr;
      if (!solve_dense(lhs, delta)) {
        mu *= 10.0;
        continue;
      }
      std::vector<double> trial = p;
      for (std::size_t a = 0; a < np; ++a) trial[a] -= delta[a];
      fn(trial, r_trial);
      const double ssr_trial = ssr_of(r_trial);
      if (std::isfinite(ssr_trial) && ssr_trial < ssr) {
        const double rel_drop = (ssr - ssr_trial) / std::max(ssr, 1e-300);
        p = trial;
        r = r_trial;
        ssr = ssr_trial;
        mu = std::max(mu * 0.3, 1e-12);
        accepted = true;
        if (rel_drop < opt.tolerance) {
          out.converged = true;
          ++iter;
        }
      } else {
        mu *= 10.0;
        if (mu > 1e14) break;
      }
    }
    if (out.converged) break;
    if (!accepted) {
      // No downhill step left at any damping: treat the point as converged
      // if the gradient is already small, otherwise report failure.
      out.converged = grad_inf < 1e-6 * (1.0 + ssr);
      break;
    }
  }

  out.params = std::move(p);
  out.ssr = ssr;
  out.iterations = iter;
  if (iter >= opt.max_iterations) out.converged = false;
  return out;
}

}  // namespace logprod::detail
