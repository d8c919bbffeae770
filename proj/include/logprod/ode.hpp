#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "logprod/errors.hpp"

namespace logprod {

/// Right-hand side of an autonomous ODE system in R^n.
using OdeField = std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 1'000'000;
};

/// Integrates y' = f(y) from t0 to t1 with the Dormand-Prince 5(4) pair and
/// standard proportional step control. Returns the state at t1.
inline std::vector<double> integrate_adaptive(const OdeField& f,
                                              std::vector<double> y, double t0,
                                              double t1,
                                              const OdeOptions& opt = {}) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // embedded 4th-order weights
  static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695,
                          e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                          e6 = 187.0 / 2100, e7 = 1.0 / 40;

  const std::size_t n = y.size();
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::max(1e-8, std::abs(t1 - t0) / 100.0);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> tmp(n), y5(n);

  f(y, k1);
  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if (dir * (t - t1) >= 0.0) return y;
    if (dir * (t + h - t1) > 0.0) h = t1 - t;

    auto stage = [&](const std::vector<double>& ks, double coeff) {
      for (std::size_t i = 0; i < n; ++i) tmp[i] += coeff * h * ks[i];
    };
    tmp = y;
    stage(k1, a21);
    f(tmp, k2);
    tmp = y;
    stage(k1, a31);
    stage(k2, a32);
    f(tmp, k3);
    tmp = y;
    stage(k1, a41);
    stage(k2, a42);
    stage(k3, a43);
    f(tmp, k4);
    tmp = y;
    stage(k1, a51);
    stage(k2, a52);
    stage(k3, a53);
    stage(k4, a54);
    f(tmp, k5);
    tmp = y;
    stage(k1, a61);
    stage(k2, a62);
    stage(k3, a63);
    stage(k4, a64);
    stage(k5, a65);
    f(tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    f(y5, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                    e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opt.abs_tol +
          opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double e = (y5[i] - y4) / scale;
      err += e * e;
    }
    err = std::sqrt(err / static_cast<double>(n));

    if (err <= 1.0) {
      t += h;
      y.swap(y5);
      k1.swap(k7);  // FSAL
    }
    const double factor =
        (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, factor));
    if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t)))
      throw ConvergenceError("ODE step size underflow");
  }
  throw ConvergenceError("ODE integrator exceeded the step budget");
}

}  // namespace logprod
