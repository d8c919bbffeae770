#pragma once

#include <cmath>
#include <functional>

namespace logprod {

/// Centered-difference step: h = max(1e-6, 1e-8 |x|).
inline double fd_step(double x) {
  return std::max(1e-6, 1e-8 * std::abs(x));
}

/// Centered first derivative with the project-wide step policy.
inline double fd_derivative(const std::function<double(double)>& f, double x) {
  const double h = fd_step(x);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// One-sided (second-order) derivative, stepping away from a kink at x.
/// direction > 0 steps right, direction < 0 steps left.
inline double fd_derivative_one_sided(const std::function<double(double)>& f,
                                      double x, int direction) {
  const double h = fd_step(x) * (direction >= 0 ? 1.0 : -1.0);
  return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
}

/// Centered second derivative; wider step than fd_step to tame roundoff.
inline double fd_second_derivative(const std::function<double(double)>& f,
                                   double x) {
  const double h = std::max(1e-4, 1e-5 * std::abs(x));
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// pow on the absolute value of the base. Several of the model's closed
/// forms are printed with negative-based powers that are meant as |.|^e.
inline double pow_abs(double base, double exponent) {
  return std::pow(std::abs(base), exponent);
}

inline bool nearly_equal(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace logprod
