#pragma once

#include <optional>
#include <string>
#include <utility>

#include "logprod/production.hpp"

namespace logprod {

/// Competitive prices: output price p0, capital rental p1, wage p2.
struct MarketPrices {
  double output = 1.0;   // p0
  double capital = 1.0;  // p1
  double labor = 1.0;    // p2

  void validate() const;
};

/// Pi = p0 Y - p1 K - p2 L with Y = f(K, L).
double profit(const MarketPrices& prices, const ProductionFunction& f,
              double k, double l);

/// The four second-order inequalities evaluated at (K, L):
///   alpha(alpha-1) < 0, beta(beta-1) < 0, and the two bilinear forms
///   (2K-N_K)(2L-N_L) +/- [N_L(2K-N_K)beta + N_K(2L-N_L)alpha] > 0.
struct SocReport {
  bool alpha_in_unit_interval = false;
  bool beta_in_unit_interval = false;
  bool bilinear_plus_positive = false;
  bool bilinear_minus_positive = false;
  double bilinear_plus = 0.0;
  double bilinear_minus = 0.0;
  bool boundary_case = false;  // a (2K-N_K) or (2L-N_L) factor is exactly zero

  bool all_pass() const {
    return alpha_in_unit_interval && beta_in_unit_interval &&
           bilinear_plus_positive && bilinear_minus_positive;
  }
};

SocReport check_soc(const LogisticBoth& f, double k, double l);

struct ProfitSolution {
  double k = 0.0;
  double l = 0.0;
  double output = 0.0;
  double profit_value = 0.0;
  double lambda = 0.0;  // multiplier; equals p0
  double foc_residual = 0.0;
  int iterations = 0;
  SocReport soc;
  bool is_max = false;  // all SOC inequalities pass; otherwise stationary only
};

/// Damped Newton on the reduced stationarity system
///   p0 f_K(K, L) = p1,  p0 f_L(K, L) = p2
/// inside D' = (0, N_K) x (0, N_L), with Y eliminated by the constraint and
/// lambda = p0 substituted analytically. Default initial guess
/// (0.75 N_K, 0.75 N_L). Throws ConvergenceError after 200 iterations.
ProfitSolution solve_foc(
    const MarketPrices& prices, const LogisticBoth& f,
    std::optional<std::pair<double, double>> initial_guess = std::nullopt);

/// Analytic partial derivatives of f5 inside D' (positive sign resolution
/// of the absolute values).
std::pair<double, double> f5_partials(const LogisticBoth& f, double k,
                                      double l);

struct ConsistencyVerdict {
  bool consistent = false;
  bool degenerate = false;  // C = 0: no constraint
  std::string detail;
};

/// Asymptotic compatibility of profit maximization with perfect
/// competition: C > 0 requires 0 < alpha + beta < 1, C < 0 requires
/// alpha + beta > 1.
ConsistencyVerdict consistency_condition(double alpha, double beta, double c);

struct Elasticities {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Closed-form elasticities from an observed optimum (K, L, Y) and prices.
/// The capital rental enters the alpha row (the printed source swaps the
/// two factor prices; this form is the inverse of the stationarity system
/// used by solve_foc, so the round trip reproduces the constructor values).
Elasticities recover_elasticities(const MarketPrices& prices,
                                  const LogisticBoth& f, double k, double l,
                                  double y);

}  // namespace logprod
