#include "logprod/profit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "logprod/errors.hpp"
#include "logprod/numeric.hpp"

namespace logprod {

void MarketPrices::validate() const {
  if (!(output > 0.0 && capital > 0.0 && labor > 0.0))
    throw DomainError("all prices must be strictly positive");
}

double profit(const MarketPrices& prices, const ProductionFunction& f,
              double k, double l) {
  prices.validate();
  return prices.output * evaluate(f, k, l) - prices.capital * k -
         prices.labor * l;
}

SocReport check_soc(const LogisticBoth& f, double k, double l) {
  SocReport rep;
  rep.alpha_in_unit_interval = f.alpha * (f.alpha - 1.0) < 0.0;
  rep.beta_in_unit_interval = f.beta * (f.beta - 1.0) < 0.0;
  const double dk = 2.0 * k - f.n_k;
  const double dl = 2.0 * l - f.n_l;
  const double cross = f.n_l * dk * f.beta + f.n_k * dl * f.alpha;
  rep.bilinear_plus = dk * dl + cross;
  rep.bilinear_minus = dk * dl - cross;
  rep.bilinear_plus_positive = rep.bilinear_plus > 0.0;
  rep.bilinear_minus_positive = rep.bilinear_minus > 0.0;
  rep.boundary_case = (dk == 0.0) || (dl == 0.0);
  return rep;
}

std::pair<double, double> f5_partials(const LogisticBoth& f, double k,
                                      double l) {
  if (!(k > 0.0 && k < f.n_k && l > 0.0 && l < f.n_l))
    throw DomainError("f5 partials are taken inside D' only");
  const double y = evaluate(ProductionFunction{f}, k, l);
  const double common = y * (f.n_f - y) / f.n_f;
  const double fk = f.alpha * f.n_k * common / (k * (f.n_k - k));
  const double fl = f.beta * f.n_l * common / (l * (f.n_l - l));
  return {fk, fl};
}

ProfitSolution solve_foc(const MarketPrices& prices, const LogisticBoth& f,
                         std::optional<std::pair<double, double>> guess) {
  prices.validate();
  const double margin_k = 1e-9 * f.n_k;
  const double margin_l = 1e-9 * f.n_l;

  double k = guess ? guess->first : 0.75 * f.n_k;
  double l = guess ? guess->second : 0.75 * f.n_l;
  if (!(k > 0.0 && k < f.n_k && l > 0.0 && l < f.n_l))
    throw PreconditionError("initial guess must lie inside D'");

  const double price_scale =
      std::max({prices.output, prices.capital, prices.labor});
  const double tol = 1e-8 * price_scale;

  auto residual = [&](double kk, double ll) -> std::pair<double, double> {
    const auto [fk, fl] = f5_partials(f, kk, ll);
    return {prices.output * fk - prices.capital,
            prices.output * fl - prices.labor};
  };
  auto merit = [&](double kk, double ll) {
    const auto [g1, g2] = residual(kk, ll);
    return g1 * g1 + g2 * g2;
  };
  auto clamp_point = [&](double& kk, double& ll) {
    kk = std::clamp(kk, margin_k, f.n_k - margin_k);
    ll = std::clamp(ll, margin_l, f.n_l - margin_l);
  };

  const int max_iterations = 200;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    const auto [g1, g2] = residual(k, l);
    if (std::max(std::abs(g1), std::abs(g2)) <= tol) break;

    // Finite-difference Jacobian of the residual in (K, L).
    const double hk = fd_step(k), hl = fd_step(l);
    const auto rkp = residual(k + hk, l), rkm = residual(k - hk, l);
    const auto rlp = residual(k, l + hl), rlm = residual(k, l - hl);
    const double j11 = (rkp.first - rkm.first) / (2.0 * hk);
    const double j21 = (rkp.second - rkm.second) / (2.0 * hk);
    const double j12 = (rlp.first - rlm.first) / (2.0 * hl);
    const double j22 = (rlp.second - rlm.second) / (2.0 * hl);
    const double det = j11 * j22 - j12 * j21;
    double dk, dl;
    if (std::abs(det) < 1e-300) {
      // Singular Jacobian: fall back to a gradient step on the merit.
      dk = -g1 * 1e-2;
      dl = -g2 * 1e-2;
    } else {
      dk = -(j22 * g1 - j12 * g2) / det;
      dl = -(-j21 * g1 + j11 * g2) / det;
    }

    // Backtracking damped step, projected into D'.
    const double m0 = g1 * g1 + g2 * g2;
    double step = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      double kn = k + step * dk;
      double ln = l + step * dl;
      clamp_point(kn, ln);
      if (merit(kn, ln) < m0) {
        k = kn;
        l = ln;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      std::ostringstream trace;
      trace << "profit solver stalled at K=" << k << " L=" << l
            << " residuals=(" << g1 << ", " << g2 << ") after " << iter
            << " iterations";
      throw ConvergenceError(trace.str());
    }
  }

  const auto [g1, g2] = residual(k, l);
  const double res = std::max(std::abs(g1), std::abs(g2));
  if (res > tol) {
    std::ostringstream trace;
    trace << "profit solver did not converge in " << max_iterations
          << " iterations; residual " << res << " vs tolerance " << tol;
    throw ConvergenceError(trace.str());
  }

  ProfitSolution sol;
  sol.k = k;
  sol.l = l;
  sol.output = evaluate(ProductionFunction{f}, k, l);
  sol.profit_value = prices.output * sol.output - prices.capital * k -
                     prices.labor * l;
  sol.lambda = prices.output;
  sol.foc_residual = res;
  sol.iterations = iter;
  sol.soc = check_soc(f, k, l);
  sol.is_max = sol.soc.all_pass();
  return sol;
}

ConsistencyVerdict consistency_condition(double alpha, double beta, double c) {
  ConsistencyVerdict v;
  const double sum = alpha + beta;
  if (c == 0.0) {
    v.degenerate = true;
    v.consistent = true;
    v.detail = "C = 0: the asymptotic condition imposes no constraint";
    return v;
  }
  if (c > 0.0) {
    v.consistent = sum > 0.0 && sum < 1.0;
    v.detail = v.consistent ? "0 < alpha + beta < 1 holds"
                            : "violated bound: alpha + beta must lie in (0, 1)";
  } else {
    v.consistent = sum > 1.0;
    v.detail = v.consistent ? "alpha + beta > 1 holds (C < 0)"
                            : "violated bound: alpha + beta must exceed 1 (C < 0)";
  }
  return v;
}

Elasticities recover_elasticities(const MarketPrices& prices,
                                  const LogisticBoth& f, double k, double l,
                                  double y) {
  prices.validate();
  if (!(y > 0.0 && y < f.n_f))
    throw DomainError("recovery requires 0 < Y < N_f");
  if (!(k > 0.0 && k < f.n_k) || !(l > 0.0 && l < f.n_l))
    throw DomainError("recovery requires an interior factor point");
  const double p0 = prices.output;
  const double p_k = prices.capital;

  const double denom = p0 * f.n_k * y * (f.n_f - y);
  Elasticities e;
  e.alpha = p_k * f.n_f * k * (f.n_k - k) / denom;

  const double log_y = std::log(std::abs(f.n_f - y) / (f.c * y));
  const double log_k = std::log(std::abs(f.n_k - k) / k);
  const double log_l = std::log(std::abs(f.n_l - l) / l);
  if (!std::isfinite(log_y))
    throw DomainError("recovery log argument is not positive (check C > 0)");
  if (log_l == 0.0)
    throw DomainError("recovery breaks down at L = N_L / 2 (log denominator vanishes)");
  e.beta = (denom * log_y - p_k * f.n_f * k * (f.n_k - k) * log_k) /
           (denom * log_l);
  return e;
}

}  // namespace logprod
