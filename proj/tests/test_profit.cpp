#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "logprod/errors.hpp"
#include "logprod/numeric.hpp"
#include "logprod/profit.hpp"

using namespace logprod;

namespace {

LogisticBoth fitted_f5() {
  LogisticBoth f;
  f.n_f = 120.0;
  f.n_k = 150.0;
  f.n_l = 150.0;
  f.alpha = 0.4063544;
  f.beta = 0.5936456;
  f.c = 0.3118901;
  return f;
}

// Instance with a stationary point planted at (k, l): prices are the
// marginal products there.
MarketPrices prices_at(const LogisticBoth& f, double k, double l,
                       double p0 = 1.0) {
  const auto [fk, fl] = f5_partials(f, k, l);
  return {p0, p0 * fk, p0 * fl};
}

}  // namespace

TEST_CASE("profit arithmetic") {
  const LogisticBoth f = fitted_f5();
  const ProductionFunction pf{f};
  // zero factor costs: profit equals output
  CHECK(profit({1.0, 1e-300, 1e-300}, pf, 60.0, 80.0) ==
        doctest::Approx(evaluate(pf, 60.0, 80.0)));
  // no production without inputs
  CHECK(profit({1.0, 1.0, 1.0}, pf, 1e-9, 1e-9) ==
        doctest::Approx(0.0).epsilon(1e-6));
  // spot value equals an independent evaluation
  const MarketPrices p{2.0, 0.3, 0.4};
  const double direct =
      2.0 * evaluate(pf, 60.0, 80.0) - 0.3 * 60.0 - 0.4 * 80.0;
  CHECK(profit(p, pf, 60.0, 80.0) == doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(profit({0.0, 1.0, 1.0}, pf, 1.0, 1.0), DomainError);
}

TEST_CASE("f5 partials match finite differences") {
  const LogisticBoth f = fitted_f5();
  const ProductionFunction pf{f};
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.1, 0.95);
  for (int i = 0; i < 50; ++i) {
    const double k = u(rng) * f.n_k, l = u(rng) * f.n_l;
    const auto [fk, fl] = f5_partials(f, k, l);
    const double fk_fd =
        fd_derivative([&](double kk) { return evaluate(pf, kk, l); }, k);
    const double fl_fd =
        fd_derivative([&](double ll) { return evaluate(pf, k, ll); }, l);
    CHECK(std::abs(fk - fk_fd) <= 1e-6 * (1.0 + std::abs(fk)));
    CHECK(std::abs(fl - fl_fd) <= 1e-6 * (1.0 + std::abs(fl)));
  }
}

TEST_CASE("solve_foc finds the planted stationary point") {
  const LogisticBoth f = fitted_f5();
  const MarketPrices p = prices_at(f, 120.0, 126.0);
  const ProfitSolution sol = solve_foc(p, f);
  CHECK(sol.k == doctest::Approx(120.0).epsilon(1e-7));
  CHECK(sol.l == doctest::Approx(126.0).epsilon(1e-7));
  CHECK(sol.lambda == doctest::Approx(p.output));
  CHECK(sol.output ==
        doctest::Approx(evaluate(ProductionFunction{f}, sol.k, sol.l))
            .epsilon(1e-9));

  // stationarity: price ratios equal marginal products
  const auto [fk, fl] = f5_partials(f, sol.k, sol.l);
  CHECK(p.capital / p.output == doctest::Approx(fk).epsilon(1e-7));
  CHECK(p.labor / p.output == doctest::Approx(fl).epsilon(1e-7));
  CHECK(sol.foc_residual <=
        1e-8 * std::max({p.output, p.capital, p.labor}));
}

TEST_CASE("marginal-product pricing holds at any solution") {
  const LogisticBoth f = fitted_f5();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.6, 0.95);
  for (int i = 0; i < 10; ++i) {
    const double kt = u(rng) * f.n_k, lt = u(rng) * f.n_l;
    const MarketPrices p = prices_at(f, kt, lt, 1.0 + i * 0.25);
    const ProfitSolution sol = solve_foc(p, f);
    const auto [fk, fl] = f5_partials(f, sol.k, sol.l);
    CHECK(std::abs(p.output * fk - p.capital) <= 1e-7 * p.capital);
    CHECK(std::abs(p.output * fl - p.labor) <= 1e-7 * p.labor);
  }
}

TEST_CASE("price scale invariance of the maximizer") {
  const LogisticBoth f = fitted_f5();
  const MarketPrices p = prices_at(f, 118.0, 131.0);
  const ProfitSolution base = solve_foc(p, f);
  for (double scale : {0.02, 3.0, 1700.0}) {
    const MarketPrices q{p.output * scale, p.capital * scale,
                         p.labor * scale};
    const ProfitSolution sol = solve_foc(q, f);
    CHECK(std::abs(sol.k - base.k) <= 1e-8 * (1.0 + std::abs(base.k)));
    CHECK(std::abs(sol.l - base.l) <= 1e-8 * (1.0 + std::abs(base.l)));
    CHECK(sol.profit_value ==
          doctest::Approx(base.profit_value * scale).epsilon(1e-9));
  }
}

TEST_CASE("solver input validation and failure modes") {
  const LogisticBoth f = fitted_f5();
  const MarketPrices p = prices_at(f, 120.0, 126.0);
  CHECK_THROWS_AS(solve_foc(p, f, std::pair{-1.0, 50.0}), PreconditionError);
  CHECK_THROWS_AS(solve_foc({1.0, -1.0, 1.0}, f), DomainError);
  // absurd prices admit no stationary point inside D'
  CHECK_THROWS_AS(solve_foc({1e-12, 5.0, 5.0}, f), ConvergenceError);
}

TEST_CASE("check_soc evaluates the four inequalities") {
  LogisticBoth f = fitted_f5();

  // alpha outside (0,1) fails the first inequality
  LogisticBoth bad = f;
  bad.alpha = 1.2;
  CHECK_FALSE(check_soc(bad, 0.9 * f.n_k, 0.9 * f.n_l).alpha_in_unit_interval);

  // K = N_K/2 exactly: the bilinear forms reduce to +/- one term
  const auto boundary = check_soc(f, f.n_k / 2.0, 0.9 * f.n_l);
  CHECK(boundary.boundary_case);
  CHECK(boundary.bilinear_plus ==
        doctest::Approx(f.n_k * (2.0 * 0.9 * f.n_l - f.n_l) * f.alpha));
  CHECK(boundary.bilinear_minus == doctest::Approx(-boundary.bilinear_plus));

  // direct substitution at (0.9 N_K, 0.9 N_L), alpha = 0.4, beta = 0.6:
  // the minus-form is 0.64 - 0.8(alpha+beta) = -0.16 < 0 (fails), the
  // plus-form is 1.44 > 0.
  LogisticBoth ab = f;
  ab.alpha = 0.4;
  ab.beta = 0.6;
  const auto rep = check_soc(ab, 0.9 * f.n_k, 0.9 * f.n_l);
  CHECK(rep.alpha_in_unit_interval);
  CHECK(rep.beta_in_unit_interval);
  CHECK(rep.bilinear_plus ==
        doctest::Approx(1.44 * f.n_k * f.n_l).epsilon(1e-12));
  CHECK(rep.bilinear_minus ==
        doctest::Approx(-0.16 * f.n_k * f.n_l).epsilon(1e-12));
  CHECK(rep.bilinear_plus_positive);
  CHECK_FALSE(rep.bilinear_minus_positive);

  // small elasticities deep in the corner satisfy all four
  LogisticBoth small = f;
  small.alpha = 0.2;
  small.beta = 0.2;
  const auto ok = check_soc(small, 0.9 * f.n_k, 0.9 * f.n_l);
  CHECK(ok.all_pass());

  // purity: identical inputs, identical report
  const auto again = check_soc(small, 0.9 * f.n_k, 0.9 * f.n_l);
  CHECK(again.bilinear_plus == ok.bilinear_plus);
  CHECK(again.bilinear_minus == ok.bilinear_minus);
  CHECK(again.all_pass() == ok.all_pass());
}

TEST_CASE("consistency condition") {
  CHECK(consistency_condition(0.3, 0.5, 1.0).consistent);
  CHECK_FALSE(consistency_condition(0.5, 0.5, 1.0).consistent);  // sum = 1
  CHECK_FALSE(consistency_condition(0.7, 0.6, 1.0).consistent);
  CHECK(consistency_condition(0.7, 0.6, -1.0).consistent);
  CHECK_FALSE(consistency_condition(0.3, 0.5, -1.0).consistent);
  const auto degenerate = consistency_condition(0.5, 0.5, 0.0);
  CHECK(degenerate.degenerate);
}

TEST_CASE("elasticity recovery round trip") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ua(0.15, 0.45);
  std::uniform_real_distribution<double> uc(0.3, 2.0);
  std::uniform_real_distribution<double> ut(0.65, 0.92);
  for (int i = 0; i < 10; ++i) {
    LogisticBoth f = fitted_f5();
    f.alpha = ua(rng);
    f.beta = ua(rng);
    f.c = uc(rng);
    const double kt = ut(rng) * f.n_k;
    double lt = ut(rng) * f.n_l;
    if (std::abs(lt - f.n_l / 2.0) < 1.0) lt += 2.0;  // away from the log pole
    const MarketPrices p = prices_at(f, kt, lt, 1.0);
    const ProfitSolution sol = solve_foc(p, f);
    const Elasticities rec =
        recover_elasticities(p, f, sol.k, sol.l, sol.output);
    CHECK(std::abs(rec.alpha - f.alpha) <= 1e-6);
    CHECK(std::abs(rec.beta - f.beta) <= 1e-6);
    CHECK(std::abs((rec.alpha + rec.beta) - (f.alpha + f.beta)) <= 1e-6);
  }
}

TEST_CASE("elasticity recovery: symmetric midpoint and domain errors") {
  LogisticBoth f = fitted_f5();
  f.n_f = 150.0;  // N_f = N_K so the midpoint algebra collapses cleanly
  const MarketPrices p{2.0, 0.7, 0.9};
  // Y = N_f/2, K = N_K/2: alpha reduces to p_capital/p_output
  const Elasticities rec =
      recover_elasticities(p, f, f.n_k / 2.0, 0.6 * f.n_l, f.n_f / 2.0);
  CHECK(rec.alpha == doctest::Approx(p.capital / p.output).epsilon(1e-12));

  CHECK_THROWS_AS(recover_elasticities(p, f, f.n_k / 2.0, 0.6 * f.n_l, -1.0),
                  DomainError);
  // L = N_L/2 makes the beta log denominator vanish
  CHECK_THROWS_AS(
      recover_elasticities(p, f, 0.6 * f.n_k, f.n_l / 2.0, 0.5 * f.n_f),
      DomainError);
  // negative C makes a log argument negative
  LogisticBoth neg = f;
  neg.c = -0.5;
  CHECK_THROWS_AS(
      recover_elasticities(p, neg, 0.6 * f.n_k, 0.6 * f.n_l, 0.5 * f.n_f),
      DomainError);
}

TEST_CASE("grid oracle: lattice argmax vs interior stationary point") {
  // The capacity kinks of f5 (|N-K|^alpha with alpha < 1) make output climb
  // to N_f with unbounded slope at the capacity edges, so the profit
  // surface on [N_K/2, N_K) x [N_L/2, N_L) is maximized near an edge, not
  // at the interior stationary point. The solver's point is a stationary
  // point with the printed second-order inequalities satisfied; the global
  // lattice argmax sits elsewhere. This documents the measured gap.
  LogisticBoth f = fitted_f5();
  f.alpha = 0.2;
  f.beta = 0.2;
  f.c = 2.0;
  const double kt = 0.9 * f.n_k, lt = 0.9 * f.n_l;
  const MarketPrices p = prices_at(f, kt, lt);
  const ProfitSolution sol = solve_foc(p, f);
  CHECK(sol.soc.all_pass());

  const ProductionFunction pf{f};
  const int n = 400;
  double best = -1e300, bk = 0, bl = 0;
  for (int i = 0; i < n; ++i) {
    const double k = f.n_k / 2.0 + (f.n_k / 2.0) * i / n;
    for (int j = 0; j < n; ++j) {
      const double l = f.n_l / 2.0 + (f.n_l / 2.0) * j / n;
      const double value = profit(p, pf, k, l);
      if (value > best) {
        best = value;
        bk = k;
        bl = l;
      }
    }
  }
  // the lattice maximum dominates the stationary point from the edge band
  CHECK(best > sol.profit_value);
  const double cell = f.n_k / 2.0 / n;
  const bool edge = (f.n_k - bk <= 2.0 * cell) || (f.n_l - bl <= 2.0 * cell);
  CHECK(edge);
}
