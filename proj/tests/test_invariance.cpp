#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "logprod/errors.hpp"
#include "logprod/invariance.hpp"
#include "logprod/numeric.hpp"

using namespace logprod;

namespace {

// f5 generated by the rate triple (2, 1, 1.5) on capacities (113, 115, 120).
constexpr double kA = 2.0, kB = 1.0, kC = 1.5;
constexpr double kNK = 113.0, kNL = 115.0, kNF = 120.0;

LogisticBoth paper_f5() {
  return LogisticBoth::from_rates(kA, kB, kC, kNK, kNL, kNF, 1.18);
}

GrowthModel logistic_model() {
  return {GrowthLaw::logistic(kA, kNK), GrowthLaw::logistic(kB, kNL)};
}

std::vector<std::pair<double, double>> interior_samples(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uk(0.1, 0.9), ul(0.1, 0.9);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back({uk(rng) * kNK, ul(rng) * kNL});
  return pts;
}

}  // namespace

TEST_CASE("holotheticity residual of the generated f5") {
  const Generator gen = model_generator(logistic_model());
  const ProductionFunction f{paper_f5()};
  const auto h = [](double y) { return kC * y * (1.0 - y / kNF); };
  const auto rep = holotheticity_residual(gen, f, h, interior_samples(100, 42));
  CHECK(rep.samples_used + rep.samples_skipped == 100);
  CHECK(rep.max_residual <= 1e-6);
}

TEST_CASE("holotheticity: Euler identity for Cobb-Douglas under X1") {
  Generator x1;
  x1.xi = [](double k, double) { return k; };
  x1.eta = [](double, double l) { return l; };
  const ProductionFunction cd{CobbDouglas{1.3, 0.45, 0.55}};
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 50; ++i) pts.push_back({u(rng), u(rng)});
  const auto rep =
      holotheticity_residual(x1, cd, [](double y) { return y; }, pts);
  CHECK(rep.max_residual <= 1e-8);
}

TEST_CASE("f9 solves the invariant relation of the projective action") {
  // The intensive form of f9 is y(x) = x^{c3} / (x^{c3} + c4 |x-1|^{c3});
  // its modified wage share is identically c3, which is exactly the
  // integrated invariant relation the function was built from.
  // The |x-1| kink flips the slope sign, so the level is +c3 below x = 1
  // and -c3 above it; orbits never cross the kink.
  const double c3 = 0.5, c4 = 1.0;
  const WageShareCompatible g{c3, c4};
  const ProductionFunction f9{g};
  double worst = 0.0;
  for (double x : {0.15, 0.4, 0.8, 1.3, 2.7, 6.0}) {
    const double k0 = 50.0;
    auto y_of_x = [&](double xx) { return evaluate(f9, k0, k0 * xx) / k0; };
    WageShareFrame fr;
    fr.x = x;
    fr.y = y_of_x(x);
    fr.y_x = fd_derivative(y_of_x, x);
    const double expected = x < 1.0 ? c3 : -c3;
    worst = std::max(worst, std::abs(modified_wage_share(fr) - expected));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("isoquant preservation") {
  const ProductionFunction cd{CobbDouglas{1.0, 0.4, 0.6}};
  const GrowthModel expexp{GrowthLaw::exponential(0.3),
                           GrowthLaw::exponential(0.7)};
  // points on the isoquant f = y0: L = (y0 / K^a)^{1/b}
  const double y0 = 5.0;
  std::vector<std::pair<double, double>> pts;
  for (double k = 1.0; k <= 9.0; k += 1.0)
    pts.push_back({k, std::pow(y0 / std::pow(k, 0.4), 1.0 / 0.6)});

  const auto rep = isoquant_preservation(expexp, cd, pts, 0.8);
  CHECK(rep.preserved);
  CHECK(rep.max_rel_spread <= 1e-6);

  const auto identity = isoquant_preservation(expexp, cd, pts, 0.0);
  CHECK(identity.image_level == doctest::Approx(y0).epsilon(1e-9));

  // G1 with the matching f5
  const LogisticBoth f5 = paper_f5();
  const ProductionFunction pf5{f5};
  std::vector<std::pair<double, double>> pts5;
  const double level = evaluate(pf5, 40.0, 50.0);
  for (double k = 20.0; k <= 80.0; k += 10.0) {
    // solve f5(K, L) = level for L inside D'
    const double r = level * f5.c * std::pow(kNK - k, f5.alpha) /
                     ((kNF - level) * std::pow(k, f5.alpha));
    const double w = std::pow(r, 1.0 / f5.beta);
    pts5.push_back({k, kNL * w / (1.0 + w)});
  }
  const auto rep5 = isoquant_preservation(logistic_model(), pf5, pts5, 1.3);
  CHECK(rep5.preserved);

  // non-co-isoquant input is rejected
  auto bad = pts;
  bad.front().second *= 1.5;
  CHECK_THROWS_AS(isoquant_preservation(expexp, cd, bad, 0.5),
                  PreconditionError);
}

namespace {

Generator logistic_three_field(double a, double b, double c) {
  Generator g;
  g.xi = [a](double k, double) { return a * k * (1.0 - k / kNK); };
  g.eta = [b](double, double l) { return b * l * (1.0 - l / kNL); };
  g.zeta = [c](double f) { return c * f * (1.0 - f / kNF); };
  return g;
}

}  // namespace

TEST_CASE("distribution integrability of the X3/X4 pair") {
  const Generator x3 = logistic_three_field(1.0, 1.0, 1.0);
  const Generator x4 = logistic_three_field(kA, kB, kC);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::vector<std::array<double, 3>> samples;
  for (int i = 0; i < 100; ++i)
    samples.push_back({u(rng) * kNK, u(rng) * kNL, u(rng) * kNF});
  CHECK(distribution_integrability(x3, x4, samples) <= 1e-5);

  // proportional fields commute exactly
  const Generator x2 = logistic_three_field(2.0, 2.0, 2.0);
  CHECK(distribution_integrability(x3, x2, samples) <= 1e-7);

  // negative control: a rotation does not commute with X3
  Generator rot;
  rot.xi = [](double, double l) { return l; };
  rot.eta = [](double k, double) { return -k; };
  CHECK(distribution_integrability(x3, rot, samples) > 1e-2);
}

TEST_CASE("characteristic reconstruction: exponential pair") {
  CharacteristicParams prm;
  prm.a = 2.0;
  prm.b = 0.5;
  prm.c = 1.0;
  const auto res = characteristic_reconstruct(
      CharacteristicSystem::ExponentialPair, prm, {80.0, 60.0, 50.0});
  CHECK(res.exponents_recovered);
  CHECK(res.alpha == doctest::Approx((1.0 - 0.5) / (2.0 - 0.5)).epsilon(1e-9));
  CHECK(res.beta == doctest::Approx((2.0 - 1.0) / (2.0 - 0.5)).epsilon(1e-9));
  CHECK(res.alpha + res.beta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.invariant_drift <= 1e-7);

  CharacteristicParams degen = prm;
  degen.b = degen.a;
  CHECK_THROWS_AS(characteristic_reconstruct(
                      CharacteristicSystem::ExponentialPair, degen,
                      {80.0, 60.0, 50.0}),
                  DomainError);
}

TEST_CASE("characteristic reconstruction: logistic pair") {
  CharacteristicParams prm;
  prm.a = 2.0;
  prm.b = 1.0;
  prm.c = 1.5;
  prm.n_k = kNK;
  prm.n_l = kNL;
  prm.n_f = kNF;
  const auto res = characteristic_reconstruct(
      CharacteristicSystem::LogisticPair, prm, {40.0, 60.0, 55.0});
  CHECK(res.exponents_recovered);
  CHECK(res.alpha == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(res.beta == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(res.invariant_drift <= 1e-7);

  // start outside the capacity box is rejected
  CHECK_THROWS_AS(characteristic_reconstruct(
                      CharacteristicSystem::LogisticPair, prm,
                      {kNK + 1.0, 60.0, 55.0}),
                  PreconditionError);
}

TEST_CASE("characteristic reconstruction: single exponential field") {
  CharacteristicParams prm;
  prm.a = 1.7;
  prm.b = 0.6;
  prm.c = 1.1;
  const auto res = characteristic_reconstruct(
      CharacteristicSystem::ExponentialSingle, prm, {10.0, 20.0, 5.0});
  CHECK_FALSE(res.exponents_recovered);
  CHECK(res.invariant_drift <= 1e-7);
}

TEST_CASE("wage share and modified wage share") {
  // intensive Cobb-Douglas y = x^0.6 has share 0.6 everywhere
  for (double x : {0.3, 1.0, 2.5}) {
    WageShareFrame fr;
    fr.x = x;
    fr.y = std::pow(x, 0.6);
    fr.y_x = 0.6 * std::pow(x, -0.4);
    CHECK(wage_share(fr) == doctest::Approx(0.6).epsilon(1e-12));
  }
  WageShareFrame flat{2.0, 3.0, 0.0, 1.0, 1.0};
  CHECK(wage_share(flat) == doctest::Approx(0.0));
  WageShareFrame bad = flat;
  bad.y = 0.0;
  CHECK_THROWS_AS(wage_share(bad), DomainError);

  WageShareFrame fr{0.5, 0.75, 0.0, 1.0, 1.0};
  fr.y_x = 0.6 * fr.y / fr.x;  // s_L = 0.6
  CHECK(modified_wage_share(fr) == doctest::Approx(1.2).epsilon(1e-12));

  WageShareFrame unit_x{1.0, 0.4, 2.0, 1.0, 1.0};
  CHECK(modified_wage_share(unit_x) == doctest::Approx(0.0));
  WageShareFrame pole{0.5, 1.0, 2.0, 1.0, 1.0};
  CHECK_THROWS_AS(modified_wage_share(pole), PoleError);

  // s'_L from the f5 intensive slice matches a finite-difference slope
  const LogisticBoth f5 = paper_f5();
  const ProductionFunction pf5{f5};
  const double k0 = 60.0;
  auto y_of_x = [&](double x) { return evaluate(pf5, k0, k0 * x) / k0; };
  const double x = 0.8;
  WageShareFrame slice;
  slice.x = x;
  slice.y = y_of_x(x);
  slice.y_x = fd_derivative(y_of_x, x);
  const double direct = slice.x * slice.y_x / slice.y;
  CHECK(wage_share(slice) == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("fundamental invariants: exponential case") {
  WageShareFrame fr;
  fr.gamma = 0.8;
  fr.lambda = 0.5;
  // self-similar curve y = x^{gamma/lambda} gives I1 = 1 identically
  for (double x : {0.4, 1.3, 2.2}) {
    fr.x = x;
    fr.y = std::pow(x, fr.gamma / fr.lambda);
    fr.y_x = (fr.gamma / fr.lambda) * std::pow(x, fr.gamma / fr.lambda - 1.0);
    const auto [i1, i2] = fundamental_invariants(InvariantCase::Exponential, fr);
    CHECK(i1 == doctest::Approx(1.0).epsilon(1e-12));
    (void)i2;
  }
  // invariance along prolonged exponential orbits
  fr.x = 0.7;
  fr.y = 1.9;
  fr.y_x = 0.35;
  const auto [i1_0, i2_0] =
      fundamental_invariants(InvariantCase::Exponential, fr);
  for (double t = -2.0; t <= 2.0; t += 0.25) {
    const auto moved = transport_exponential(fr, t);
    const auto [i1, i2] =
        fundamental_invariants(InvariantCase::Exponential, moved);
    CHECK(std::abs(i1 - i1_0) <= 1e-7 * (1.0 + std::abs(i1_0)));
    CHECK(std::abs(i2 - i2_0) <= 1e-7 * (1.0 + std::abs(i2_0)));
  }
}

TEST_CASE("fundamental invariants: logistic case") {
  WageShareFrame fr;
  fr.x = 0.3;
  fr.y = 0.55;
  fr.y_x = 0.8;
  fr.gamma = 0.4;
  fr.lambda = 0.9;

  const auto [i1, i2] = fundamental_invariants(InvariantCase::Logistic, fr);
  // the combination I1 I2 / (2 gamma)^2 reproduces the modified wage share
  CHECK(i1 * i2 / (4.0 * fr.gamma * fr.gamma) ==
        doctest::Approx(modified_wage_share(fr)).epsilon(1e-12));

  // both invariants are constant along prolonged logistic orbits
  for (double t = -2.0; t <= 2.0; t += 0.2) {
    const auto moved = transport_logistic(fr, t);
    const auto [j1, j2] = fundamental_invariants(InvariantCase::Logistic, moved);
    CHECK(std::abs(j1 - i1) <= 1e-7 * (1.0 + std::abs(i1)));
    CHECK(std::abs(j2 - i2) <= 1e-7 * (1.0 + std::abs(i2)));
  }

  WageShareFrame pole = fr;
  pole.x = 1.0;
  CHECK_THROWS_AS(fundamental_invariants(InvariantCase::Logistic, pole),
                  PoleError);
}

TEST_CASE("share invariance along orbits") {
  WageShareFrame fr;
  fr.x = 0.45;
  fr.y = 0.7;
  fr.y_x = 1.1;
  fr.gamma = 0.4;
  fr.lambda = 0.9;

  // classical share: exactly invariant under exponential growth
  const double s0 = wage_share(fr);
  for (double t = -3.0; t <= 3.0; t += 0.5) {
    const auto moved = transport_exponential(fr, t);
    CHECK(std::abs(wage_share(moved) - s0) <= 1e-8 * (1.0 + std::abs(s0)));
  }

  // modified share: invariant under the logistic action
  const double m0 = modified_wage_share(fr);
  double s_drift = 0.0;
  for (double t = -2.0; t <= 2.0; t += 0.2) {
    const auto moved = transport_logistic(fr, t);
    CHECK(std::abs(modified_wage_share(moved) - m0) <=
          1e-7 * (1.0 + std::abs(m0)));
    s_drift = std::max(s_drift, std::abs(wage_share(moved) - s0));
  }
  // negative control: the classical share drifts under logistic growth
  CHECK(s_drift > 1e-3);
}

TEST_CASE("slope transport matches a finite-difference cross-check") {
  // carry a whole curve y(x) = x^0.7 through the logistic action and
  // compare the transported slope with the slope of the transported curve
  WageShareFrame fr;
  fr.gamma = 0.6;
  fr.lambda = 1.1;
  const double t = 0.9;
  auto curve = [](double x) { return std::pow(x, 0.7); };
  const double x0 = 0.37;
  fr.x = x0;
  fr.y = curve(x0);
  fr.y_x = 0.7 * std::pow(x0, -0.3);
  const auto moved = transport_logistic(fr, t);

  // parametric image of the curve near x0
  const double h = 1e-6;
  WageShareFrame up = fr, dn = fr;
  up.x = x0 + h;
  up.y = curve(x0 + h);
  dn.x = x0 - h;
  dn.y = curve(x0 - h);
  const auto up_m = transport_logistic(up, t);
  const auto dn_m = transport_logistic(dn, t);
  const double slope_fd = (up_m.y - dn_m.y) / (up_m.x - dn_m.x);
  CHECK(moved.y_x == doctest::Approx(slope_fd).epsilon(1e-6));
}

TEST_CASE("f5 defining relation is preserved along G1 orbits") {
  const LogisticBoth f5 = paper_f5();
  const ProductionFunction pf5{f5};
  const GrowthModel model = logistic_model();
  auto phi = [&](double k, double l) {
    const double y = evaluate(pf5, k, l);
    return std::log(y / (kNF - y)) -
           f5.alpha * std::log(k / (kNK - k)) -
           f5.beta * std::log(l / (kNL - l));
  };
  const double ref = phi(30.0, 70.0);
  double k = 30.0, l = 70.0;
  for (double t = 0.25; t <= 2.0; t += 0.25) {
    const double kk = flow(model.law_k, k, t);
    const double ll = flow(model.law_l, l, t);
    CHECK(std::abs(phi(kk, ll) - ref) <= 1e-7);
  }
}

TEST_CASE("remark invariant is annihilated by the model generator") {
  const GrowthModel model = logistic_model();
  const Generator gen = model_generator(model);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double k = u(rng) * kNK;
    const double l = u(rng) * kNL;
    const double dk = fd_derivative(
        [&](double kk) { return remark_invariant(model, kk, l); }, k);
    const double dl = fd_derivative(
        [&](double ll) { return remark_invariant(model, k, ll); }, l);
    const double scale = std::abs(remark_invariant(model, k, l)) + 1.0;
    worst = std::max(worst,
                     std::abs(gen.xi(k, l) * dk + gen.eta(k, l) * dl) / scale);
  }
  CHECK(worst <= 1e-5);
}
