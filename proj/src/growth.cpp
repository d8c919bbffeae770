#include "logprod/growth.hpp"

#include <cmath>

#include "logprod/errors.hpp"

namespace logprod {

GrowthLaw GrowthLaw::exponential(double rate) {
  if (!(rate > 0.0)) throw DomainError("growth rate must be positive");
  return GrowthLaw{GrowthKind::Exponential, rate, 0.0};
}

GrowthLaw GrowthLaw::logistic(double rate, double capacity) {
  if (!(rate > 0.0)) throw DomainError("growth rate must be positive");
  if (!(capacity > 0.0)) throw DomainError("carrying capacity must be positive");
  return GrowthLaw{GrowthKind::Logistic, rate, capacity};
}

double flow(const GrowthLaw& law, double x0, double t) {
  if (!(x0 > 0.0)) throw DomainError("flow requires a positive starting point");
  if (law.kind == GrowthKind::Exponential) {
    return x0 * std::exp(law.rate * t);
  }
  const double n = law.capacity;
  const double denom = x0 + (n - x0) * std::exp(-law.rate * t);
  if (!(denom > 0.0)) {
    throw DomainError(
        "logistic flow undefined: orbit above capacity escapes at this time");
  }
  return n * x0 / denom;
}

double infinitesimal(const GrowthLaw& law, double x) {
  if (!(x > 0.0)) throw DomainError("infinitesimal requires x > 0");
  if (law.kind == GrowthKind::Exponential) return law.rate * x;
  return law.rate * x * (1.0 - x / law.capacity);
}

double ShockSpec::window_end() const { return std::log(1.0 / c2) / rate; }

void ShockSpec::validate() const {
  if (!(capacity_in > 0.0 && capacity_out > 0.0))
    throw DomainError("shock capacities must be positive");
  if (!(scale > 0.0)) throw DomainError("shock constant C must be positive");
  if (!(c1 > 0.0)) throw DomainError("shock constant C1 must be positive");
  if (!(c2 > 0.0 && c2 < 1.0))
    throw DomainError("shock constant C2 must lie in (0, 1)");
  if (!(rate > 0.0)) throw DomainError("shock rate must be positive");
  if (exponent <= 0) throw DomainError("shock exponent must be a positive integer");
  if (exponent % 2 != 0 && !allow_odd_exponent)
    throw DomainError(
        "shock exponent must be even (set allow_odd_exponent to override)");
  if (!(shift_time > 0.0 && shift_time < window_end()))
    throw DomainError("shift time must lie inside the shock window");
}

double shock_branch_pre(const ShockSpec& spec, double t) {
  const double base = spec.c1 * std::exp(-spec.rate * t);
  return spec.capacity_out / (spec.scale * std::pow(base, spec.exponent) + 1.0);
}

double shock_branch_post(const ShockSpec& spec, double t) {
  const double base = spec.c2 * std::exp(spec.rate * t);
  return spec.capacity_out / (spec.scale * std::pow(base, spec.exponent) + 1.0);
}

double shock_response(const ShockSpec& spec, double t) {
  spec.validate();
  if (!(t > 0.0 && t < spec.window_end()))
    throw DomainError("time outside the shock window");
  return t < spec.shift_time ? shock_branch_pre(spec, t)
                             : shock_branch_post(spec, t);
}

double shock_gap(const ShockSpec& spec) {
  spec.validate();
  return shock_branch_post(spec, spec.shift_time) -
         shock_branch_pre(spec, spec.shift_time);
}

double shock_gap_printed(const ShockSpec& spec) {
  spec.validate();
  // As printed: C N_f (C2^a e^{a t1} - C1^a e^{-a t1}) over the product of
  // the two branch denominators, with the rate standing in for the branch
  // exponent throughout.
  const double a = spec.rate;
  const double t1 = spec.shift_time;
  const double num = spec.scale * spec.capacity_out *
                     (std::pow(spec.c2, a) * std::exp(a * t1) -
                      std::pow(spec.c1, a) * std::exp(-a * t1));
  const double d1 =
      spec.scale * std::pow(spec.c1 * std::exp(-a * t1), a) + 1.0;
  const double d2 = spec.scale * std::pow(spec.c2 * std::exp(a * t1), a) + 1.0;
  return num / (d1 * d2);
}

double shock_gap_printed_residual(const ShockSpec& spec) {
  return shock_gap_printed(spec) - shock_gap(spec);
}

}  // namespace logprod
