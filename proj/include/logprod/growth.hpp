#pragma once

#include <string>

namespace logprod {

enum class GrowthKind { Exponential, Logistic };

/// One-parameter growth law acting on a single factor. The exponential law
/// is x -> x e^{rt}; the logistic law saturates at its carrying capacity.
struct GrowthLaw {
  GrowthKind kind = GrowthKind::Exponential;
  double rate = 1.0;
  double capacity = 0.0;  // meaningful only for Logistic

  static GrowthLaw exponential(double rate);
  static GrowthLaw logistic(double rate, double capacity);
};

/// Group action of a law: position of x0 after time t.
///
/// The logistic closed form is a genuine group action on (0, capacity] and,
/// above the capacity, on the time interval where the denominator stays
/// positive (orbits starting above capacity blow up in finite backward
/// time). Outside that interval a DomainError is raised.
double flow(const GrowthLaw& law, double x0, double t);

/// Infinitesimal generator coefficient: d/dt flow(law, x, t) at t = 0.
double infinitesimal(const GrowthLaw& law, double x);

/// Pair of growth laws for capital and labor. Covers the four regimes
/// (exp,exp), (log,log), (log,exp), (exp,log).
struct GrowthModel {
  GrowthLaw law_k;
  GrowthLaw law_l;
};

/// Piecewise one-input shock construction: logistic approach up to the
/// shift time t1, then the second branch on the remaining window
/// (0, ln(1/c2)/rate).
struct ShockSpec {
  double capacity_in = 1.0;   // N_x
  double capacity_out = 1.0;  // N_f
  int exponent = 2;           // alpha; even unless allow_odd_exponent
  double scale = 1.0;         // C
  double c1 = 1.0;            // first-branch constant, > 0
  double c2 = 0.5;            // second-branch constant, in (0, 1)
  double rate = 1.0;          // a
  double shift_time = 0.0;    // t1, inside the window
  bool allow_odd_exponent = false;

  double window_end() const;  // ln(1/c2)/rate
  void validate() const;
};

/// Branch values y1 (pre-shift) and y2 (post-shift).
double shock_branch_pre(const ShockSpec& spec, double t);
double shock_branch_post(const ShockSpec& spec, double t);

/// Piecewise response: y1 for t < t1, y2 for t >= t1. t must lie inside
/// the open window (0, window_end()).
double shock_response(const ShockSpec& spec, double t);

/// Jump y2(t1) - y1(t1) between the branches at the shift time.
double shock_gap(const ShockSpec& spec);

/// The gap formula as printed in the source model (which mixes the branch
/// exponent with the rate). Kept for comparison; shock_gap() is the
/// ground truth and shock_gap_printed_residual() reports the difference.
double shock_gap_printed(const ShockSpec& spec);
double shock_gap_printed_residual(const ShockSpec& spec);

}  // namespace logprod
