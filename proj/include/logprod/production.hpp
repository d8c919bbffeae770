#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace logprod {

/// Y = A K^alpha L^beta.
struct CobbDouglas {
  double scale = 1.0;  // A
  double alpha = 0.5;
  double beta = 0.5;
};

/// Saturating S-shaped family Y = a1 u / (1 + a2 u), u = K^p L^{1-p}.
struct Capasso {
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double p = 2.0;
};

/// Two-factor logistic-growth function (f5):
///   Y = N_f u / (C |N_K - K|^alpha |N_L - L|^beta + u),  u = K^alpha L^beta.
struct LogisticBoth {
  double n_f = 1.0;
  double n_k = 1.0;
  double n_l = 1.0;
  double alpha = 0.5;
  double beta = 0.5;
  double c = 1.0;

  /// Constant-share construction from the factor/output growth rates
  /// (a, b, c_rate): alpha = (c-b)/(a-b), beta = (a-c)/(a-b), so that
  /// alpha + beta = 1 by construction.
  static LogisticBoth from_rates(double a, double b, double c_rate,
                                 double n_k, double n_l, double n_f,
                                 double c);
};

/// One-input analogue (f6): Y = N_f x^alpha / (C |N_x - x|^alpha + x^alpha).
/// evaluate() reads the single input from K and ignores L.
struct LogisticOne {
  double n_f = 1.0;
  double n_x = 1.0;
  double alpha = 2.0;
  double c = 1.0;
};

/// Capital-only logistic variant (f7).
struct LogisticKOnly {
  double n_f = 1.0;
  double n_k = 1.0;
  double alpha = 0.5;
  double beta = 0.5;
  double c = 1.0;
};

/// Labor-only logistic variant (f8).
struct LogisticLOnly {
  double n_f = 1.0;
  double n_l = 1.0;
  double alpha = 0.5;
  double beta = 0.5;
  double c = 1.0;
};

/// Wage-share-compatible function (f9): Y = K L^{c3} / (L^{c3} + c4 |L-K|^{c3}).
/// Homogeneous of degree one.
struct WageShareCompatible {
  double c3 = 0.5;  // in (0, 1)
  double c4 = 1.0;
};

/// Exponential output forced onto logistic factors (f10, unit capacities):
///   Y = c1 (K/|1-K|)^{c2} (L/|1-L|)^{c3}.  Singular at K = 1 and L = 1.
struct ForcedExponential {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
};

using ProductionFunction =
    std::variant<CobbDouglas, Capasso, LogisticBoth, LogisticOne,
                 LogisticKOnly, LogisticLOnly, WageShareCompatible,
                 ForcedExponential>;

/// Family tag for reports and dispatch.
std::string family_name(const ProductionFunction& f);

/// Closed-form output at (K, L). Throws SingularityError when a denominator
/// vanishes (f10 at K=1 or L=1; negative C crossing zero).
double evaluate(const ProductionFunction& f, double k, double l);

/// Limiting output N_f / (C + 1) as both factors grow without bound.
/// Defined for LogisticBoth and LogisticOne only.
double steady_state(const ProductionFunction& f);

struct MarginalProducts {
  double mp_k = 0.0;
  double mp_l = 0.0;
  bool k_boundary = false;  // one-sided stencil used (kink at a capacity)
  bool l_boundary = false;
};

/// Marginal productivities. WageShareCompatible uses its closed forms
/// (with the sign of MP_L fixed to match the finite-difference oracle);
/// every other family uses centered differences with the fd_step policy.
MarginalProducts marginal_products(const ProductionFunction& f, double k,
                                   double l);

/// Marginal rate of technical substitution MP_K / MP_L.
double mrts(const ProductionFunction& f, double k, double l);

/// log(f(rK, rL) / f(K, L)) / log(r): the local scaling exponent; equals 1
/// for degree-one homogeneous families.
double returns_to_scale_probe(const ProductionFunction& f, double k, double l,
                              double r);

struct InadaReport {
  int samples = 0;
  int failures = 0;                 // singular/undefined evaluations on the grid
  bool marginals_positive = true;   // f_K > 0 and f_L > 0 everywhere sampled
  bool marginals_diminishing = true;  // f_KK < 0 and f_LL < 0 everywhere sampled
  bool concavity_sign_change = false;  // f_KK changes sign (S-shape signature)
  bool constant_returns = true;     // scaling exponent 1 within 1e-8
  bool k_limit_trend = true;        // f_K large as K -> 0+, vanishing for large K
  bool l_limit_trend = true;
  bool divergence_flagged = false;  // evaluation blew up or hit a singular locus
  std::vector<std::string> notes;

  bool all_inada_hold() const {
    return marginals_positive && marginals_diminishing && constant_returns &&
           k_limit_trend && l_limit_trend && !divergence_flagged;
  }
};

/// Samples the four neoclassical conditions over the given interior grid.
/// Report-only: never throws on singular samples, it flags them.
InadaReport inada_probe(const ProductionFunction& f,
                        const std::vector<std::pair<double, double>>& grid);

/// Parameters of the elasticity-of-substitution series: logistic factor
/// paths K(t), L(t) with initial values c1, c2, rates a, b, and capacities.
struct Sigma1Params {
  double c1 = 0.203;
  double c2 = 0.432;
  double a = 0.129;
  double b = 0.118;
  double n_k = 150.0;
  double n_l = 150.0;
  /// The printed formula divides by K-1 and L-1 (unit-capacity artifacts
  /// kept literally). Set true to use K-N_K and L-N_L instead.
  bool capacity_relative = false;
};

/// Elasticity of substitution along the logistic factor paths at time t:
///   (Lh - Kh) / (Lh - Kh - Kdot/(K-1) - Ldot/(L-1)),  Kh = Kdot/K.
/// Throws PoleError on the K=1 / L=1 poles (or capacity poles when
/// capacity_relative).
double sigma1(const Sigma1Params& params, double t);

/// Factor paths entering sigma1, exposed for diagnostics.
std::pair<double, double> sigma1_factors(const Sigma1Params& params, double t);

}  // namespace logprod
