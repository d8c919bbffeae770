#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "logprod/growth.hpp"
#include "logprod/production.hpp"

namespace logprod {

/// Infinitesimal generator on the factor plane, optionally prolonged to the
/// output direction (three-variable fields used for the simultaneous-
/// holotheticity distribution checks).
struct Generator {
  std::function<double(double, double)> xi;   // coefficient of d/dK
  std::function<double(double, double)> eta;  // coefficient of d/dL
  std::function<double(double)> zeta;         // optional coefficient of d/df
};

/// Generator whose flow is the given growth model.
Generator model_generator(const GrowthModel& model);

struct HolotheticityReport {
  double max_residual = 0.0;
  int samples_used = 0;
  int samples_skipped = 0;  // kink loci, excluded by a 1e-3 relative margin
};

/// Max over samples of |xi f_K + eta f_L - H(f)| with finite-difference
/// partials. Samples within a relative margin of a kink locus are skipped
/// and counted.
HolotheticityReport holotheticity_residual(
    const Generator& gen, const ProductionFunction& f,
    const std::function<double(double)>& h_of_f,
    const std::vector<std::pair<double, double>>& samples);

struct IsoquantReport {
  double input_level = 0.0;
  double image_level = 0.0;
  double max_rel_spread = 0.0;
  bool preserved = false;
};

/// Flows co-isoquant points by t and checks the images again share one
/// output level (within rel_tol). Throws PreconditionError when the input
/// points are not on a common isoquant to 1e-9.
IsoquantReport isoquant_preservation(
    const GrowthModel& model, const ProductionFunction& f,
    const std::vector<std::pair<double, double>>& level_points, double t,
    double rel_tol = 1e-6);

/// Max norm over samples of the Lie bracket [X3, X4] computed by
/// finite-difference Jacobians in (K, L, f) space.
double distribution_integrability(
    const Generator& x3, const Generator& x4,
    const std::vector<std::array<double, 3>>& samples);

enum class CharacteristicSystem {
  ExponentialSingle,  // dK/aK = dL/bL = df/cf
  ExponentialPair,    // the X1/X2 distribution (Cobb-Douglas combination)
  LogisticPair        // the X3/X4 distribution (f5 defining relation)
};

struct CharacteristicParams {
  double a = 2.0;
  double b = 0.5;
  double c = 1.0;
  double n_k = 1.0;  // capacities, LogisticPair only
  double n_l = 1.0;
  double n_f = 1.0;
};

struct ReconstructionResult {
  bool exponents_recovered = false;
  double alpha = 0.0;  // recovered from the orbit data (pair systems)
  double beta = 0.0;
  double invariant_drift = 0.0;  // max |invariant - initial| along orbits
};

/// Integrates the characteristic system with an adaptive Runge-Kutta pair
/// from the given interior start point, verifies the closed-form invariant
/// stays constant along the trajectory, and (for the pair systems) solves
/// the orbit log-increments for the elasticity exponents.
ReconstructionResult characteristic_reconstruct(
    CharacteristicSystem system, const CharacteristicParams& params,
    std::array<double, 3> start, double span = 1.0, double rel_tol = 1e-10);

/// Point of the prolonged projective space: intensive coordinates
/// x = L/K, y = Y/K, slope y_x, and the acting rates.
struct WageShareFrame {
  double x = 1.0;
  double y = 1.0;
  double y_x = 0.0;
  double gamma = 1.0;   // rate acting on y
  double lambda = 1.0;  // rate acting on x
};

/// Classical wage share s_L = x y_x / y.
double wage_share(const WageShareFrame& frame);

/// Modified wage share s'_L = x |x-1| y_x / (y |y-1|). Exactly zero at
/// x = 1; PoleError at y = 1 with x != 1.
double modified_wage_share(const WageShareFrame& frame);

enum class InvariantCase { Exponential, Logistic };

/// The two fundamental differential invariants of the prolonged action.
/// Exponential: I1 = y x^{-g/l}, I2 = y_x x^{(l-g)/l}.
/// Logistic (unit capacities): I1 = -((y-1)/y) |x/(x-1)|^{g/l},
///   I2 = (2 g x)^2 (y_x/(y-1)^2) |(1-x)/x|^{(g+l)/l}.
std::pair<double, double> fundamental_invariants(InvariantCase which,
                                                 const WageShareFrame& frame);

/// Prolonged exponential action on (x, y, y_x).
WageShareFrame transport_exponential(const WageShareFrame& frame, double t);

/// Prolonged unit-capacity logistic action on (x, y, y_x); the slope is
/// carried by the exact chain rule of the closed-form flows.
WageShareFrame transport_logistic(const WageShareFrame& frame, double t);

/// Invariant of the factor-plane action with output f6 = K, input x = L:
/// I(K, L) = (L/|N_L - L|)^{rate_K/rate_L} (N_K - K)/K, annihilated by the
/// model generator.
double remark_invariant(const GrowthModel& model, double k, double l);

}  // namespace logprod
