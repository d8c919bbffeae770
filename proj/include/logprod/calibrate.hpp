#pragma once

#include <string>
#include <vector>

#include "logprod/production.hpp"
#include "logprod/series.hpp"

namespace logprod {

/// Least-squares configuration shared by the production-function fits.
/// The default reproduction setting fixes the capacities at
/// N_f = 120, N_K = N_L = 150 and constrains beta = 1 - alpha.
struct FitConfig {
  double n_f = 120.0;
  double n_k = 150.0;
  double n_l = 150.0;
  bool constrain_shares = true;  // beta = 1 - alpha
  std::vector<double> initial;   // optional single start; empty = multi-start
  double tolerance = 1e-10;      // relative cost decrease
  int max_iterations = 500;
};

struct FitResult {
  std::vector<std::string> parameter_names;
  std::vector<double> parameters;
  std::vector<double> residuals;  // observed - fitted
  double ssr = 0.0;
  double adjusted_r2 = 0.0;
  int free_parameters = 0;
  int iterations = 0;
  bool converged = false;
  int starts_tried = 0;
  std::vector<std::string> notes;  // e.g. inadmissible negative elasticity
};

/// Fits Y = f5(K, L) in levels. Free parameters (C, alpha) with
/// beta = 1 - alpha; multi-start over the 5x5 grid
/// (C, alpha) in [0.05, 2] x [0.05, 0.95] unless config.initial is given.
/// Values at or beyond a fixed capacity produce a kink warning note.
FitResult fit_f5(const EconSeries& series, const FitConfig& config);

/// Fits Y = A K^alpha L^beta in levels. Free (A, alpha) with beta = 1-alpha
/// when config.constrain_shares, otherwise free (A, alpha, beta). A
/// recovered negative elasticity is flagged as economically inadmissible.
FitResult fit_cobb_douglas(const EconSeries& series, const FitConfig& config);

struct LogisticPathFit {
  double initial_value = 0.0;  // C_i in the closed form
  double rate = 0.0;
  double capacity = 0.0;
  double ssr = 0.0;
  bool capacity_was_free = false;
  bool degenerate = false;  // rate collapsed to ~0 (constant series)
  int iterations = 0;
  bool converged = false;
};

/// Fits x(t) = N c / (c + (N - c) e^{-rate t}) to values at t = 0..n-1.
LogisticPathFit fit_logistic_path(const std::vector<double>& values,
                                  double capacity, bool capacity_free = false);

struct Sigma1Series {
  std::vector<int> years;
  std::vector<double> values;
  std::vector<bool> pole;            // year skipped because of a pole
  double min_value = 0.0;
  double max_value = 0.0;
  int min_year = 0;
  int max_year = 0;
  std::vector<int> sign_change_years;  // first year of each sign flip
};

/// Elasticity-of-substitution series on a year grid; t = year - first_year.
Sigma1Series sigma1_series(const Sigma1Params& params,
                           const std::vector<int>& years);

/// 1 - (SSR/SST)(n-1)/(n-p-1), SST about the mean of observations.
double adjusted_r2(const std::vector<double>& residuals,
                   const std::vector<double>& observed, int free_parameters);

}  // namespace logprod
