#include "logprod/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levmar.hpp"
#include "logprod/errors.hpp"
#include "logprod/growth.hpp"

namespace logprod {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * i / static_cast<double>(n - 1);
  return out;
}

struct BestStart {
  detail::LmOutcome outcome;
  bool any = false;
  int tried = 0;
  std::string diagnostics;
};

BestStart run_starts(const detail::ResidualFn& fn,
                     const std::vector<std::vector<double>>& starts,
                     std::size_t n_residuals, const detail::LmOptions& opt) {
  BestStart best;
  std::ostringstream diag;
  for (const auto& start : starts) {
    ++best.tried;
    detail::LmOutcome candidate;
    try {
      candidate = detail::levenberg_marquardt(fn, start, n_residuals, opt);
    } catch (const std::exception& e) {
      diag << "start#" << best.tried << " raised: " << e.what() << "; ";
      continue;
    }
    if (!std::isfinite(candidate.ssr)) {
      diag << "start#" << best.tried << " diverged; ";
      continue;
    }
    if (!best.any || candidate.ssr < best.outcome.ssr) {
      best.outcome = std::move(candidate);
      best.any = true;
    }
  }
  best.diagnostics = diag.str();
  return best;
}

FitResult finish_fit(const EconSeries& series, const BestStart& best,
                     std::vector<std::string> names, int free_params,
                     const detail::ResidualFn& fn) {
  if (!best.any)
    throw FitError("no start converged to a finite fit; " + best.diagnostics);
  FitResult out;
  out.parameter_names = std::move(names);
  out.parameters = best.outcome.params;
  out.free_parameters = free_params;
  out.iterations = best.outcome.iterations;
  out.converged = best.outcome.converged;
  out.starts_tried = best.tried;
  out.ssr = best.outcome.ssr;
  out.residuals.resize(series.size());
  fn(best.outcome.params, out.residuals);
  for (double& r : out.residuals) r = -r;  // store observed - fitted
  out.adjusted_r2 = adjusted_r2(out.residuals, series.y, free_params);
  return out;
}

}  // namespace

FitResult fit_f5(const EconSeries& series, const FitConfig& config) {
  series.validate();
  if (!config.constrain_shares)
    throw UnsupportedError(
        "fit_f5 frees (C, alpha) with beta = 1 - alpha; unconstrained "
        "exponents are not part of the reproduction setup");
  const int free_params = 2;
  if (static_cast<int>(series.size()) < free_params + 2)
    throw ValidationError("series too short for the number of parameters");

  bool kink = false;
  for (std::size_t i = 0; i < series.size(); ++i)
    kink = kink || series.k[i] >= config.n_k || series.l[i] >= config.n_l ||
           series.y[i] >= config.n_f;

  detail::ResidualFn fn = [&series, &config](const std::vector<double>& p,
                                             std::vector<double>& r) {
    LogisticBoth f;
    f.n_f = config.n_f;
    f.n_k = config.n_k;
    f.n_l = config.n_l;
    f.c = p[0];
    f.alpha = p[1];
    f.beta = 1.0 - p[1];
    const ProductionFunction pf{f};
    for (std::size_t i = 0; i < series.size(); ++i)
      r[i] = evaluate(pf, series.k[i], series.l[i]) - series.y[i];
  };

  std::vector<std::vector<double>> starts;
  if (!config.initial.empty()) {
    starts.push_back(config.initial);
  } else {
    for (double c0 : linspace(0.05, 2.0, 5))
      for (double a0 : linspace(0.05, 0.95, 5)) starts.push_back({c0, a0});
  }

  detail::LmOptions opt{config.tolerance, config.max_iterations};
  FitResult out = finish_fit(series, run_starts(fn, starts, series.size(), opt),
                             {"C", "alpha"}, free_params, fn);
  if (kink)
    out.notes.push_back(
        "kink warning: series touches or exceeds a fixed capacity; absolute "
        "values used as-is");
  return out;
}

FitResult fit_cobb_douglas(const EconSeries& series, const FitConfig& config) {
  series.validate();
  const bool free_beta = !config.constrain_shares;
  const int free_params = free_beta ? 3 : 2;
  if (static_cast<int>(series.size()) < free_params + 2)
    throw ValidationError("series too short for the number of parameters");

  detail::ResidualFn fn = [&series, free_beta](const std::vector<double>& p,
                                               std::vector<double>& r) {
    const double a = p[0];
    const double alpha = p[1];
    const double beta = free_beta ? p[2] : 1.0 - p[1];
    for (std::size_t i = 0; i < series.size(); ++i)
      r[i] = a * std::pow(series.k[i], alpha) * std::pow(series.l[i], beta) -
             series.y[i];
  };

  std::vector<std::vector<double>> starts;
  if (!config.initial.empty()) {
    starts.push_back(config.initial);
  } else {
    for (double a0 : {0.1, 0.5, 1.0, 2.0}) {
      for (double al0 : linspace(0.1, 1.5, 4)) {
        if (free_beta) {
          for (double be0 : {-0.5, 0.1, 0.6}) starts.push_back({a0, al0, be0});
        } else {
          starts.push_back({a0, al0});
        }
      }
    }
  }

  detail::LmOptions opt{config.tolerance, config.max_iterations};
  std::vector<std::string> names =
      free_beta ? std::vector<std::string>{"A", "alpha", "beta"}
                : std::vector<std::string>{"A", "alpha"};
  FitResult out = finish_fit(series, run_starts(fn, starts, series.size(), opt),
                             std::move(names), free_params, fn);
  const double alpha = out.parameters[1];
  const double beta = free_beta ? out.parameters[2] : 1.0 - alpha;
  if (alpha < 0.0 || beta < 0.0)
    out.notes.push_back(
        "economically inadmissible: a recovered output elasticity is negative");
  return out;
}

LogisticPathFit fit_logistic_path(const std::vector<double>& values,
                                  double capacity, bool capacity_free) {
  if (values.size() < 3)
    throw ValidationError("logistic path fit needs at least 3 points");
  for (double v : values)
    if (!(v > 0.0)) throw ValidationError("logistic path values must be positive");

  const auto model = [](double c, double rate, double cap, double t) {
    return cap * c / (c + (cap - c) * std::exp(-rate * t));
  };

  detail::ResidualFn fn = [&](const std::vector<double>& p,
                              std::vector<double>& r) {
    const double c = p[0];
    const double rate = p[1];
    const double cap = capacity_free ? p[2] : capacity;
    for (std::size_t i = 0; i < values.size(); ++i)
      r[i] = model(c, rate, cap, static_cast<double>(i)) - values[i];
  };

  const double v0 = std::max(values.front(), 1e-8);
  std::vector<std::vector<double>> starts;
  for (double rate0 : {0.01, 0.05, 0.1, 0.3, 1.0}) {
    if (capacity_free) {
      const double vmax = *std::max_element(values.begin(), values.end());
      for (double capf : {1.1, 1.5, 3.0})
        starts.push_back({v0, rate0, vmax * capf});
    } else {
      starts.push_back({v0, rate0});
    }
  }

  detail::LmOptions opt;
  const BestStart best = run_starts(fn, starts, values.size(), opt);
  if (!best.any)
    throw FitError("logistic path fit failed on every start; " +
                   best.diagnostics);

  LogisticPathFit out;
  out.initial_value = best.outcome.params[0];
  out.rate = best.outcome.params[1];
  out.capacity = capacity_free ? best.outcome.params[2] : capacity;
  out.capacity_was_free = capacity_free;
  out.ssr = best.outcome.ssr;
  out.iterations = best.outcome.iterations;
  out.converged = best.outcome.converged;
  out.degenerate = std::abs(out.rate) < 1e-8;
  return out;
}

Sigma1Series sigma1_series(const Sigma1Params& params,
                           const std::vector<int>& years) {
  if (years.empty()) throw ValidationError("empty year grid");
  Sigma1Series out;
  out.years = years;
  out.values.resize(years.size());
  out.pole.assign(years.size(), false);
  out.min_value = std::numeric_limits<double>::infinity();
  out.max_value = -std::numeric_limits<double>::infinity();

  const int first = years.front();
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < years.size(); ++i) {
    const double t = static_cast<double>(years[i] - first);
    double value;
    try {
      value = sigma1(params, t);
    } catch (const PoleError&) {
      out.pole[i] = true;
      out.values[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    out.values[i] = value;
    if (value < out.min_value) {
      out.min_value = value;
      out.min_year = years[i];
    }
    if (value > out.max_value) {
      out.max_value = value;
      out.max_year = years[i];
    }
    if (std::isfinite(previous) && previous != 0.0 && value != 0.0 &&
        std::signbit(previous) != std::signbit(value))
      out.sign_change_years.push_back(years[i]);
    previous = value;
  }
  return out;
}

double adjusted_r2(const std::vector<double>& residuals,
                   const std::vector<double>& observed, int free_parameters) {
  const std::size_t n = observed.size();
  if (residuals.size() != n)
    throw ValidationError("residual and observation lengths differ");
  if (static_cast<int>(n) <= free_parameters + 1)
    throw ValidationError("need n > p + 1 observations");
  double mean = 0.0;
  for (double v : observed) mean += v;
  mean /= static_cast<double>(n);
  double sst = 0.0, ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sst += (observed[i] - mean) * (observed[i] - mean);
    ssr += residuals[i] * residuals[i];
  }
  if (sst == 0.0)
    throw DomainError("adjusted R^2 undefined: observations have zero variance");
  const double dof = static_cast<double>(n - 1) /
                     static_cast<double>(n - free_parameters - 1);
  return 1.0 - (ssr / sst) * dof;
}

}  // namespace logprod
