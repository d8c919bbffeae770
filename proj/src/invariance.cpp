#include "logprod/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logprod/errors.hpp"
#include "logprod/numeric.hpp"
#include "logprod/ode.hpp"

namespace logprod {

Generator model_generator(const GrowthModel& model) {
  Generator gen;
  gen.xi = [law = model.law_k](double k, double) {
    return infinitesimal(law, k);
  };
  gen.eta = [law = model.law_l](double, double l) {
    return infinitesimal(law, l);
  };
  return gen;
}

namespace {

// Kink loci of the absolute-value factors, for sample exclusion.
std::vector<std::pair<int, double>> kink_margins(const ProductionFunction& f) {
  std::vector<std::pair<int, double>> loci;  // (axis, locus): axis 0 = K, 1 = L
  if (const auto* g = std::get_if<LogisticBoth>(&f)) {
    loci.push_back({0, g->n_k});
    loci.push_back({1, g->n_l});
  } else if (const auto* g = std::get_if<LogisticOne>(&f)) {
    loci.push_back({0, g->n_x});
  } else if (const auto* g = std::get_if<LogisticKOnly>(&f)) {
    loci.push_back({0, g->n_k});
  } else if (const auto* g = std::get_if<LogisticLOnly>(&f)) {
    loci.push_back({1, g->n_l});
  } else if (std::get_if<ForcedExponential>(&f)) {
    loci.push_back({0, 1.0});
    loci.push_back({1, 1.0});
  }
  return loci;
}

bool near_kink(const std::vector<std::pair<int, double>>& loci, double k,
               double l) {
  for (const auto& [axis, locus] : loci) {
    const double x = axis == 0 ? k : l;
    if (std::abs(x - locus) < 1e-3 * std::max(1.0, std::abs(locus)))
      return true;
  }
  return false;
}

}  // namespace

HolotheticityReport holotheticity_residual(
    const Generator& gen, const ProductionFunction& f,
    const std::function<double(double)>& h_of_f,
    const std::vector<std::pair<double, double>>& samples) {
  HolotheticityReport rep;
  const auto loci = kink_margins(f);
  for (const auto& [k, l] : samples) {
    if (near_kink(loci, k, l)) {
      ++rep.samples_skipped;
      continue;
    }
    const double fk = fd_derivative(
        [&](double kk) { return evaluate(f, kk, l); }, k);
    const double fl = fd_derivative(
        [&](double ll) { return evaluate(f, k, ll); }, l);
    const double value = evaluate(f, k, l);
    const double residual =
        gen.xi(k, l) * fk + gen.eta(k, l) * fl - h_of_f(value);
    rep.max_residual = std::max(rep.max_residual, std::abs(residual));
    ++rep.samples_used;
  }
  return rep;
}

IsoquantReport isoquant_preservation(
    const GrowthModel& model, const ProductionFunction& f,
    const std::vector<std::pair<double, double>>& level_points, double t,
    double rel_tol) {
  if (level_points.empty())
    throw PreconditionError("isoquant check needs at least one point");

  double level = evaluate(f, level_points.front().first,
                          level_points.front().second);
  for (const auto& [k, l] : level_points) {
    const double y = evaluate(f, k, l);
    if (!nearly_equal(y, level, 1e-9))
      throw PreconditionError("input points are not on a common isoquant");
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& [k, l] : level_points) {
    const double y =
        evaluate(f, flow(model.law_k, k, t), flow(model.law_l, l, t));
    lo = std::min(lo, y);
    hi = std::max(hi, y);
    sum += y;
  }
  IsoquantReport rep;
  rep.input_level = level;
  rep.image_level = sum / static_cast<double>(level_points.size());
  rep.max_rel_spread = (hi - lo) / std::max(1e-300, std::abs(rep.image_level));
  rep.preserved = rep.max_rel_spread <= rel_tol;
  return rep;
}

namespace {

std::array<double, 3> eval_field(const Generator& g,
                                 const std::array<double, 3>& p) {
  return {g.xi(p[0], p[1]), g.eta(p[0], p[1]),
          g.zeta ? g.zeta(p[2]) : 0.0};
}

}  // namespace

double distribution_integrability(
    const Generator& x3, const Generator& x4,
    const std::vector<std::array<double, 3>>& samples) {
  double worst = 0.0;
  for (const auto& p : samples) {
    // J[i][j] = d(field_i)/d(coord_j), centered differences.
    std::array<std::array<double, 3>, 3> j3{}, j4{};
    for (int j = 0; j < 3; ++j) {
      const double h = fd_step(p[j]);
      auto up = p, dn = p;
      up[j] += h;
      dn[j] -= h;
      const auto f3u = eval_field(x3, up), f3d = eval_field(x3, dn);
      const auto f4u = eval_field(x4, up), f4d = eval_field(x4, dn);
      for (int i = 0; i < 3; ++i) {
        j3[i][j] = (f3u[i] - f3d[i]) / (2.0 * h);
        j4[i][j] = (f4u[i] - f4d[i]) / (2.0 * h);
      }
    }
    const auto v3 = eval_field(x3, p);
    const auto v4 = eval_field(x4, p);
    for (int i = 0; i < 3; ++i) {
      double bracket = 0.0;
      for (int j = 0; j < 3; ++j)
        bracket += v3[j] * j4[i][j] - v4[j] * j3[i][j];
      worst = std::max(worst, std::abs(bracket));
    }
  }
  return worst;
}

namespace {

// Log coordinates in which the characteristic fields are constant:
// plain logs for the exponential systems, logit-style logs x/(N-x) for the
// logistic pair.
struct LogChart {
  std::function<double(double, double)> to_log;  // (value, capacity)
};

double plain_log(double x, double) { return std::log(x); }
double saturating_log(double x, double n) { return std::log(x / (n - x)); }

struct OrbitSample {
  std::array<double, 3> log_delta;  // increments in chart coordinates
};

OrbitSample run_orbit(const std::array<double, 3>& weights,
                      const CharacteristicParams& prm, bool logistic,
                      const std::array<double, 3>& start, double span,
                      double rel_tol) {
  const std::array<double, 3> caps{prm.n_k, prm.n_l, prm.n_f};
  if (logistic) {
    for (int i = 0; i < 3; ++i) {
      if (!(start[i] > 0.0 && start[i] < caps[i]))
        throw PreconditionError(
            "logistic characteristic start must lie below the capacities");
    }
  }
  OdeField field = [&](const std::vector<double>& y,
                       std::vector<double>& dy) {
    for (int i = 0; i < 3; ++i) {
      dy[i] = logistic ? weights[i] * y[i] * (1.0 - y[i] / caps[i])
                       : weights[i] * y[i];
    }
  };
  OdeOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol * 1e-2;
  const std::vector<double> y0{start[0], start[1], start[2]};
  const std::vector<double> y1 = integrate_adaptive(field, y0, 0.0, span, opt);

  auto chart = logistic ? saturating_log : plain_log;
  OrbitSample s;
  for (int i = 0; i < 3; ++i)
    s.log_delta[i] = chart(y1[i], caps[i]) - chart(y0[i], caps[i]);
  return s;
}

// Drift of the invariant combination f-chart - alpha*K-chart - beta*L-chart
// along an orbit, sampled at interior times.
double invariant_drift(const std::array<double, 3>& weights,
                       const CharacteristicParams& prm, bool logistic,
                       const std::array<double, 3>& start, double alpha,
                       double beta, double span, double rel_tol) {
  const std::array<double, 3> caps{prm.n_k, prm.n_l, prm.n_f};
  auto chart = logistic ? saturating_log : plain_log;
  auto phi = [&](const std::vector<double>& p) {
    return chart(p[2], caps[2]) - alpha * chart(p[0], caps[0]) -
           beta * chart(p[1], caps[1]);
  };
  OdeField field = [&](const std::vector<double>& y,
                       std::vector<double>& dy) {
    for (int i = 0; i < 3; ++i) {
      dy[i] = logistic ? weights[i] * y[i] * (1.0 - y[i] / caps[i])
                       : weights[i] * y[i];
    }
  };
  OdeOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol * 1e-2;
  std::vector<double> y{start[0], start[1], start[2]};
  const double ref = phi(y);
  double worst = 0.0;
  const int checkpoints = 8;
  for (int i = 1; i <= checkpoints; ++i) {
    const double t0 = span * (i - 1) / checkpoints;
    const double t1 = span * i / checkpoints;
    y = integrate_adaptive(field, y, t0, t1, opt);
    worst = std::max(worst, std::abs(phi(y) - ref));
  }
  return worst;
}

}  // namespace

ReconstructionResult characteristic_reconstruct(
    CharacteristicSystem system, const CharacteristicParams& prm,
    std::array<double, 3> start, double span, double rel_tol) {
  ReconstructionResult out;
  const bool logistic = system == CharacteristicSystem::LogisticPair;

  if (system == CharacteristicSystem::ExponentialSingle) {
    // One orbit of (aK, bL, cf); check its two characteristic invariants
    // b logK - a logL and c logK - a logf.
    const std::array<double, 3> w{prm.a, prm.b, prm.c};
    OdeField field = [&](const std::vector<double>& y,
                         std::vector<double>& dy) {
      for (int i = 0; i < 3; ++i) dy[i] = w[i] * y[i];
    };
    OdeOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = rel_tol * 1e-2;
    std::vector<double> y{start[0], start[1], start[2]};
    const double i1_ref = prm.b * std::log(y[0]) - prm.a * std::log(y[1]);
    const double i2_ref = prm.c * std::log(y[0]) - prm.a * std::log(y[2]);
    double worst = 0.0;
    for (int i = 1; i <= 8; ++i) {
      y = integrate_adaptive(field, y, span * (i - 1) / 8.0, span * i / 8.0,
                             opt);
      const double i1 = prm.b * std::log(y[0]) - prm.a * std::log(y[1]);
      const double i2 = prm.c * std::log(y[0]) - prm.a * std::log(y[2]);
      worst = std::max({worst, std::abs(i1 - i1_ref), std::abs(i2 - i2_ref)});
    }
    out.invariant_drift = worst;
    return out;
  }

  if (prm.a == prm.b)
    throw DomainError("degenerate pair system: a == b leaves the exponents undefined");

  // Two orbits: the unweighted field and the (a, b, c)-weighted field.
  // In chart coordinates each orbit contributes one linear equation
  // df = alpha dK + beta dL for the exponents.
  const OrbitSample s1 =
      run_orbit({1.0, 1.0, 1.0}, prm, logistic, start, span, rel_tol);
  const OrbitSample s2 =
      run_orbit({prm.a, prm.b, prm.c}, prm, logistic, start, span, rel_tol);

  const double det = s1.log_delta[0] * s2.log_delta[1] -
                     s1.log_delta[1] * s2.log_delta[0];
  if (std::abs(det) < 1e-14)
    throw DomainError("characteristic orbits are degenerate (singular system)");
  out.alpha = (s1.log_delta[2] * s2.log_delta[1] -
               s1.log_delta[1] * s2.log_delta[2]) /
              det;
  out.beta = (s1.log_delta[0] * s2.log_delta[2] -
              s1.log_delta[2] * s2.log_delta[0]) /
             det;
  out.exponents_recovered = true;

  const double drift1 = invariant_drift({1.0, 1.0, 1.0}, prm, logistic, start,
                                        out.alpha, out.beta, span, rel_tol);
  const double drift2 = invariant_drift({prm.a, prm.b, prm.c}, prm, logistic,
                                        start, out.alpha, out.beta, span,
                                        rel_tol);
  out.invariant_drift = std::max(drift1, drift2);
  return out;
}

double wage_share(const WageShareFrame& frame) {
  if (!(frame.y > 0.0)) throw DomainError("wage share requires y > 0");
  if (!(frame.x > 0.0)) throw DomainError("wage share requires x > 0");
  return frame.x * frame.y_x / frame.y;
}

double modified_wage_share(const WageShareFrame& frame) {
  if (!(frame.y > 0.0)) throw DomainError("modified wage share requires y > 0");
  if (frame.x == 1.0) return 0.0;
  if (frame.y == 1.0)
    throw PoleError("modified wage share pole at y = 1 with x != 1");
  return frame.x * std::abs(frame.x - 1.0) * frame.y_x /
         (frame.y * std::abs(frame.y - 1.0));
}

std::pair<double, double> fundamental_invariants(InvariantCase which,
                                                 const WageShareFrame& f) {
  if (!(f.lambda > 0.0) || !(f.gamma > 0.0))
    throw DomainError("invariants require positive rates");
  if (which == InvariantCase::Exponential) {
    const double i1 = f.y * std::pow(f.x, -f.gamma / f.lambda);
    const double i2 =
        f.y_x * std::pow(f.x, (f.lambda - f.gamma) / f.lambda);
    return {i1, i2};
  }
  if (std::abs(f.x - 1.0) < 1e-12 || std::abs(f.y - 1.0) < 1e-12)
    throw PoleError("logistic invariants are singular at x = 1 or y = 1");
  const double i1 = -((f.y - 1.0) / f.y) *
                    pow_abs(f.x / (f.x - 1.0), f.gamma / f.lambda);
  const double i2 = (2.0 * f.gamma * f.x) * (2.0 * f.gamma * f.x) *
                    (f.y_x / ((f.y - 1.0) * (f.y - 1.0))) *
                    pow_abs((1.0 - f.x) / f.x,
                            (f.gamma + f.lambda) / f.lambda);
  return {i1, i2};
}

WageShareFrame transport_exponential(const WageShareFrame& f, double t) {
  WageShareFrame out = f;
  out.x = f.x * std::exp(f.lambda * t);
  out.y = f.y * std::exp(f.gamma * t);
  out.y_x = f.y_x * std::exp((f.gamma - f.lambda) * t);
  return out;
}

WageShareFrame transport_logistic(const WageShareFrame& f, double t) {
  // Unit-capacity logistic maps; the slope transforms by psi'(y)/phi'(x).
  const double ex = std::exp(-f.lambda * t);
  const double ey = std::exp(-f.gamma * t);
  const double dx = f.x + (1.0 - f.x) * ex;
  const double dy = f.y + (1.0 - f.y) * ey;
  if (!(dx > 0.0) || !(dy > 0.0))
    throw DomainError("logistic transport undefined at this time");
  WageShareFrame out = f;
  out.x = f.x / dx;
  out.y = f.y / dy;
  out.y_x = f.y_x * (ey / (dy * dy)) / (ex / (dx * dx));
  return out;
}

double remark_invariant(const GrowthModel& model, double k, double l) {
  if (model.law_k.kind != GrowthKind::Logistic ||
      model.law_l.kind != GrowthKind::Logistic)
    throw PreconditionError("remark invariant needs logistic laws on both factors");
  const double exponent = model.law_k.rate / model.law_l.rate;
  const double n_k = model.law_k.capacity;
  const double n_l = model.law_l.capacity;
  return pow_abs(l / (n_l - l), exponent) * (n_k - k) / k;
}

}  // namespace logprod
