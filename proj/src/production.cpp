#include "logprod/production.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logprod/errors.hpp"
#include "logprod/growth.hpp"
#include "logprod/numeric.hpp"

namespace logprod {

namespace {

void require_positive_inputs(double k, double l) {
  if (!(k > 0.0) || !(l > 0.0))
    throw DomainError("factors must be strictly positive");
}

std::string locus_string(double k, double l) {
  return "K=" + std::to_string(k) + ", L=" + std::to_string(l);
}

double checked_ratio(double numerator, double denominator, double k, double l,
                     const char* what) {
  if (!(denominator > 0.0) || !std::isfinite(denominator)) {
    throw SingularityError(std::string(what) + " denominator vanishes",
                           locus_string(k, l));
  }
  return numerator / denominator;
}

}  // namespace

LogisticBoth LogisticBoth::from_rates(double a, double b, double c_rate,
                                      double n_k, double n_l, double n_f,
                                      double c) {
  if (a == b) throw DomainError("degenerate rates: a == b");
  LogisticBoth f;
  f.alpha = (c_rate - b) / (a - b);
  f.beta = (a - c_rate) / (a - b);
  f.n_k = n_k;
  f.n_l = n_l;
  f.n_f = n_f;
  f.c = c;
  return f;
}

std::string family_name(const ProductionFunction& f) {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CobbDouglas>) return "cobb-douglas";
        if constexpr (std::is_same_v<T, Capasso>) return "capasso";
        if constexpr (std::is_same_v<T, LogisticBoth>) return "f5";
        if constexpr (std::is_same_v<T, LogisticOne>) return "f6";
        if constexpr (std::is_same_v<T, LogisticKOnly>) return "f7";
        if constexpr (std::is_same_v<T, LogisticLOnly>) return "f8";
        if constexpr (std::is_same_v<T, WageShareCompatible>) return "f9";
        if constexpr (std::is_same_v<T, ForcedExponential>) return "f10";
      },
      f);
}

double evaluate(const ProductionFunction& f, double k, double l) {
  require_positive_inputs(k, l);
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CobbDouglas>) {
          return g.scale * std::pow(k, g.alpha) * std::pow(l, g.beta);
        } else if constexpr (std::is_same_v<T, Capasso>) {
          const double u = std::pow(k, g.p) * std::pow(l, 1.0 - g.p);
          return checked_ratio(g.alpha1 * u, 1.0 + g.alpha2 * u, k, l,
                               "capasso");
        } else if constexpr (std::is_same_v<T, LogisticBoth>) {
          const double u = std::pow(k, g.alpha) * std::pow(l, g.beta);
          const double v = pow_abs(g.n_k - k, g.alpha) *
                           pow_abs(g.n_l - l, g.beta);
          return checked_ratio(g.n_f * u, g.c * v + u, k, l, "f5");
        } else if constexpr (std::is_same_v<T, LogisticOne>) {
          const double u = std::pow(k, g.alpha);
          const double v = pow_abs(g.n_x - k, g.alpha);
          return checked_ratio(g.n_f * u, g.c * v + u, k, l, "f6");
        } else if constexpr (std::is_same_v<T, LogisticKOnly>) {
          const double u = std::pow(k, g.alpha) * std::pow(l, g.beta);
          const double v = pow_abs(g.n_k - k, g.alpha);
          return checked_ratio(g.n_f * u, g.c * v + u, k, l, "f7");
        } else if constexpr (std::is_same_v<T, LogisticLOnly>) {
          const double u = std::pow(k, g.alpha) * std::pow(l, g.beta);
          const double v = pow_abs(g.n_l - l, g.beta);
          return checked_ratio(g.n_f * u, g.c * v + u, k, l, "f8");
        } else if constexpr (std::is_same_v<T, WageShareCompatible>) {
          const double lc = std::pow(l, g.c3);
          const double denom = lc + g.c4 * pow_abs(l - k, g.c3);
          return checked_ratio(k * lc, denom, k, l, "f9");
        } else {  // ForcedExponential
          if (k == 1.0) throw SingularityError("f10 singular", "K=1");
          if (l == 1.0) throw SingularityError("f10 singular", "L=1");
          return g.c1 * std::pow(k / std::abs(1.0 - k), g.c2) *
                 std::pow(l / std::abs(1.0 - l), g.c3);
        }
      },
      f);
}

double steady_state(const ProductionFunction& f) {
  double n_f = 0.0, c = 0.0;
  if (const auto* both = std::get_if<LogisticBoth>(&f)) {
    n_f = both->n_f;
    c = both->c;
  } else if (const auto* one = std::get_if<LogisticOne>(&f)) {
    n_f = one->n_f;
    c = one->c;
  } else {
    throw UnsupportedError("steady state is defined for the f5/f6 families only");
  }
  if (c == -1.0) throw DomainError("steady state undefined: C = -1");
  return n_f / (c + 1.0);
}

namespace {

// Kink loci in the K (first) and L (second) direction, if any.
struct KinkLoci {
  double k = std::numeric_limits<double>::quiet_NaN();
  double l = std::numeric_limits<double>::quiet_NaN();
};

KinkLoci kink_loci(const ProductionFunction& f) {
  KinkLoci loci;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, LogisticBoth>) {
          loci.k = g.n_k;
          loci.l = g.n_l;
        } else if constexpr (std::is_same_v<T, LogisticOne>) {
          loci.k = g.n_x;
        } else if constexpr (std::is_same_v<T, LogisticKOnly>) {
          loci.k = g.n_k;
        } else if constexpr (std::is_same_v<T, LogisticLOnly>) {
          loci.l = g.n_l;
        } else if constexpr (std::is_same_v<T, ForcedExponential>) {
          loci.k = 1.0;
          loci.l = 1.0;
        }
      },
      f);
  return loci;
}

MarginalProducts f9_closed_forms(const WageShareCompatible& g, double k,
                                 double l) {
  if (k == l)
    throw SingularityError("f9 marginal products undefined on the K=L kink",
                           locus_string(k, l));
  const double w = pow_abs(1.0 - k / l, g.c3);
  const double d = 1.0 + g.c4 * w;
  MarginalProducts mp;
  mp.mp_k = 1.0 / d + g.c3 * g.c4 * (k / (l - k)) * w / (d * d);
  // The printed form of MP_L omits the sign of the |L-K| derivative; the
  // finite-difference oracle fixes it: d|L-K|/dL = sign(L-K).
  mp.mp_l = g.c3 * g.c4 * (k * k) / (l * (k - l)) * w / (d * d);
  return mp;
}

}  // namespace

MarginalProducts marginal_products(const ProductionFunction& f, double k,
                                   double l) {
  require_positive_inputs(k, l);
  if (const auto* ws = std::get_if<WageShareCompatible>(&f)) {
    MarginalProducts mp = f9_closed_forms(*ws, k, l);
    if (std::abs(l - k) <= std::max(fd_step(k), fd_step(l))) {
      mp.k_boundary = mp.l_boundary = true;
    }
    return mp;
  }

  const KinkLoci loci = kink_loci(f);
  MarginalProducts mp;

  const auto deriv = [&](bool along_k, double x, double kink) {
    std::function<double(double)> slice;
    if (along_k) {
      slice = [&](double kk) { return evaluate(f, kk, l); };
    } else {
      slice = [&](double ll) { return evaluate(f, k, ll); };
    }
    const double h = fd_step(x);
    if (std::isfinite(kink) && std::abs(x - kink) < h) {
      // Kink of |capacity - x|: use a one-sided stencil on the interior side.
      const int direction = (x <= kink) ? -1 : +1;
      if (along_k)
        mp.k_boundary = true;
      else
        mp.l_boundary = true;
      return fd_derivative_one_sided(slice, x, direction);
    }
    return fd_derivative(slice, x);
  };

  mp.mp_k = deriv(true, k, loci.k);
  mp.mp_l = deriv(false, l, loci.l);
  return mp;
}

double mrts(const ProductionFunction& f, double k, double l) {
  const MarginalProducts mp = marginal_products(f, k, l);
  if (mp.mp_l == 0.0)
    throw DomainError("degenerate isoquant: MP_L = 0");
  return mp.mp_k / mp.mp_l;
}

double returns_to_scale_probe(const ProductionFunction& f, double k, double l,
                              double r) {
  if (!(r > 0.0) || r == 1.0)
    throw DomainError("scaling factor must be positive and distinct from 1");
  const double base = evaluate(f, k, l);
  const double scaled = evaluate(f, r * k, r * l);
  if (!(base > 0.0)) throw DomainError("probe requires positive output");
  return std::log(scaled / base) / std::log(r);
}

InadaReport inada_probe(const ProductionFunction& f,
                        const std::vector<std::pair<double, double>>& grid) {
  InadaReport rep;
  if (grid.empty()) {
    rep.notes.push_back("empty grid");
    return rep;
  }

  double k_scale = 0.0, l_scale = 0.0;
  bool seen_negative_fkk = false, seen_positive_fkk = false;
  double magnitude = 0.0;

  for (const auto& [k, l] : grid) {
    ++rep.samples;
    k_scale = std::max(k_scale, k);
    l_scale = std::max(l_scale, l);
    try {
      const double y = evaluate(f, k, l);
      magnitude = std::max(magnitude, std::abs(y));
      const MarginalProducts mp = marginal_products(f, k, l);
      if (!(mp.mp_k > 0.0 && mp.mp_l > 0.0)) rep.marginals_positive = false;
      const double fkk = fd_second_derivative(
          [&](double kk) { return evaluate(f, kk, l); }, k);
      const double fll = fd_second_derivative(
          [&](double ll) { return evaluate(f, k, ll); }, l);
      if (fkk < 0.0) seen_negative_fkk = true;
      if (fkk > 0.0) seen_positive_fkk = true;
      if (!(fkk < 0.0 && fll < 0.0)) rep.marginals_diminishing = false;
      const double exponent = returns_to_scale_probe(f, k, l, 2.0);
      if (std::abs(exponent - 1.0) > 1e-8) rep.constant_returns = false;
      if (std::abs(y) > 1e9 * std::max(1.0, magnitude / 1e3))
        rep.divergence_flagged = true;
    } catch (const SingularityError& e) {
      ++rep.failures;
      rep.divergence_flagged = true;
      rep.notes.push_back(std::string("singular sample: ") + e.what());
    } catch (const DomainError& e) {
      ++rep.failures;
      rep.notes.push_back(std::string("domain failure: ") + e.what());
    }
  }
  rep.concavity_sign_change = seen_negative_fkk && seen_positive_fkk;

  // Boundary trends of f_K along a mid-grid L slice.
  const double l_mid = grid[grid.size() / 2].second;
  const double k_lo = 1e-6 * k_scale;
  const double k_hi = 1e6 * k_scale;
  try {
    const double fk_lo =
        marginal_products(f, k_lo, l_mid).mp_k;
    const double fk_mid = marginal_products(f, 0.5 * k_scale, l_mid).mp_k;
    const double fk_hi = marginal_products(f, k_hi, l_mid).mp_k;
    rep.k_limit_trend = fk_lo > 10.0 * std::abs(fk_mid) &&
                        std::abs(fk_hi) < 0.1 * std::abs(fk_mid);
  } catch (const std::exception& e) {
    rep.k_limit_trend = false;
    rep.notes.push_back(std::string("k-limit probe failed: ") + e.what());
  }
  const double k_mid = grid[grid.size() / 2].first;
  try {
    const double fl_lo = marginal_products(f, k_mid, 1e-6 * l_scale).mp_l;
    const double fl_mid = marginal_products(f, k_mid, 0.5 * l_scale).mp_l;
    const double fl_hi = marginal_products(f, k_mid, 1e6 * l_scale).mp_l;
    rep.l_limit_trend = fl_lo > 10.0 * std::abs(fl_mid) &&
                        std::abs(fl_hi) < 0.1 * std::abs(fl_mid);
  } catch (const std::exception& e) {
    rep.l_limit_trend = false;
    rep.notes.push_back(std::string("l-limit probe failed: ") + e.what());
  }
  return rep;
}

std::pair<double, double> sigma1_factors(const Sigma1Params& p, double t) {
  const GrowthLaw law_k = GrowthLaw::logistic(p.a, p.n_k);
  const GrowthLaw law_l = GrowthLaw::logistic(p.b, p.n_l);
  return {flow(law_k, p.c1, t), flow(law_l, p.c2, t)};
}

double sigma1(const Sigma1Params& p, double t) {
  if (t < 0.0) throw DomainError("sigma1 requires t >= 0");
  const auto [k, l] = sigma1_factors(p, t);
  const double kd = p.a * k * (1.0 - k / p.n_k);
  const double ld = p.b * l * (1.0 - l / p.n_l);
  const double k_pole = p.capacity_relative ? p.n_k : 1.0;
  const double l_pole = p.capacity_relative ? p.n_l : 1.0;
  if (std::abs(k - k_pole) < 1e-9 * std::max(1.0, k_pole))
    throw PoleError("sigma1 pole: K crosses the reference level");
  if (std::abs(l - l_pole) < 1e-9 * std::max(1.0, l_pole))
    throw PoleError("sigma1 pole: L crosses the reference level");
  const double num = ld / l - kd / k;
  const double den = num - kd / (k - k_pole) - ld / (l - l_pole);
  if (den == 0.0) throw PoleError("sigma1 denominator vanishes");
  return num / den;
}

}  // namespace logprod
