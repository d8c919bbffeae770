// Python bindings for the core operations: growth flows, production
// families, invariance checks, profit maximization, and calibration.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "logprod/calibrate.hpp"
#include "logprod/errors.hpp"
#include "logprod/growth.hpp"
#include "logprod/invariance.hpp"
#include "logprod/production.hpp"
#include "logprod/profit.hpp"
#include "logprod/series.hpp"
#include "logprod/version.hpp"

namespace py = pybind11;
using namespace logprod;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Logistic-growth production model toolkit";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError",
                                           PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                           PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);

  // growth kernel ------------------------------------------------------
  py::enum_<GrowthKind>(m, "GrowthKind")
      .value("Exponential", GrowthKind::Exponential)
      .value("Logistic", GrowthKind::Logistic);

  py::class_<GrowthLaw>(m, "GrowthLaw")
      .def_static("exponential", &GrowthLaw::exponential, py::arg("rate"))
      .def_static("logistic", &GrowthLaw::logistic, py::arg("rate"),
                  py::arg("capacity"))
      .def_readonly("kind", &GrowthLaw::kind)
      .def_readonly("rate", &GrowthLaw::rate)
      .def_readonly("capacity", &GrowthLaw::capacity);

  py::class_<GrowthModel>(m, "GrowthModel")
      .def(py::init<GrowthLaw, GrowthLaw>(), py::arg("law_k"),
           py::arg("law_l"))
      .def_readonly("law_k", &GrowthModel::law_k)
      .def_readonly("law_l", &GrowthModel::law_l);

  m.def("flow", &flow, py::arg("law"), py::arg("x0"), py::arg("t"));
  m.def("infinitesimal", &infinitesimal, py::arg("law"), py::arg("x"));

  py::class_<ShockSpec>(m, "ShockSpec")
      .def(py::init([](double nx, double nf, int exponent, double c,
                       double c1, double c2, double rate, double t1,
                       bool allow_odd) {
             ShockSpec s;
             s.capacity_in = nx;
             s.capacity_out = nf;
             s.exponent = exponent;
             s.scale = c;
             s.c1 = c1;
             s.c2 = c2;
             s.rate = rate;
             s.shift_time = t1;
             s.allow_odd_exponent = allow_odd;
             s.validate();
             return s;
           }),
           py::arg("capacity_in"), py::arg("capacity_out"),
           py::arg("exponent"), py::arg("scale"), py::arg("c1"),
           py::arg("c2"), py::arg("rate"), py::arg("shift_time"),
           py::arg("allow_odd_exponent") = false)
      .def("window_end", &ShockSpec::window_end);
  m.def("shock_response", &shock_response, py::arg("spec"), py::arg("t"));
  m.def("shock_gap", &shock_gap, py::arg("spec"));
  m.def("shock_gap_printed_residual", &shock_gap_printed_residual,
        py::arg("spec"));

  // production families --------------------------------------------------
  py::class_<CobbDouglas>(m, "CobbDouglas")
      .def(py::init<double, double, double>(), py::arg("scale") = 1.0,
           py::arg("alpha") = 0.5, py::arg("beta") = 0.5)
      .def_readonly("scale", &CobbDouglas::scale)
      .def_readonly("alpha", &CobbDouglas::alpha)
      .def_readonly("beta", &CobbDouglas::beta);

  py::class_<Capasso>(m, "Capasso")
      .def(py::init<double, double, double>(), py::arg("alpha1") = 1.0,
           py::arg("alpha2") = 0.0, py::arg("p") = 2.0);

  py::class_<LogisticBoth>(m, "LogisticBoth")
      .def(py::init([](double n_f, double n_k, double n_l, double alpha,
                       double beta, double c) {
             LogisticBoth f;
             f.n_f = n_f;
             f.n_k = n_k;
             f.n_l = n_l;
             f.alpha = alpha;
             f.beta = beta;
             f.c = c;
             return f;
           }),
           py::arg("n_f"), py::arg("n_k"), py::arg("n_l"), py::arg("alpha"),
           py::arg("beta"), py::arg("c"))
      .def_static("from_rates", &LogisticBoth::from_rates, py::arg("a"),
                  py::arg("b"), py::arg("c_rate"), py::arg("n_k"),
                  py::arg("n_l"), py::arg("n_f"), py::arg("c"))
      .def_readonly("n_f", &LogisticBoth::n_f)
      .def_readonly("n_k", &LogisticBoth::n_k)
      .def_readonly("n_l", &LogisticBoth::n_l)
      .def_readonly("alpha", &LogisticBoth::alpha)
      .def_readonly("beta", &LogisticBoth::beta)
      .def_readonly("c", &LogisticBoth::c);

  py::class_<LogisticOne>(m, "LogisticOne")
      .def(py::init<double, double, double, double>(), py::arg("n_f"),
           py::arg("n_x"), py::arg("alpha"), py::arg("c"));

  py::class_<LogisticKOnly>(m, "LogisticKOnly")
      .def(py::init<double, double, double, double, double>(), py::arg("n_f"),
           py::arg("n_k"), py::arg("alpha"), py::arg("beta"), py::arg("c"));

  py::class_<LogisticLOnly>(m, "LogisticLOnly")
      .def(py::init<double, double, double, double, double>(), py::arg("n_f"),
           py::arg("n_l"), py::arg("alpha"), py::arg("beta"), py::arg("c"));

  py::class_<WageShareCompatible>(m, "WageShareCompatible")
      .def(py::init<double, double>(), py::arg("c3"), py::arg("c4"));

  py::class_<ForcedExponential>(m, "ForcedExponential")
      .def(py::init<double, double, double>(), py::arg("c1"), py::arg("c2"),
           py::arg("c3"));

  m.def("family_name", &family_name);
  m.def("evaluate", &evaluate, py::arg("f"), py::arg("k"), py::arg("l"));
  m.def("steady_state", &steady_state, py::arg("f"));

  py::class_<MarginalProducts>(m, "MarginalProducts")
      .def_readonly("mp_k", &MarginalProducts::mp_k)
      .def_readonly("mp_l", &MarginalProducts::mp_l)
      .def_readonly("k_boundary", &MarginalProducts::k_boundary)
      .def_readonly("l_boundary", &MarginalProducts::l_boundary);
  m.def("marginal_products", &marginal_products, py::arg("f"), py::arg("k"),
        py::arg("l"));
  m.def("mrts", &mrts, py::arg("f"), py::arg("k"), py::arg("l"));
  m.def("returns_to_scale_probe", &returns_to_scale_probe, py::arg("f"),
        py::arg("k"), py::arg("l"), py::arg("r"));

  py::class_<InadaReport>(m, "InadaReport")
      .def_readonly("samples", &InadaReport::samples)
      .def_readonly("failures", &InadaReport::failures)
      .def_readonly("marginals_positive", &InadaReport::marginals_positive)
      .def_readonly("marginals_diminishing",
                    &InadaReport::marginals_diminishing)
      .def_readonly("concavity_sign_change",
                    &InadaReport::concavity_sign_change)
      .def_readonly("constant_returns", &InadaReport::constant_returns)
      .def_readonly("k_limit_trend", &InadaReport::k_limit_trend)
      .def_readonly("l_limit_trend", &InadaReport::l_limit_trend)
      .def_readonly("divergence_flagged", &InadaReport::divergence_flagged)
      .def_readonly("notes", &InadaReport::notes)
      .def("all_inada_hold", &InadaReport::all_inada_hold);
  m.def("inada_probe", &inada_probe, py::arg("f"), py::arg("grid"));

  py::class_<Sigma1Params>(m, "Sigma1Params")
      .def(py::init([](double c1, double c2, double a, double b, double n_k,
                       double n_l, bool capacity_relative) {
             Sigma1Params p;
             p.c1 = c1;
             p.c2 = c2;
             p.a = a;
             p.b = b;
             p.n_k = n_k;
             p.n_l = n_l;
             p.capacity_relative = capacity_relative;
             return p;
           }),
           py::arg("c1") = 0.203, py::arg("c2") = 0.432,
           py::arg("a") = 0.129, py::arg("b") = 0.118,
           py::arg("n_k") = 150.0, py::arg("n_l") = 150.0,
           py::arg("capacity_relative") = false);
  m.def("sigma1", &sigma1, py::arg("params"), py::arg("t"));

  // invariance ---------------------------------------------------------
  py::class_<WageShareFrame>(m, "WageShareFrame")
      .def(py::init([](double x, double y, double y_x, double gamma,
                       double lambda) {
             return WageShareFrame{x, y, y_x, gamma, lambda};
           }),
           py::arg("x"), py::arg("y"), py::arg("y_x"), py::arg("gamma") = 1.0,
           py::arg("lambda_") = 1.0)
      .def_readonly("x", &WageShareFrame::x)
      .def_readonly("y", &WageShareFrame::y)
      .def_readonly("y_x", &WageShareFrame::y_x)
      .def_readonly("gamma", &WageShareFrame::gamma)
      .def_readonly("lambda_", &WageShareFrame::lambda);

  m.def("wage_share", &wage_share, py::arg("frame"));
  m.def("modified_wage_share", &modified_wage_share, py::arg("frame"));

  py::enum_<InvariantCase>(m, "InvariantCase")
      .value("Exponential", InvariantCase::Exponential)
      .value("Logistic", InvariantCase::Logistic);
  m.def("fundamental_invariants", &fundamental_invariants, py::arg("which"),
        py::arg("frame"));
  m.def("transport_exponential", &transport_exponential, py::arg("frame"),
        py::arg("t"));
  m.def("transport_logistic", &transport_logistic, py::arg("frame"),
        py::arg("t"));

  py::class_<Generator>(m, "Generator")
      .def(py::init([](std::function<double(double, double)> xi,
                       std::function<double(double, double)> eta,
                       std::function<double(double)> zeta) {
             Generator g;
             g.xi = std::move(xi);
             g.eta = std::move(eta);
             g.zeta = std::move(zeta);
             return g;
           }),
           py::arg("xi"), py::arg("eta"), py::arg("zeta") = nullptr);
  m.def("model_generator", &model_generator, py::arg("model"));

  py::class_<HolotheticityReport>(m, "HolotheticityReport")
      .def_readonly("max_residual", &HolotheticityReport::max_residual)
      .def_readonly("samples_used", &HolotheticityReport::samples_used)
      .def_readonly("samples_skipped", &HolotheticityReport::samples_skipped);
  m.def("holotheticity_residual", &holotheticity_residual, py::arg("gen"),
        py::arg("f"), py::arg("h_of_f"), py::arg("samples"));

  py::class_<IsoquantReport>(m, "IsoquantReport")
      .def_readonly("input_level", &IsoquantReport::input_level)
      .def_readonly("image_level", &IsoquantReport::image_level)
      .def_readonly("max_rel_spread", &IsoquantReport::max_rel_spread)
      .def_readonly("preserved", &IsoquantReport::preserved);
  m.def("isoquant_preservation", &isoquant_preservation, py::arg("model"),
        py::arg("f"), py::arg("level_points"), py::arg("t"),
        py::arg("rel_tol") = 1e-6);

  m.def("distribution_integrability", &distribution_integrability,
        py::arg("x3"), py::arg("x4"), py::arg("samples"));

  py::enum_<CharacteristicSystem>(m, "CharacteristicSystem")
      .value("ExponentialSingle", CharacteristicSystem::ExponentialSingle)
      .value("ExponentialPair", CharacteristicSystem::ExponentialPair)
      .value("LogisticPair", CharacteristicSystem::LogisticPair);
  py::class_<CharacteristicParams>(m, "CharacteristicParams")
      .def(py::init([](double a, double b, double c, double n_k, double n_l,
                       double n_f) {
             return CharacteristicParams{a, b, c, n_k, n_l, n_f};
           }),
           py::arg("a"), py::arg("b"), py::arg("c") = 1.0,
           py::arg("n_k") = 1.0, py::arg("n_l") = 1.0, py::arg("n_f") = 1.0);
  py::class_<ReconstructionResult>(m, "ReconstructionResult")
      .def_readonly("exponents_recovered",
                    &ReconstructionResult::exponents_recovered)
      .def_readonly("alpha", &ReconstructionResult::alpha)
      .def_readonly("beta", &ReconstructionResult::beta)
      .def_readonly("invariant_drift", &ReconstructionResult::invariant_drift);
  m.def("characteristic_reconstruct", &characteristic_reconstruct,
        py::arg("system"), py::arg("params"), py::arg("start"),
        py::arg("span") = 1.0, py::arg("rel_tol") = 1e-10);

  // profit ---------------------------------------------------------------
  py::class_<MarketPrices>(m, "MarketPrices")
      .def(py::init([](double p0, double p1, double p2) {
             return MarketPrices{p0, p1, p2};
           }),
           py::arg("output"), py::arg("capital"), py::arg("labor"))
      .def_readonly("output", &MarketPrices::output)
      .def_readonly("capital", &MarketPrices::capital)
      .def_readonly("labor", &MarketPrices::labor);

  m.def("profit", &profit, py::arg("prices"), py::arg("f"), py::arg("k"),
        py::arg("l"));

  py::class_<SocReport>(m, "SocReport")
      .def_readonly("alpha_in_unit_interval",
                    &SocReport::alpha_in_unit_interval)
      .def_readonly("beta_in_unit_interval", &SocReport::beta_in_unit_interval)
      .def_readonly("bilinear_plus_positive",
                    &SocReport::bilinear_plus_positive)
      .def_readonly("bilinear_minus_positive",
                    &SocReport::bilinear_minus_positive)
      .def_readonly("bilinear_plus", &SocReport::bilinear_plus)
      .def_readonly("bilinear_minus", &SocReport::bilinear_minus)
      .def_readonly("boundary_case", &SocReport::boundary_case)
      .def("all_pass", &SocReport::all_pass);
  m.def("check_soc", &check_soc, py::arg("f"), py::arg("k"), py::arg("l"));

  py::class_<ProfitSolution>(m, "ProfitSolution")
      .def_readonly("k", &ProfitSolution::k)
      .def_readonly("l", &ProfitSolution::l)
      .def_readonly("output", &ProfitSolution::output)
      .def_readonly("profit_value", &ProfitSolution::profit_value)
      .def_readonly("lambda_", &ProfitSolution::lambda)
      .def_readonly("foc_residual", &ProfitSolution::foc_residual)
      .def_readonly("iterations", &ProfitSolution::iterations)
      .def_readonly("soc", &ProfitSolution::soc)
      .def_readonly("is_max", &ProfitSolution::is_max);
  m.def("solve_foc", &solve_foc, py::arg("prices"), py::arg("f"),
        py::arg("initial_guess") = std::nullopt);
  m.def("f5_partials", &f5_partials, py::arg("f"), py::arg("k"), py::arg("l"));

  py::class_<ConsistencyVerdict>(m, "ConsistencyVerdict")
      .def_readonly("consistent", &ConsistencyVerdict::consistent)
      .def_readonly("degenerate", &ConsistencyVerdict::degenerate)
      .def_readonly("detail", &ConsistencyVerdict::detail);
  m.def("consistency_condition", &consistency_condition, py::arg("alpha"),
        py::arg("beta"), py::arg("c"));

  py::class_<Elasticities>(m, "Elasticities")
      .def_readonly("alpha", &Elasticities::alpha)
      .def_readonly("beta", &Elasticities::beta);
  m.def("recover_elasticities", &recover_elasticities, py::arg("prices"),
        py::arg("f"), py::arg("k"), py::arg("l"), py::arg("y"));

  // calibration ----------------------------------------------------------
  py::class_<EconSeries>(m, "EconSeries")
      .def(py::init([](std::vector<int> years, std::vector<double> k,
                       std::vector<double> l, std::vector<double> y) {
             EconSeries s;
             s.years = std::move(years);
             s.k = std::move(k);
             s.l = std::move(l);
             s.y = std::move(y);
             s.validate();
             return s;
           }),
           py::arg("years"), py::arg("k"), py::arg("l"), py::arg("y"))
      .def_readonly("years", &EconSeries::years)
      .def_readonly("k", &EconSeries::k)
      .def_readonly("l", &EconSeries::l)
      .def_readonly("y", &EconSeries::y)
      .def("__len__", &EconSeries::size);
  m.def("ingest", &ingest, py::arg("path"));

  py::class_<FitConfig>(m, "FitConfig")
      .def(py::init([](double n_f, double n_k, double n_l,
                       bool constrain_shares, std::vector<double> initial,
                       double tolerance, int max_iterations) {
             FitConfig c;
             c.n_f = n_f;
             c.n_k = n_k;
             c.n_l = n_l;
             c.constrain_shares = constrain_shares;
             c.initial = std::move(initial);
             c.tolerance = tolerance;
             c.max_iterations = max_iterations;
             return c;
           }),
           py::arg("n_f") = 120.0, py::arg("n_k") = 150.0,
           py::arg("n_l") = 150.0, py::arg("constrain_shares") = true,
           py::arg("initial") = std::vector<double>{},
           py::arg("tolerance") = 1e-10, py::arg("max_iterations") = 500);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("parameter_names", &FitResult::parameter_names)
      .def_readonly("parameters", &FitResult::parameters)
      .def_readonly("residuals", &FitResult::residuals)
      .def_readonly("ssr", &FitResult::ssr)
      .def_readonly("adjusted_r2", &FitResult::adjusted_r2)
      .def_readonly("free_parameters", &FitResult::free_parameters)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("starts_tried", &FitResult::starts_tried)
      .def_readonly("notes", &FitResult::notes);
  m.def("fit_f5", &fit_f5, py::arg("series"), py::arg("config") = FitConfig{});
  m.def("fit_cobb_douglas", &fit_cobb_douglas, py::arg("series"),
        py::arg("config") = FitConfig{});

  py::class_<LogisticPathFit>(m, "LogisticPathFit")
      .def_readonly("initial_value", &LogisticPathFit::initial_value)
      .def_readonly("rate", &LogisticPathFit::rate)
      .def_readonly("capacity", &LogisticPathFit::capacity)
      .def_readonly("ssr", &LogisticPathFit::ssr)
      .def_readonly("degenerate", &LogisticPathFit::degenerate)
      .def_readonly("converged", &LogisticPathFit::converged);
  m.def("fit_logistic_path", &fit_logistic_path, py::arg("values"),
        py::arg("capacity"), py::arg("capacity_free") = false);

  py::class_<Sigma1Series>(m, "Sigma1Series")
      .def_readonly("years", &Sigma1Series::years)
      .def_readonly("values", &Sigma1Series::values)
      .def_readonly("min_value", &Sigma1Series::min_value)
      .def_readonly("max_value", &Sigma1Series::max_value)
      .def_readonly("min_year", &Sigma1Series::min_year)
      .def_readonly("max_year", &Sigma1Series::max_year)
      .def_readonly("sign_change_years", &Sigma1Series::sign_change_years);
  m.def("sigma1_series", &sigma1_series, py::arg("params"), py::arg("years"));

  m.def("adjusted_r2", &adjusted_r2, py::arg("residuals"),
        py::arg("observed"), py::arg("free_parameters"));
}
