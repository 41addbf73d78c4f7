// python bindings for the main operations

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bessex/distribution.hpp"
#include "bessex/io.hpp"
#include "bessex/levy_limit.hpp"
#include "bessex/mc.hpp"
#include "bessex/moments.hpp"
#include "bessex/specfun.hpp"
#include "bessex/spectrum.hpp"

namespace py = pybind11;
using namespace bessex;

namespace {

ExcursionParams make_params(double u0, double diff, double horizon, const std::string& mode) {
    ExcursionParams p;
    p.u0 = u0;
    p.diff = diff;
    p.horizon = horizon;
    if (mode == "absorbing")
        p.mode = BoundaryMode::Absorbing;
    else if (mode == "continued")
        p.mode = BoundaryMode::Continued;
    else
        throw DomainError("mode must be 'absorbing' or 'continued'");
    p.validate();
    return p;
}

dist::LevyForm levy_form(const std::string& name) {
    if (name == "whittaker") return dist::LevyForm::WhittakerW;
    if (name == "kummer") return dist::LevyForm::KummerU;
    if (name == "airy") return dist::LevyForm::AiryForm;
    if (name == "hyp") return dist::LevyForm::HypSeries;
    throw DomainError("form must be whittaker | kummer | airy | hyp");
}

}  // namespace

PYBIND11_MODULE(_bessex, m) {
    m.doc() = "area distribution under Bessel excursions";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<ExcursionParams>(m, "ExcursionParams")
        .def(py::init(&make_params), py::arg("u0"), py::arg("diff") = 0.5,
             py::arg("horizon") = 1.0, py::arg("mode") = "absorbing")
        .def_readonly("u0", &ExcursionParams::u0)
        .def_readonly("diff", &ExcursionParams::diff)
        .def_readonly("horizon", &ExcursionParams::horizon)
        .def_property_readonly("alpha", &ExcursionParams::alpha)
        .def_property_readonly("nu", &ExcursionParams::nu)
        .def_property_readonly("a0", &ExcursionParams::a0);

    // special functions
    m.def("gamma", &sf::gamma_fn, py::arg("x"));
    m.def("log_gamma", &sf::log_gamma, py::arg("x"));
    m.def("gamma_q", &sf::gamma_q, py::arg("a"), py::arg("x"));
    m.def("bessel_j", &sf::bessel_j, py::arg("nu"), py::arg("x"));
    m.def("bessel_i", &sf::bessel_i, py::arg("nu"), py::arg("x"));
    m.def("bessel_k", &sf::bessel_k, py::arg("nu"), py::arg("x"));
    m.def("airy_ai", &sf::airy_ai, py::arg("x"));
    m.def("airy_ai_prime", &sf::airy_ai_prime, py::arg("x"));
    m.def("airy_zero", &sf::airy_zero, py::arg("k"));
    m.def("kummer_u", &sf::kummer_u, py::arg("a"), py::arg("b"), py::arg("z"));
    m.def(
        "hyp_pfq",
        [](const std::vector<double>& up, const std::vector<double>& lo, double z,
           double target) {
            sf::HypResult r = sf::hyp_pfq(up, lo, z, target);
            return py::make_tuple(r.value, r.err);
        },
        py::arg("upper"), py::arg("lower"), py::arg("z"), py::arg("target_rel_err") = 1e-9);

    // spectrum
    py::class_<spectrum::SpectralData>(m, "SpectralData")
        .def_readonly("lambdas", &spectrum::SpectralData::lambdas)
        .def_readonly("dks", &spectrum::SpectralData::dks)
        .def_readonly("count", &spectrum::SpectralData::count)
        .def_readonly("tol", &spectrum::SpectralData::tol);
    m.def("solve_spectrum", &spectrum::solve_spectrum, py::arg("params"),
          py::arg("k_count"), py::arg("tol") = 1e-10, py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("lambda_asymptotic", &spectrum::lambda_asymptotic, py::arg("params"),
          py::arg("k"));
    m.def("dk_asymptotic", &spectrum::dk_asymptotic, py::arg("params"),
          py::arg("lambda_k"));
    m.def("eigenfunction_eval", &spectrum::eigenfunction_eval, py::arg("params"),
          py::arg("lambda_"), py::arg("x"));

    // distribution
    py::class_<dist::DistributionTable>(m, "DistributionTable")
        .def_readonly("a_hat", &dist::DistributionTable::a_hat)
        .def_readonly("pdf_scaled", &dist::DistributionTable::pdf_scaled)
        .def_readonly("err", &dist::DistributionTable::err);
    m.def("laplace_pdf", &dist::laplace_pdf, py::arg("params"), py::arg("spectral"),
          py::arg("s_hat"), py::arg("tol") = 1e-8);
    m.def(
        "pdf_hyp",
        [](const ExcursionParams& p, const spectrum::SpectralData& sd, double ah) {
            dist::PdfValue v = dist::pdf_hyp(p, sd, ah);
            return py::make_tuple(v.value, v.err);
        },
        py::arg("params"), py::arg("spectral"), py::arg("a_hat"));
    m.def("pdf_airy", &dist::pdf_airy, py::arg("params"), py::arg("spectral"),
          py::arg("a_hat"));
    m.def(
        "pdf_talbot",
        [](const ExcursionParams& p, const spectrum::SpectralData& sd, double ah) {
            return dist::pdf_talbot(p, sd, ah);
        },
        py::arg("params"), py::arg("spectral"), py::arg("a_hat"));
    m.def(
        "levy23",
        [](double x, const std::string& form) { return dist::levy23(x, levy_form(form)); },
        py::arg("x"), py::arg("form") = "kummer");
    m.def("g0_propagator", &dist::g0_propagator, py::arg("x"), py::arg("x0"),
          py::arg("t_elapsed"), py::arg("params"));
    m.def(
        "build_table",
        [](const ExcursionParams& p, const spectrum::SpectralData& sd, double lo,
           double hi, int n, const std::string& method, int threads) {
            dist::TableMethod m2 = dist::TableMethod::Auto;
            if (method == "hyp") m2 = dist::TableMethod::Hyp;
            else if (method == "airy") m2 = dist::TableMethod::Airy;
            else if (method == "talbot") m2 = dist::TableMethod::Talbot;
            else if (method != "auto") throw DomainError("bad method");
            return dist::build_table(p, sd, {lo, hi, n}, m2, threads);
        },
        py::arg("params"), py::arg("spectral"), py::arg("lo") = 0.05, py::arg("hi") = 6.0,
        py::arg("n") = 400, py::arg("method") = "auto", py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

    // moments
    m.def("m1_closed", &moments::m1_closed, py::arg("params"));
    m.def("m2_series", &moments::m2_series, py::arg("params"), py::arg("tol") = 1e-8);
    m.def("m2_linear", &moments::m2_linear, py::arg("params"));
    m.def("m_nu_closed", &moments::m_nu_closed, py::arg("params"));
    m.def("moment_quadrature", &moments::moment_quadrature, py::arg("table"),
          py::arg("p"), py::arg("coverage_tol") = 1e-3);

    // levy limit
    m.def("lambda0_perturbative", &levy::lambda0_perturbative, py::arg("u0"));
    m.def("d0_perturbative", &levy::d0_perturbative, py::arg("u0"));
    m.def("lambda0_rate_constant", &levy::lambda0_rate_constant);
    m.def("limit_fixed_spectrum", &levy::limit_fixed_spectrum, py::arg("k_count"),
          py::arg("tol") = 1e-10, py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "limit_laplace",
        [](double u0, double s_hat) { return levy::limit_laplace(u0, s_hat); },
        py::arg("u0"), py::arg("s_hat"));

    // monte carlo
    py::class_<mc::McEnsemble>(m, "McEnsemble")
        .def_readonly("areas", &mc::McEnsemble::areas)
        .def_readonly("durations", &mc::McEnsemble::durations)
        .def_readonly("acceptance_rate", &mc::McEnsemble::acceptance_rate)
        .def_readonly("attempts", &mc::McEnsemble::attempts)
        .def_readonly("seed", &mc::McEnsemble::seed);
    py::class_<mc::McReport>(m, "McReport")
        .def_readonly("n", &mc::McReport::n)
        .def_readonly("ks_stat", &mc::McReport::ks_stat)
        .def_readonly("ks_critical_1pct", &mc::McReport::ks_critical_1pct)
        .def_readonly("ks_pass", &mc::McReport::ks_pass)
        .def_readonly("mean_a_hat", &mc::McReport::mean_a_hat)
        .def_readonly("m2_a_hat", &mc::McReport::m2_a_hat)
        .def_readonly("z_m1", &mc::McReport::z_m1)
        .def_readonly("z_m2", &mc::McReport::z_m2);
    m.def(
        "sample_excursions",
        [](const ExcursionParams& p, long n, std::uint64_t seed, double dt, double delta,
           double x_start, int threads) {
            mc::McConfig cfg;
            cfg.params = p;
            cfg.n_target = n;
            cfg.seed = seed;
            cfg.threads = threads;
            if (dt > 0.0) cfg.dt = dt;
            if (delta > 0.0) cfg.return_window = delta;
            if (x_start > 0.0) cfg.x_start = x_start;
            return mc::sample_excursions(cfg);
        },
        py::arg("params"), py::arg("n"), py::arg("seed") = 1, py::arg("dt") = 0.0,
        py::arg("return_window") = 0.0, py::arg("x_start") = 0.0, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def("scaled_areas", &mc::scaled_areas, py::arg("ensemble"));
    m.def("mc_vs_analytic", &mc::mc_vs_analytic, py::arg("ensemble"), py::arg("table"),
          py::call_guard<py::gil_scoped_release>());

    m.attr("__version__") = "0.1.0";
}
