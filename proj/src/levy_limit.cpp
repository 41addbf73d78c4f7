#include "bessex/levy_limit.hpp"

#include <cmath>

#include "bessex/distribution.hpp"
#include "bessex/specfun.hpp"
#include "bessex/spectrum.hpp"

namespace bessex::levy {
namespace {

void check_region(double u0, const char* who) {
    if (!(u0 > -3.0 && u0 < -1.0))
        throw DomainError(std::string(who) + ": requires -3 < U0 < -1");
}

}  // namespace

double lambda0_rate_constant() {
    static const double c = [] {
        double g = sf::gamma_fn(2.0 / 3.0);
        return 2.0 * kPi / (std::pow(3.0, 5.0 / 6.0) * g * g);
    }();
    return c;
}

double lambda0_perturbative(double u0) {
    check_region(u0, "lambda0_perturbative");
    return lambda0_rate_constant() * (u0 + 3.0);
}

double d0_perturbative(double u0) {
    check_region(u0, "d0_perturbative");
    return std::sqrt(u0 + 3.0);
}

std::vector<double> limit_fixed_spectrum(int k_count, double tol, int threads) {
    ExcursionParams p;
    p.u0 = -3.0;  // absorbing exponent 3/2, centrifugal coefficient 3/4
    auto sd = spectrum::solve_spectrum(p, k_count, tol, threads);
    return sd.lambdas;
}

LimitSpectrum limit_spectrum(double u0, int k_count, double tol, int threads) {
    check_region(u0, "limit_spectrum");
    LimitSpectrum ls;
    ls.lambda0 = lambda0_perturbative(u0);
    ls.d0 = d0_perturbative(u0);
    ls.lambdas_fixed = limit_fixed_spectrum(k_count, tol, threads);
    return ls;
}

double limit_laplace(double u0, double s_hat, bool* high_fidelity) {
    check_region(u0, "limit_laplace");
    if (s_hat < 0.0) throw DomainError("limit_laplace: requires s_hat >= 0");
    if (high_fidelity) *high_fidelity = (u0 + 3.0) <= 0.1;
    return std::exp(-lambda0_perturbative(u0) * std::pow(s_hat, 2.0 / 3.0));
}

double limit_pdf_scaled(double u0, double a_hat) {
    check_region(u0, "limit_pdf_scaled");
    if (!(a_hat > 0.0)) throw DomainError("limit_pdf_scaled: requires a_hat > 0");
    double scale = std::pow(lambda0_perturbative(u0), 1.5);
    return dist::levy23(a_hat / scale, dist::LevyForm::AiryForm) / scale;
}

}  // namespace bessex::levy
