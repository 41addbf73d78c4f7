#pragma once

// The analytically continued law near U0 = -3: perturbative lowest mode,
// the reduced fixed spectrum, and the limiting one-sided Levy transform.

#include <vector>

#include "bessex/params.hpp"

namespace bessex::levy {

struct LimitSpectrum {
    double lambda0 = 0.0;              // O(U0 + 3)
    double d0 = 0.0;                   // O(sqrt(U0 + 3))
    std::vector<double> lambdas_fixed; // limits of lambda_{k > 0}
};

// lambda_0 ~ 2 pi / (3^{5/6} Gamma(2/3)^2) * (U0 + 3)
double lambda0_perturbative(double u0);
double lambda0_rate_constant();

// d_0 ~ sqrt(U0 + 3)
double d0_perturbative(double u0);

// eigenvalues of the reduced problem -phi'' + 3/(4x^2) phi + x phi = lambda phi
// with phi ~ x^{3/2}; equals the absorbing spectrum at U0 = -3
std::vector<double> limit_fixed_spectrum(int k_count, double tol = 1e-10,
                                         int threads = 0);

LimitSpectrum limit_spectrum(double u0, int k_count, double tol = 1e-10,
                             int threads = 0);

// leading-order transform e^{-lambda_0 s^{2/3}}; high fidelity flagged for
// U0 + 3 <= 0.1 where the expansion is quantitatively reliable
double limit_laplace(double u0, double s_hat, bool* high_fidelity = nullptr);

// the matching real-space law: A0 P(A) ~ levy23(a_hat / lambda0^{3/2}) / lambda0^{3/2}
double limit_pdf_scaled(double u0, double a_hat);

}  // namespace bessex::levy
