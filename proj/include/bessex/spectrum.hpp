#pragma once

// Eigenvalues lambda_k and origin coefficients d_k of the rescaled problem
//   -phi'' + (U0(U0+2)/(4x^2) + x) phi = lambda phi,   phi ~ d x^{1/2+alpha}
// solved by two-sided shooting: a Frobenius series launch near the origin,
// a decaying-Airy terminal condition in the linear well, and a Wronskian
// mismatch at the matching point.

#include <vector>

#include "bessex/params.hpp"

namespace bessex::spectrum {

struct SpectralData {
    std::vector<double> lambdas;  // ascending
    std::vector<double> dks;      // positive by convention
    int count = 0;
    double tol = 0.0;
    ExcursionParams params;
};

SpectralData solve_spectrum(const ExcursionParams& params, int k_count,
                            double tol = 1e-10, int threads = 0);

// large-k law  [(3 pi / 2)(k + (|U0+1| + 2)/4)]^{2/3}
double lambda_asymptotic(const ExcursionParams& params, int k);

// d_k ~ 2^{-a-1/2} sqrt(pi) lambda^{(2a-1)/4} / Gamma(1+a), a = alpha_eff
double dk_asymptotic(const ExcursionParams& params, double lambda_k);

// value of the outward shooting solution at x for a trial lambda,
// normalized so that phi ~ x^{1/2+alpha} at the origin
double eigenfunction_eval(const ExcursionParams& params, double lambda, double x);

}  // namespace bessex::spectrum
