#pragma once

// Moments of the area distribution: the closed-form first moment, the
// hypergeometric series for the second with an analytic power-law tail, the
// two-anchor linear approximation, the closed-form nu-th fractional moment,
// and numeric cross-check moments from a density table.

#include "bessex/distribution.hpp"
#include "bessex/params.hpp"

namespace bessex::moments {

enum class MethodTag { ClosedForm, Series, Quadrature, MC };

const char* tag_name(MethodTag t);

struct MomentSet {
    double m0 = 1.0;
    double m1 = 0.0;   // units A0
    double m2 = 0.0;   // units A0^2
    double m_nu = 0.0; // units A0^nu; NaN when alpha <= 0
    double nu = 0.0;
    MethodTag tag_m0 = MethodTag::ClosedForm;
    MethodTag tag_m1 = MethodTag::ClosedForm;
    MethodTag tag_m2 = MethodTag::Series;
    MethodTag tag_m_nu = MethodTag::ClosedForm;
};

// M1 = pi Gamma(a+3/2) / (4 Gamma(a+1)) * A0
double m1_closed(const ExcursionParams& params);

// M2 by the 3F2 series with a fitted c2/k^2 + c3/k^3 + c4/k^4 tail summed
// through Hurwitz zeta values
double m2_series(const ExcursionParams& params, double tol = 1e-8);

// two-anchor linear approximation M2 ~ A0^2 [ (83/135)(a - 1/2) + 5/6 ]
double m2_linear(const ExcursionParams& params);

// M_nu = 2^{2 alpha - 1} Gamma(alpha) / (3^{2 nu - 1} Gamma(nu)) * A0^nu,
// nu = (U0+1)/3; requires alpha > 0
double m_nu_closed(const ExcursionParams& params);

// integral of a_hat^p times the table density, Gaussian-tail completion
double moment_quadrature(const dist::DistributionTable& table, double p,
                         double coverage_tol = 1e-3);

MomentSet compute_moments(const ExcursionParams& params, double tol = 1e-8);

}  // namespace bessex::moments
