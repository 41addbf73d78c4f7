#pragma once

// Self-contained real special-function kernel: gamma family, Bessel J/I/K,
// Airy Ai with zeros, Kummer U, and generalized hypergeometric series with
// certified accuracy domains.  Everything is a pure function of its
// arguments; all functions are safe to call concurrently.

#include <span>
#include <vector>

#include "bessex/common.hpp"
#include "bessex/multiprec.hpp"

namespace bessex::sf {

// --- gamma family ---------------------------------------------------------

double gamma_fn(double x);      // poles at non-positive integers -> DomainError
double log_gamma(double x);     // x > 0
double gamma_q(double a, double x);  // regularized upper incomplete, a > 0, x >= 0

// --- Bessel family ---------------------------------------------------------

// J_nu(x) for x >= 0.  Any real order away from the negative-integer poles of
// the reflection formula; half-integer orders 1/2 and 3/2 short-circuit to
// their closed trigonometric forms.
double bessel_j(double nu, double x);
double bessel_i(double nu, double x);  // x >= 0
double bessel_k(double nu, double x);  // x > 0

// --- Airy ------------------------------------------------------------------

double airy_ai(double x);
double airy_ai_prime(double x);
double airy_zero(int k);  // magnitude of the k-th zero of Ai, k = 0,1,2,...

// --- Kummer U --------------------------------------------------------------

double kummer_u(double a, double b, double z);  // z > 0

// --- generalized hypergeometric ---------------------------------------------

struct AccuracyDomain {
    double max_abs_argument;
    double target_rel_err;
    double achieved_rel_err_estimate;
};

struct HypResult {
    double value;
    double err;  // relative error estimate, always reported
};

// pFq by direct series in compensated (double-double / quad-double)
// arithmetic.  Supports p <= q (any certified z) and p == q+1 at z = 1 when
// the parameter balance sum(lower) - sum(upper) is positive (Richardson
// extrapolation of partial sums).  Throws NumericalError when the estimated
// cancellation exceeds target_rel_err, instead of returning a wrong value.
HypResult hyp_pfq(std::span<const double> upper, std::span<const double> lower,
                  double z, double target_rel_err = 1e-9);

AccuracyDomain pfq_certified_domain();

namespace detail {
// Full-precision pFq series value used where several evaluations are
// combined before the final cancellation (the small-x Levy bracket).
// Parameters are passed in quad-double form so that exact rationals like
// 5/6 do not perturb the cancellation at double-rounding level.
mp::QD hyp_pfq_qd(std::span<const mp::QD> upper, std::span<const mp::QD> lower,
                  mp::QD z, double& rel_err_out);
}

}  // namespace bessex::sf
