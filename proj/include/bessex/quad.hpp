#pragma once

// Adaptive quadrature on nested 7/15-point Gauss rules: the 15-point value is
// taken as the panel result and the 7-point difference as its error gauge.

#include <functional>

namespace bessex::quad {

struct QuadResult {
    double value;
    double err;       // absolute error estimate
    int evaluations;
    bool converged;
};

// Integrate f over [a, b] splitting panels until the summed error estimate
// meets abs_tol + rel_tol * |integral|.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 0.0, double rel_tol = 1e-12,
                     int max_panels = 4000);

// Semi-infinite integral of a decaying integrand: geometric panels
// [a, a+w], [a+w, a+2w], ... doubling w, stopping when a panel contributes
// less than the tolerance.
QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            double first_width, double abs_tol = 0.0,
                            double rel_tol = 1e-12, int max_panels = 4000);

}  // namespace bessex::quad
