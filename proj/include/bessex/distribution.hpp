#pragma once

// The area distribution itself: Laplace transform of the scaled density, the
// hypergeometric real-space series, the |alpha| = 1/2 closed forms, the
// one-sided Levy 2/3 law in four representations, a fixed-Talbot numerical
// inverter, and the zero-drift absorbing propagator.

#include <vector>

#include "bessex/params.hpp"
#include "bessex/spectrum.hpp"

namespace bessex::dist {

enum class Method { HypSeries, AiryClosed, Talbot, MC };

const char* method_name(Method m);

struct DistributionTable {
    std::vector<double> a_hat;
    std::vector<double> pdf_scaled;  // A0 * P(A,T) against A/A0
    std::vector<double> err;
    std::vector<Method> method;
    ExcursionParams params;
};

// scaled Laplace transform P~(s^) with the analytic incomplete-gamma tail for
// the modes beyond the solved spectrum; P~(0) = 1 identically
double laplace_pdf(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                   double s_hat, double tol = 1e-8);

struct PdfValue {
    double value;
    double err;
};

// real-space density by the per-mode three-term 2F2 bracket
PdfValue pdf_hyp(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                 double a_hat);

// |alpha| = 1/2 closed form: Kummer-U representation returned, the
// Airy-function representation evaluated alongside as a consistency check
double pdf_airy(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                double a_hat);

enum class LevyForm { WhittakerW, KummerU, AiryForm, HypSeries };

// one-sided alpha-stable density with index 2/3, Laplace transform e^{-s^{2/3}}
double levy23(double x, LevyForm form);

// numerical Bromwich inversion of laplace_pdf on the fixed Talbot contour;
// err_out receives the combined truncation + roundoff estimate
double pdf_talbot(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                  double a_hat, double* err_out = nullptr);

// s = 0 absorbing propagator (modified-Bessel kernel)
double g0_propagator(double x, double x0, double t_elapsed, const ExcursionParams& params);

struct GridSpec {
    double lo = 0.05;
    double hi = 6.0;
    int n = 400;  // log-spaced
};

enum class TableMethod { Auto, Hyp, Airy, Talbot };

DistributionTable build_table(const ExcursionParams& params,
                              const spectrum::SpectralData& spectral,
                              const GridSpec& grid = {},
                              TableMethod method = TableMethod::Auto, int threads = 0);

// cumulative distribution on a refined grid, for KS tests
struct Cdf {
    std::vector<double> a_hat;
    std::vector<double> cdf;
    double operator()(double x) const;  // linear interpolation, clamped
};

Cdf table_cdf(const DistributionTable& table);

}  // namespace bessex::dist
