#include "bessex/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bessex/specfun.hpp"

namespace bessex::moments {
namespace {

// Hurwitz zeta sum_{j>=0} (q+j)^{-s} by Euler-Maclaurin
double hurwitz_zeta(double s, double q) {
    const int m = 12;
    double sum = 0.0;
    for (int j = 0; j < m; ++j) sum += std::pow(q + j, -s);
    double w = q + m;
    sum += std::pow(w, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(w, -s);
    sum += s * std::pow(w, -s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * std::pow(w, -s - 3.0) / 720.0;
    return sum;
}

// one term of the Eq-style second-moment series (without the global prefactor)
double m2_summand(double a, int k, double tol) {
    double lg = 2.0 * sf::log_gamma(k + 1.5) + 2.0 * sf::log_gamma(a + k + 1.5) -
                sf::log_gamma(k + 1.0) - sf::log_gamma(k + 4.5) -
                sf::log_gamma(a + k + 1.0) - sf::log_gamma(a + k + 4.5);
    const double up[] = {k + 1.5, a + k + 1.5, 3.0};
    const double lo[] = {k + 4.5, a + k + 4.5};
    sf::HypResult f = sf::hyp_pfq(up, lo, 1.0, std::max(tol * 1e-3, 1e-11));
    return std::exp(lg) * f.value;
}

}  // namespace

const char* tag_name(MethodTag t) {
    switch (t) {
        case MethodTag::ClosedForm: return "closed-form";
        case MethodTag::Series: return "series";
        case MethodTag::Quadrature: return "quadrature";
        case MethodTag::MC: return "mc";
    }
    return "?";
}

double m1_closed(const ExcursionParams& params) {
    params.validate();
    double a = params.alpha_eff();
    if (a <= -1.0) throw DomainError("m1_closed: gamma pole at alpha <= -1");
    return kPi * sf::gamma_fn(a + 1.5) / (4.0 * sf::gamma_fn(a + 1.0)) * params.a0();
}

double m2_series(const ExcursionParams& params, double tol) {
    params.validate();
    if (!(tol >= 1e-8)) throw DomainError("m2_series: requires tol >= 1e-8");
    double a = params.alpha_eff();
    const int k_max = 256;
    std::vector<double> terms(k_max);
    double partial = 0.0;
    for (int k = 0; k < k_max; ++k) {
        terms[k] = m2_summand(a, k, tol);
        partial += terms[k];
    }
    // fit c2/k^2 + c3/k^3 + c4/k^4 on the upper half and sum the tail
    double ata[3][3] = {};
    double atb[3] = {};
    for (int k = k_max / 2; k < k_max; ++k) {
        double b[3] = {1.0 / (double(k) * k), 1.0 / (double(k) * k * k),
                       1.0 / (double(k) * k * k * k)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) ata[i][j] += b[i] * b[j];
            atb[i] += b[i] * terms[k];
        }
    }
    // solve the 3x3 normal equations by Gaussian elimination
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = ata[i][j];
        m[i][3] = atb[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (std::fabs(m[col][col]) < 1e-300)
            throw NumericalError("m2_series: singular tail fit");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    double c2 = m[0][3] / m[0][0], c3 = m[1][3] / m[1][1], c4 = m[2][3] / m[2][2];
    double res2 = 0.0, scale2 = 0.0;
    for (int k = k_max / 2; k < k_max; ++k) {
        double fit = c2 / (double(k) * k) + c3 / (double(k) * k * k) +
                     c4 / (double(k) * k * k * k);
        res2 += (terms[k] - fit) * (terms[k] - fit);
        scale2 += terms[k] * terms[k];
    }
    if (res2 > 1e-12 * scale2)
        throw NumericalError("m2_series: tail fit residuals exceed tolerance");
    double tail = c2 * hurwitz_zeta(2.0, k_max) + c3 * hurwitz_zeta(3.0, k_max) +
                  c4 * hurwitz_zeta(4.0, k_max);
    double pref = 16.0 * sf::gamma_fn(3.0 + a) / sf::gamma_fn(1.0 + a);
    double a0 = params.a0();
    return pref * (partial + tail) * a0 * a0;
}

double m2_linear(const ExcursionParams& params) {
    params.validate();
    double a = params.alpha_eff();
    double a0 = params.a0();
    return a0 * a0 * (83.0 / 135.0 * (a - 0.5) + 5.0 / 6.0);
}

double m_nu_closed(const ExcursionParams& params) {
    params.validate();
    double alpha = params.alpha();
    if (!(alpha > 0.0)) throw DomainError("m_nu_closed: requires alpha > 0");
    double nu = params.nu();
    return std::pow(2.0, 2.0 * alpha - 1.0) * sf::gamma_fn(alpha) /
           (std::pow(3.0, 2.0 * nu - 1.0) * sf::gamma_fn(nu)) *
           std::pow(params.a0(), nu);
}

double moment_quadrature(const dist::DistributionTable& table, double p,
                         double coverage_tol) {
    if (p < 0.0) throw DomainError("moment_quadrature: requires p >= 0");
    size_t n = table.a_hat.size();
    if (n < 8) throw DomainError("moment_quadrature: table too small");
    double total = 0.0;
    for (size_t i = 1; i < n; ++i) {
        double f0 = std::pow(table.a_hat[i - 1], p) * table.pdf_scaled[i - 1];
        double f1 = std::pow(table.a_hat[i], p) * table.pdf_scaled[i];
        total += 0.5 * (f0 + f1) * (table.a_hat[i] - table.a_hat[i - 1]);
    }
    // mass below the grid: density rises from zero faster than any power
    total += std::max(table.pdf_scaled[0], 0.0) * std::pow(table.a_hat[0], p + 1.0) /
             (p + 2.0);

    // Gaussian-tail completion beyond the grid
    double peak = 0.0;
    size_t ipeak = 0;
    for (size_t i = 0; i < n; ++i)
        if (table.pdf_scaled[i] > peak) {
            peak = table.pdf_scaled[i];
            ipeak = i;
        }
    if (peak <= 0.0) throw NumericalError("moment_quadrature: empty density");
    double last = table.pdf_scaled[n - 1];
    if (last > 1e-10 * peak) {
        // fit log p = a - b x^2 on trailing points
        std::vector<size_t> sel;
        for (size_t i = ipeak + 1; i < n; ++i)
            if (table.pdf_scaled[i] > 1e-12 * peak && table.a_hat[i] > 1.3 * table.a_hat[ipeak])
                sel.push_back(i);
        if (sel.size() < 6)
            throw NumericalError("moment_quadrature: insufficient tail coverage");
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i : sel) {
            double xx = table.a_hat[i] * table.a_hat[i];
            double yy = std::log(table.pdf_scaled[i]);
            sx += xx;
            sy += yy;
            sxx += xx * xx;
            sxy += xx * yy;
        }
        double nn = static_cast<double>(sel.size());
        double b = -(nn * sxy - sx * sy) / (nn * sxx - sx * sx);
        double la = (sy + b * sx) / nn;
        if (!(b > 0.0))
            throw NumericalError("moment_quadrature: tail does not decay");
        double x_end = table.a_hat[n - 1];
        double w = b * x_end * x_end;
        double tail = 0.5 * std::exp(la) * std::pow(b, -0.5 * (p + 1.0)) *
                      sf::gamma_fn(0.5 * (p + 1.0)) * sf::gamma_q(0.5 * (p + 1.0), w);
        if (tail > coverage_tol * std::fabs(total))
            throw NumericalError("moment_quadrature: insufficient tail coverage");
        total += tail;
    }
    return total;
}

MomentSet compute_moments(const ExcursionParams& params, double tol) {
    MomentSet ms;
    ms.m0 = 1.0;
    ms.m1 = m1_closed(params);
    ms.m2 = m2_series(params, tol);
    ms.nu = params.nu();
    if (params.alpha() > 0.0) {
        ms.m_nu = m_nu_closed(params);
    } else {
        ms.m_nu = std::numeric_limits<double>::quiet_NaN();
    }
    return ms;
}

}  // namespace bessex::moments
