#include "bessex/distribution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <thread>

#include "bessex/quad.hpp"
#include "bessex/specfun.hpp"

namespace bessex::dist {

using mp::QD;
using cplx = std::complex<double>;

namespace {

double lambda_band_edge(double alpha_eff, double k_half) {
    double t = 1.5 * kPi * (k_half + (2.0 * alpha_eff + 2.0) / 4.0);
    return std::cbrt(t * t);
}

// regularized upper incomplete gamma on the Talbot contour, Re w > 0
cplx gamma_q_cplx(double a, cplx w) {
    if (w.real() <= 0.0)
        throw NumericalError("gamma_q_cplx: contour point left of the imaginary axis");
    cplx b = w + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 2000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        cplx del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-w + a * std::log(w) - sf::log_gamma(a)) * h;
}

struct LaplaceEval {
    double pref_const;   // 2^{2a+1} Gamma(a+1)
    double nu_exp;       // nu_eff + 2/3
    double a1;           // alpha_eff + 1
    double big_lambda;   // continuum boundary
    const spectrum::SpectralData* sd;

    LaplaceEval(const ExcursionParams& p, const spectrum::SpectralData& spectral) {
        double a = p.alpha_eff();
        pref_const = std::pow(2.0, 2.0 * a + 1.0) * sf::gamma_fn(a + 1.0);
        nu_exp = p.nu_eff() + 2.0 / 3.0;
        a1 = a + 1.0;
        big_lambda = lambda_band_edge(a, spectral.count - 0.5);
        sd = &spectral;
    }

    double value(double s_hat) const {
        if (s_hat == 0.0) return 1.0;
        double w = std::pow(s_hat, 2.0 / 3.0);
        double sum = 0.0;
        for (int k = sd->count - 1; k >= 0; --k)
            sum += sd->dks[k] * sd->dks[k] * std::exp(-sd->lambdas[k] * w);
        return pref_const * std::pow(s_hat, nu_exp) * sum + sf::gamma_q(a1, w * big_lambda);
    }

    cplx value(cplx s_hat) const {
        cplx w = std::exp((2.0 / 3.0) * std::log(s_hat));
        cplx sum = 0.0;
        for (int k = sd->count - 1; k >= 0; --k)
            sum += sd->dks[k] * sd->dks[k] * std::exp(-sd->lambdas[k] * w);
        return pref_const * std::exp(nu_exp * std::log(s_hat)) * sum +
               gamma_q_cplx(a1, w * big_lambda);
    }

    // error scale of the continuum tail: the discrepancy between the last
    // solved mode and its continuum band, evaluated at this s_hat
    double tail_error_estimate(double s_hat) const {
        if (s_hat == 0.0) return 0.0;
        double w = std::pow(s_hat, 2.0 / 3.0);
        int k = sd->count - 1;
        double actual = pref_const * std::pow(s_hat, nu_exp) * sd->dks[k] * sd->dks[k] *
                        std::exp(-sd->lambdas[k] * w);
        double lo = lambda_band_edge(a1 - 1.0, k - 0.5);
        double hi = lambda_band_edge(a1 - 1.0, k + 0.5);
        double band = sf::gamma_q(a1, w * lo) - sf::gamma_q(a1, w * hi);
        return 3.0 * std::fabs(actual - band);
    }
};

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::HypSeries: return "hyp";
        case Method::AiryClosed: return "airy";
        case Method::Talbot: return "talbot";
        case Method::MC: return "mc";
    }
    return "?";
}

double laplace_pdf(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                   double s_hat, double tol) {
    params.validate();
    if (s_hat < 0.0) throw DomainError("laplace_pdf: requires s_hat >= 0");
    LaplaceEval ev(params, spectral);
    double est = ev.tail_error_estimate(s_hat);
    if (est > tol)
        throw NumericalError("laplace_pdf: spectral tail estimate exceeds tolerance");
    return ev.value(s_hat);
}

PdfValue pdf_hyp(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                 double a_hat) {
    params.validate();
    if (!(a_hat > 0.0)) throw DomainError("pdf_hyp: requires a_hat > 0");
    const double a = params.alpha_eff(), nu = params.nu_eff();
    const double g1 = sf::gamma_fn(5.0 / 3.0 + nu) * std::sin(kPi * (2.0 + 3.0 * nu) / 3.0);
    const double g2 = sf::gamma_fn(7.0 / 3.0 + nu) * std::sin(kPi * (4.0 + 3.0 * nu) / 3.0);
    const double g3 = sf::gamma_fn(3.0 + nu) * std::sin(kPi * nu);
    const double a23 = std::pow(a_hat, 2.0 / 3.0);
    const double pref = sf::gamma_fn(1.0 + a) / (2.0 * kPi * a_hat) *
                        std::pow(4.0 / a23, a + 1.0);
    const double up1[] = {4.0 / 3.0 + nu / 2.0, 5.0 / 6.0 + nu / 2.0};
    const double lo1[] = {1.0 / 3.0, 2.0 / 3.0};
    const double up2[] = {7.0 / 6.0 + nu / 2.0, 5.0 / 3.0 + nu / 2.0};
    const double lo2[] = {2.0 / 3.0, 4.0 / 3.0};
    const double up3[] = {2.0 + nu / 2.0, 3.0 / 2.0 + nu / 2.0};
    const double lo3[] = {4.0 / 3.0, 5.0 / 3.0};

    double sum = 0.0, err = 0.0, max_partial = 0.0;
    bool truncated = false;
    for (int k = 0; k < spectral.count; ++k) {
        double lam = spectral.lambdas[k];
        double dk2 = spectral.dks[k] * spectral.dks[k];
        double big_l = lam / a23;
        double y = 4.0 * lam * lam * lam / (27.0 * a_hat * a_hat);
        double coeff_scale = std::fabs(g1) + std::fabs(g2) * big_l + 0.5 * std::fabs(g3) * big_l * big_l;
        double bound = dk2 * coeff_scale * 3.0 * std::exp(-std::min(y, 700.0)) *
                       (1.0 + y) * (1.0 + y);
        if (k >= 5 && bound < 1e-13) {
            err += bound;
            truncated = true;
            break;
        }
        if (y > sf::pfq_certified_domain().max_abs_argument) {
            if (bound < 1e-10) {
                err += bound;
                truncated = true;
                break;
            }
            throw NumericalError("pdf_hyp: 2F2 argument outside the certified domain");
        }
        sf::HypResult f1 = sf::hyp_pfq(up1, lo1, -y, 1e-6);
        sf::HypResult f2 = sf::hyp_pfq(up2, lo2, -y, 1e-6);
        sf::HypResult f3 = sf::hyp_pfq(up3, lo3, -y, 1e-6);
        double bracket = g1 * f1.value - big_l * g2 * f2.value +
                         0.5 * big_l * big_l * g3 * f3.value;
        sum += dk2 * bracket;
        max_partial = std::max(max_partial, std::fabs(sum));
        err += dk2 * (std::fabs(g1 * f1.value) * f1.err + std::fabs(big_l * g2 * f2.value) * f2.err +
                      std::fabs(0.5 * big_l * big_l * g3 * f3.value) * f3.err +
                      2e-16 * coeff_scale +
                      2.0 * spectral.tol * std::fabs(bracket));  // d_k^2 solver noise
    }
    if (!truncated)
        throw NumericalError("pdf_hyp: spectral data exhausted before series truncation");
    double value = -pref * sum;
    double total_err = pref * (err + 4e-16 * max_partial);
    return {value, total_err};
}

double pdf_airy(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                double a_hat) {
    params.validate();
    if (!(a_hat > 0.0)) throw DomainError("pdf_airy: requires a_hat > 0");
    if (std::fabs(std::fabs(params.alpha()) - 0.5) > 1e-12 ||
        params.mode != BoundaryMode::Absorbing)
        throw DomainError("pdf_airy: requires |alpha| = 1/2 (U0 = 0 or -2), absorbing");

    double su = 0.0, sa = 0.0;
    const double zfac = std::pow(3.0 * a_hat, -4.0 / 3.0);
    int quiet = 0;
    for (int k = 0; k < 400; ++k) {
        double lam = k < spectral.count ? spectral.lambdas[k] : sf::airy_zero(k);
        double lam3 = lam * lam * lam;
        double y = 4.0 * lam3 / (27.0 * a_hat * a_hat);
        if (y > 650.0) break;
        double tu = lam * lam * std::exp(-y) * sf::kummer_u(-5.0 / 6.0, 4.0 / 3.0, y);
        su += tu;
        double zeta = lam * lam * zfac;
        double z32 = zeta * std::sqrt(zeta);
        double br = (8.0 * z32 - 7.0) * sf::airy_ai(zeta) -
                    (8.0 * z32 - 5.0) * sf::airy_ai_prime(zeta) / std::sqrt(zeta);
        double ta = zeta * zeta * std::sqrt(zeta) / lam3 * std::exp(-2.0 * z32 / 3.0) * br;
        sa += ta;
        if (std::fabs(tu) < 1e-18 * std::fabs(su) && y > 3.0) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    double u_form = std::pow(2.0, 10.0 / 3.0) / std::pow(3.0, 1.5) *
                    std::pow(a_hat, -10.0 / 3.0) * su;
    double a_form = 12.0 * std::sqrt(kPi) * sa;
    if (std::fabs(u_form - a_form) > 1e-9 * std::max(1.0, std::fabs(u_form)))
        throw NumericalError("pdf_airy: Kummer-U and Airy forms disagree");
    return u_form;
}

namespace {

// one qd-combined bracket for the Levy HypSeries route; the two 2F2 values
// cancel to an e^{-y}-small residue, so the Gamma weights and the x^{-2/3}
// factor enter at full precision as well
double levy_hyp_bracket_qd(double x) {
    static const QD kGammaThird(2.6789385347077475, 1.7947798648225244e-16,
                                5.329777799216692e-35, 3.628892611203646e-51);
    static const QD kGammaTwoThird(1.3541179394264005, -4.6231203911366416e-17,
                                   1.2706927362138456e-33, -7.998878311228134e-50);
    double e;
    double p = mp::two_prod(x, x, e);
    QD x2 = QD(p, e, 0.0, 0.0);
    QD y = QD(4.0) / (QD(27.0) * x2);
    const QD r16 = QD(1.0) / QD(6.0), r13 = QD(1.0) / QD(3.0);
    const QD up_a[] = {QD(5.0) * r16, QD(4.0) * r13};
    const QD lo_a[] = {QD(2.0) * r13, QD(4.0) * r13};
    const QD up_b[] = {QD(5.0) * r13, QD(7.0) * r16};
    const QD lo_b[] = {QD(4.0) * r13, QD(5.0) * r13};
    double e1, e2;
    QD fa = sf::detail::hyp_pfq_qd(up_a, lo_a, -y, e1);
    QD fb = sf::detail::hyp_pfq_qd(up_b, lo_b, -y, e2);
    QD g53 = kGammaTwoThird * QD(2.0) / QD(3.0);
    QD g73 = kGammaThird * QD(4.0) / QD(9.0);
    QD half_xm23 = qd_cbrt(QD(27.0) * y / QD(4.0)) * 0.5;  // x^{-2/3} / 2
    QD bracket = g53 * fa + half_xm23 * g73 * fb;
    return mp::to_double(bracket);
}

}  // namespace

double levy23(double x, LevyForm form) {
    if (!(x > 0.0)) throw DomainError("levy23: requires x > 0");
    const double y = 4.0 / (27.0 * x * x);
    switch (form) {
        case LevyForm::KummerU:
            return std::pow(2.0, 4.0 / 3.0) / (std::pow(3.0, 1.5) * std::sqrt(kPi)) *
                   std::pow(x, -7.0 / 3.0) * std::exp(-y) *
                   sf::kummer_u(1.0 / 6.0, 4.0 / 3.0, y);
        case LevyForm::AiryForm: {
            double zeta = std::pow(3.0 * x, -4.0 / 3.0);
            double z32 = zeta * std::sqrt(zeta);
            return 6.0 * std::pow(zeta, 1.75) *
                   (sf::airy_ai(zeta) - sf::airy_ai_prime(zeta) / std::sqrt(zeta)) *
                   std::exp(-2.0 * z32 / 3.0);
        }
        case LevyForm::WhittakerW: {
            // W_{1/2,1/6}(y) by its Laplace-type integral, t = u^6
            auto f = [&](double u) {
                double u6 = u * u * u * u * u * u;
                return std::exp(-u6) * std::pow(1.0 + u6 / y, 1.0 / 6.0);
            };
            double integral = 6.0 * quad::integrate(f, 0.0, 3.2, 0.0, 1e-13).value;
            double w = std::exp(-0.5 * y) * std::sqrt(y) * integral /
                       sf::gamma_fn(1.0 / 6.0);
            return std::sqrt(3.0 / kPi) / x * std::exp(-0.5 * y) * w;
        }
        case LevyForm::HypSeries: {
            double bracket;
            if (y <= 16.0) {
                const double up_a[] = {5.0 / 6.0, 4.0 / 3.0};
                const double lo_a[] = {2.0 / 3.0, 4.0 / 3.0};
                const double up_b[] = {5.0 / 3.0, 7.0 / 6.0};
                const double lo_b[] = {4.0 / 3.0, 5.0 / 3.0};
                sf::HypResult fa = sf::hyp_pfq(up_a, lo_a, -y);
                sf::HypResult fb = sf::hyp_pfq(up_b, lo_b, -y);
                bracket = sf::gamma_fn(5.0 / 3.0) * fa.value +
                          0.5 * std::pow(x, -2.0 / 3.0) * sf::gamma_fn(7.0 / 3.0) * fb.value;
            } else {
                bracket = levy_hyp_bracket_qd(x);
            }
            return std::sin(2.0 * kPi / 3.0) / kPi * std::pow(x, -5.0 / 3.0) * bracket;
        }
    }
    throw DomainError("levy23: unknown form");
}

double pdf_talbot(const ExcursionParams& params, const spectrum::SpectralData& spectral,
                  double a_hat, double* err_out) {
    params.validate();
    if (!(a_hat > 0.0)) throw DomainError("pdf_talbot: requires a_hat > 0");
    LaplaceEval ev(params, spectral);
    // Nodes past 0.7 pi have Re(s^{2/3}) < 0 where the eigen-sum diverges;
    // their true contributions are below e^{-0.6 M} and are dropped.
    const double theta_max = 0.7 * kPi;
    // The node sum cancels terms of size amp down to the result, so the
    // reachable accuracy at each M is |f_M - f_prev| plus eps * amp.  M near
    // 48 is the double-precision sweet spot; larger M only amplifies
    // roundoff (e^{2M/5} against the e^{-lambda_0 r^{2/3}} decay of the
    // transform), so refinement proceeds in modest steps, not doublings.
    double best = 0.0, best_err = std::numeric_limits<double>::infinity();
    double prev = 0.0;
    bool have_prev = false;
    for (int m : {32, 40, 48, 56, 64, 80}) {
        double r = 2.0 * m / (5.0 * a_hat);
        double head = 0.5 * std::exp(r * a_hat) * ev.value(r);
        double acc = head, amp = std::fabs(head);
        for (int j = 1; j < m; ++j) {
            double th = j * kPi / m;
            if (th > theta_max) break;
            double cot = std::cos(th) / std::sin(th);
            cplx z(r * th * cot, r * th);
            double sigma = th + (th * cot - 1.0) * cot;
            cplx val = std::exp(a_hat * z) * ev.value(z) * cplx(1.0, sigma);
            acc += val.real();
            amp += std::abs(val);
        }
        double f = acc * r / m;
        double round_est = 4e-15 * amp * r / m;
        double trunc_est = have_prev ? std::fabs(f - prev) : std::fabs(f);
        double est = round_est + trunc_est;
        if (have_prev && est < best_err) {
            best = f;
            best_err = est;
        }
        prev = f;
        have_prev = true;
    }
    if (best_err > 1e-7 * std::max(1.0, std::fabs(best)))
        throw NumericalError("pdf_talbot: contour refinement did not stabilize");
    if (err_out) *err_out = best_err;
    return best;
}

double g0_propagator(double x, double x0, double t_elapsed, const ExcursionParams& params) {
    params.validate();
    if (!(x > 0.0 && x0 > 0.0 && t_elapsed > 0.0))
        throw DomainError("g0_propagator: requires x, x0, T > 0");
    double dt4 = 4.0 * params.diff * t_elapsed;
    double w = 2.0 * x * x0 / dt4;
    double a = std::fabs(params.alpha());
    double ratio = std::pow(x0 / x, 0.5 * params.u0);
    double front = ratio * std::sqrt(x * x0) / (2.0 * params.diff * t_elapsed);
    if (w < 500.0)
        return front * std::exp(-(x * x + x0 * x0) / dt4) * sf::bessel_i(a, w);
    // large-argument regime: fold e^w into the Gaussian to avoid overflow
    double series = 1.0, term = 1.0;
    double mu = 4.0 * a * a;
    for (int k = 1; k <= 12; ++k) {
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * w * k);
        series += term;
    }
    return front * std::exp(-(x - x0) * (x - x0) / dt4) * series / std::sqrt(2.0 * kPi * w);
}

DistributionTable build_table(const ExcursionParams& params,
                              const spectrum::SpectralData& spectral, const GridSpec& grid,
                              TableMethod method, int threads) {
    params.validate();
    if (grid.n < 2 || !(grid.lo > 0.0) || !(grid.hi > grid.lo))
        throw DomainError("build_table: bad grid");
    DistributionTable t;
    t.params = params;
    t.a_hat.resize(grid.n);
    t.pdf_scaled.resize(grid.n);
    t.err.resize(grid.n);
    t.method.resize(grid.n);
    double llo = std::log(grid.lo), lhi = std::log(grid.hi);
    for (int i = 0; i < grid.n; ++i)
        t.a_hat[i] = std::exp(llo + (lhi - llo) * i / (grid.n - 1));

    bool airy_ok = std::fabs(std::fabs(params.alpha()) - 0.5) < 1e-12 &&
                   params.mode == BoundaryMode::Absorbing;
    if (method == TableMethod::Airy && !airy_ok)
        throw DomainError("build_table: Airy method requires |alpha| = 1/2");

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string msg;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= grid.n || failed.load()) return;
            double ah = t.a_hat[i];
            try {
                switch (method) {
                    case TableMethod::Hyp: {
                        PdfValue v = pdf_hyp(params, spectral, ah);
                        t.pdf_scaled[i] = v.value;
                        t.err[i] = v.err;
                        t.method[i] = Method::HypSeries;
                        break;
                    }
                    case TableMethod::Airy:
                        t.pdf_scaled[i] = pdf_airy(params, spectral, ah);
                        t.err[i] = 1e-10;
                        t.method[i] = Method::AiryClosed;
                        break;
                    case TableMethod::Talbot: {
                        double terr = 0.0;
                        t.pdf_scaled[i] = pdf_talbot(params, spectral, ah, &terr);
                        t.err[i] = terr;
                        t.method[i] = Method::Talbot;
                        break;
                    }
                    case TableMethod::Auto: {
                        if (ah < 0.3) {  // hyp arguments blow up; go straight to Talbot
                            double terr = 0.0;
                            t.pdf_scaled[i] = pdf_talbot(params, spectral, ah, &terr);
                            t.err[i] = terr;
                            t.method[i] = Method::Talbot;
                        } else {
                            try {
                                PdfValue v = pdf_hyp(params, spectral, ah);
                                t.pdf_scaled[i] = v.value;
                                t.err[i] = v.err;
                                t.method[i] = Method::HypSeries;
                            } catch (const NumericalError&) {
                                double terr = 0.0;
                                t.pdf_scaled[i] = pdf_talbot(params, spectral, ah, &terr);
                                t.err[i] = terr;
                                t.method[i] = Method::Talbot;
                            }
                        }
                        break;
                    }
                }
            } catch (const std::exception& e) {
                if (!failed.exchange(true)) msg = e.what();
            }
        }
    };
    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, grid.n);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw NumericalError("build_table: " + msg);
    return t;
}

double Cdf::operator()(double x) const {
    if (a_hat.empty()) return 0.0;
    if (x <= a_hat.front()) return 0.0;
    if (x >= a_hat.back()) return 1.0;
    auto it = std::upper_bound(a_hat.begin(), a_hat.end(), x);
    size_t i = it - a_hat.begin();
    double w = (x - a_hat[i - 1]) / (a_hat[i] - a_hat[i - 1]);
    return cdf[i - 1] + w * (cdf[i] - cdf[i - 1]);
}

Cdf table_cdf(const DistributionTable& table) {
    Cdf c;
    size_t n = table.a_hat.size();
    c.a_hat = table.a_hat;
    c.cdf.resize(n, 0.0);
    double acc = 0.0;
    for (size_t i = 1; i < n; ++i) {
        double p0 = std::max(table.pdf_scaled[i - 1], 0.0);
        double p1 = std::max(table.pdf_scaled[i], 0.0);
        acc += 0.5 * (p0 + p1) * (table.a_hat[i] - table.a_hat[i - 1]);
        c.cdf[i] = acc;
    }
    // mass below the first grid point, assuming smooth growth from zero
    double head = 0.5 * std::max(table.pdf_scaled[0], 0.0) * table.a_hat[0];
    double total = acc + head;
    if (total <= 0.0) throw NumericalError("table_cdf: empty density");
    for (size_t i = 0; i < n; ++i) c.cdf[i] = (c.cdf[i] + head) / total;
    return c;
}

}  // namespace bessex::dist
