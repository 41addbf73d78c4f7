#include "bessex/spectrum.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "bessex/specfun.hpp"

namespace bessex::spectrum {
namespace {

using State = std::array<double, 3>;  // phi, phi', integral of phi^2

struct Shooter {
    double cf;      // U0(U0+2)/4 = alpha^2 - 1/4
    double p;       // Frobenius exponent 1/2 + alpha_eff
    double two_a;   // 2 * alpha_eff
    double lambda;
    double rtol;

    void rhs(double x, const State& y, State& dy) const {
        dy[0] = y[1];
        dy[1] = (cf / (x * x) + x - lambda) * y[0];
        dy[2] = y[0] * y[0];
    }

    // adaptive Dormand-Prince 5(4) from x0 to x1 (either direction)
    void integrate(State& y, double x0, double x1) const {
        if (x0 == x1) return;
        double x = x0;
        double h = std::copysign(std::min(0.05, 0.2 * std::fabs(x0) + 1e-3), x1 - x0);
        State k1, k2, k3, k4, k5, k6, k7, yt, y5, y4;
        rhs(x, y, k1);
        int steps = 0;
        const int max_steps = 2000000;
        while ((x1 - x) * h > 0.0) {
            if (++steps > max_steps)
                throw NumericalError("spectrum: ODE step limit exceeded");
            if ((x + h - x1) * h > 0.0) h = x1 - x;
            for (int i = 0; i < 3; ++i) yt[i] = y[i] + h * (0.2 * k1[i]);
            rhs(x + 0.2 * h, yt, k2);
            for (int i = 0; i < 3; ++i)
                yt[i] = y[i] + h * (3.0 / 40 * k1[i] + 9.0 / 40 * k2[i]);
            rhs(x + 0.3 * h, yt, k3);
            for (int i = 0; i < 3; ++i)
                yt[i] = y[i] + h * (44.0 / 45 * k1[i] - 56.0 / 15 * k2[i] + 32.0 / 9 * k3[i]);
            rhs(x + 0.8 * h, yt, k4);
            for (int i = 0; i < 3; ++i)
                yt[i] = y[i] + h * (19372.0 / 6561 * k1[i] - 25360.0 / 2187 * k2[i] +
                                    64448.0 / 6561 * k3[i] - 212.0 / 729 * k4[i]);
            rhs(x + 8.0 / 9.0 * h, yt, k5);
            for (int i = 0; i < 3; ++i)
                yt[i] = y[i] + h * (9017.0 / 3168 * k1[i] - 355.0 / 33 * k2[i] +
                                    46732.0 / 5247 * k3[i] + 49.0 / 176 * k4[i] -
                                    5103.0 / 18656 * k5[i]);
            rhs(x + h, yt, k6);
            for (int i = 0; i < 3; ++i)
                y5[i] = y[i] + h * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] +
                                    125.0 / 192 * k4[i] - 2187.0 / 6784 * k5[i] +
                                    11.0 / 84 * k6[i]);
            rhs(x + h, y5, k7);
            for (int i = 0; i < 3; ++i)
                y4[i] = y[i] + h * (5179.0 / 57600 * k1[i] + 7571.0 / 16695 * k3[i] +
                                    393.0 / 640 * k4[i] - 92097.0 / 339200 * k5[i] +
                                    187.0 / 2100 * k6[i] + 1.0 / 40 * k7[i]);
            double norm = std::hypot(y5[0], y5[1]) + std::hypot(y[0], y[1]);
            double err = 0.0;
            for (int i = 0; i < 3; ++i) {
                double sc = rtol * (i < 2 ? norm : std::fabs(y5[2]) + norm * norm * 0.01 + 1e-30);
                err = std::max(err, std::fabs(y5[i] - y4[i]) / sc);
            }
            if (err <= 1.0) {
                x += h;
                y = y5;
                k1 = k7;  // FSAL
            } else {
                rhs(x, y, k1);
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
            double hmin = 1e-12 * (std::fabs(x) + 1.0);
            if (std::fabs(h) < hmin) h = std::copysign(hmin, h);
        }
    }
};

struct FrobStart {
    double x_a;
    double u, v;       // phi, phi' at x_a for trial d = 1
    double head_mass;  // integral of phi^2 over [0, x_a]
};

// series phi = x^p sum c_m x^m launched where it is accurate and well
// conditioned; c_m = (c_{m-3} - lambda c_{m-2}) / (m (m + 2 alpha))
FrobStart frobenius_start(const Shooter& sh, double x_request) {
    constexpr int kTerms = 40;
    double c[kTerms + 1];
    c[0] = 1.0;
    for (int m = 1; m <= kTerms; ++m) {
        double num = (m >= 3 ? c[m - 3] : 0.0) - sh.lambda * (m >= 2 ? c[m - 2] : 0.0);
        double den = m * (m + sh.two_a);
        c[m] = (std::fabs(den) < 1e-250) ? 0.0 : num / den;
    }
    double x_a = std::min(x_request, 0.3);
    for (; x_a >= 1e-5; x_a *= 0.5) {
        double s0 = 0.0, s1 = 0.0, max_term = 0.0, last = 0.0;
        double xm = 1.0;
        for (int m = 0; m <= kTerms; ++m) {
            double t = c[m] * xm;
            s0 += t;
            s1 += t * (sh.p + m);
            max_term = std::max(max_term, std::fabs(t));
            last = std::fabs(t);
            xm *= x_a;
        }
        if (last > 1e-17 * std::max(std::fabs(s0), 1e-30)) continue;      // not converged
        if (max_term > 1e3 * std::max(std::fabs(s0), 1e-30)) continue;    // cancellation
        double xp = std::pow(x_a, sh.p);
        double head = 0.0;
        for (int m = 0; m <= kTerms; ++m)
            for (int n = 0; n <= kTerms; ++n)
                head += c[m] * c[n] * std::pow(x_a, m + n) / (2.0 * sh.p + m + n + 1.0);
        head *= std::pow(x_a, 2.0 * sh.p + 1.0);
        return {x_a, xp * s0, xp * s1 / x_a, head};
    }
    throw NumericalError("spectrum: Frobenius launch failed to converge");
}

struct BranchState {
    double u, v, mass;
};

struct ShootOut {
    BranchState out, in;
    double x_m;
    double head_mass;
    double tail_mass;  // of the unit inward branch beyond x_b
};

// ratio Ai'(12)/Ai(12) and the integral of (Ai(x)/Ai(12))^2 over [12, inf)
struct AiryAnchor {
    double logderiv;
    double tail;
};

AiryAnchor airy_anchor() {
    static const AiryAnchor a = [] {
        double ai = sf::airy_ai(12.0), aip = sf::airy_ai_prime(12.0);
        return AiryAnchor{aip / ai, (aip * aip - 12.0 * ai * ai) / (ai * ai)};
    }();
    return a;
}

ShootOut shoot(const Shooter& sh, bool with_mass) {
    ShootOut r;
    r.x_m = std::max(1.0, 0.5 * sh.lambda);
    FrobStart fs = frobenius_start(sh, 0.3);
    State yo = {fs.u, fs.v, 0.0};
    sh.integrate(yo, fs.x_a, r.x_m);
    r.out = {yo[0], yo[1], yo[2]};
    r.head_mass = fs.head_mass;

    double x_b = sh.lambda + 12.0;
    AiryAnchor anchor = airy_anchor();
    State yi = {1.0, anchor.logderiv, 0.0};
    sh.integrate(yi, x_b, r.x_m);
    r.in = {yi[0], yi[1], std::fabs(yi[2])};
    r.tail_mass = anchor.tail;
    (void)with_mass;
    return r;
}

double mismatch(const Shooter& sh) {
    ShootOut s = shoot(sh, false);
    double no = std::hypot(s.out.u, s.out.v);
    double ni = std::hypot(s.in.u, s.in.v);
    return (s.out.u * s.in.v - s.out.v * s.in.u) / (no * ni);
}

// Brent root finder on the mismatch in lambda
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double fa, double fb, double tol_abs) {
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < 120; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * tol_abs;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw NumericalError("spectrum: root polish did not converge");
}

double lambda_asym_internal(double alpha_eff, int k) {
    double beta = (2.0 * alpha_eff + 2.0) / 4.0;
    double t = 1.5 * kPi * (k + beta);
    return std::cbrt(t * t);
}

Shooter make_shooter(const ExcursionParams& params, double lambda, double tol) {
    double a = params.alpha_eff();
    Shooter sh;
    sh.cf = params.u0 * (params.u0 + 2.0) / 4.0;
    sh.p = 0.5 + a;
    sh.two_a = 2.0 * a;
    sh.lambda = lambda;
    sh.rtol = std::max(tol / 10.0, 1e-13);
    return sh;
}

}  // namespace

double lambda_asymptotic(const ExcursionParams& params, int k) {
    if (k < 0) throw DomainError("lambda_asymptotic: requires k >= 0");
    double t = 1.5 * kPi * (k + (std::fabs(params.u0 + 1.0) + 2.0) / 4.0);
    return std::cbrt(t * t);
}

double dk_asymptotic(const ExcursionParams& params, double lambda_k) {
    if (!(lambda_k > 0.0)) throw DomainError("dk_asymptotic: requires lambda > 0");
    double a = params.alpha_eff();
    return std::pow(2.0, -a - 0.5) * std::sqrt(kPi) *
           std::pow(lambda_k, (2.0 * a - 1.0) / 4.0) / sf::gamma_fn(1.0 + a);
}

double eigenfunction_eval(const ExcursionParams& params, double lambda, double x) {
    if (!(x > 0.0)) throw DomainError("eigenfunction_eval: requires x > 0");
    params.validate();
    Shooter sh = make_shooter(params, lambda, 1e-10);
    FrobStart fs = frobenius_start(sh, std::min(0.3, x));
    if (std::fabs(fs.x_a - x) <= 1e-14 * x) return fs.u;
    State y = {fs.u, fs.v, 0.0};
    sh.integrate(y, fs.x_a, x);
    return y[0];
}

SpectralData solve_spectrum(const ExcursionParams& params, int k_count, double tol,
                            int threads) {
    params.validate();
    if (k_count < 1) throw DomainError("solve_spectrum: requires K >= 1");
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw DomainError("solve_spectrum: tol outside [1e-12, 1e-4]");

    const double a_eff = params.alpha_eff();
    auto wfun = [&](double lam) { return mismatch(make_shooter(params, lam, tol)); };

    // scan schedule: fine grid around the perturbative lambda_0 near the
    // continued U0 -> -3 limit, then a walk with step ~ quarter of the local
    // eigenvalue gap pi / sqrt(lambda)
    std::vector<std::pair<double, double>> brackets;
    auto scan = [&](double from, double to, int pieces) {
        double prev_l = from, prev_w = wfun(from);
        for (int i = 1; i <= pieces && static_cast<int>(brackets.size()) < k_count; ++i) {
            double l = from + (to - from) * i / pieces;
            double w = wfun(l);
            if ((w > 0.0) != (prev_w > 0.0)) brackets.emplace_back(prev_l, l);
            prev_l = l;
            prev_w = w;
        }
    };

    double scan_from = 0.35 * lambda_asym_internal(a_eff, 0);
    if (params.mode == BoundaryMode::Continued && params.u0 + 3.0 < 0.6) {
        double lam0_pred = 1.3717211641984483 * (params.u0 + 3.0);
        scan(0.15 * lam0_pred, 4.0 * lam0_pred, 24);
        scan_from = std::max(4.0 * lam0_pred, 0.2);
    }
    double lam_cap = lambda_asym_internal(a_eff, k_count + 2) + 5.0;
    {
        double prev_l = scan_from, prev_w = wfun(scan_from);
        double l = scan_from;
        while (static_cast<int>(brackets.size()) < k_count && l < lam_cap) {
            l += 0.25 * kPi / std::sqrt(std::max(l, 0.5));
            double w = wfun(l);
            if ((w > 0.0) != (prev_w > 0.0)) brackets.emplace_back(prev_l, l);
            prev_l = l;
            prev_w = w;
        }
    }
    if (static_cast<int>(brackets.size()) < k_count)
        throw NumericalError("solve_spectrum: bracket not found within the scan range");

    SpectralData out;
    out.lambdas.resize(k_count);
    out.dks.resize(k_count);
    out.count = k_count;
    out.tol = tol;
    out.params = params;

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string fail_msg;
    auto worker = [&] {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= k_count || failed.load()) return;
            try {
                auto [la, lb] = brackets[k];
                double fa = wfun(la), fb = wfun(lb);
                double lam = brent_root(wfun, la, lb, fa, fb, tol * std::max(1.0, lb));
                Shooter sh = make_shooter(params, lam, tol);
                ShootOut s = shoot(sh, true);
                double den = s.in.u * s.in.u + s.in.v * s.in.v;
                double scale = (s.out.u * s.in.u + s.out.v * s.in.v) / den;
                double n2 = s.head_mass + s.out.mass +
                            scale * scale * (s.in.mass + s.tail_mass);
                out.lambdas[k] = lam;
                out.dks[k] = 1.0 / std::sqrt(n2);
            } catch (const std::exception& e) {
                if (!failed.exchange(true)) fail_msg = e.what();
            }
        }
    };
    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, k_count);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw NumericalError("solve_spectrum: " + fail_msg);

    for (int k = 1; k < k_count; ++k)
        if (!(out.lambdas[k] > out.lambdas[k - 1]))
            throw NumericalError("solve_spectrum: eigenvalues not strictly increasing");
    return out;
}

}  // namespace bessex::spectrum
