#include "bessex/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace bessex::quad {
namespace {

constexpr double kX7[7] = {
    -0.9491079123427584, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427584};
constexpr double kW7[7] = {
    0.12948496616886992, 0.2797053914892766, 0.38183005050511876,
    0.4179591836734691,  0.38183005050511876, 0.2797053914892766,
    0.12948496616886992};

constexpr double kX15[15] = {
    -0.9879925180204854, -0.937273392400706,   -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388,  -0.3941513470775634,
    -0.20119409399743454, 0.0,                  0.20119409399743454,
    0.3941513470775634,   0.5709721726085388,   0.7244177313601701,
    0.8482065834104272,   0.937273392400706,    0.9879925180204854};
constexpr double kW15[15] = {
    0.030753241996118154, 0.07036604748810715, 0.10715922046717176,
    0.13957067792615432,  0.16626920581699411, 0.18616100001556224,
    0.19843148532711163,  0.20257824192556137, 0.19843148532711163,
    0.18616100001556224,  0.16626920581699411, 0.13957067792615432,
    0.10715922046717176,  0.07036604748810715, 0.030753241996118154};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double g7 = 0.0, g15 = 0.0;
    for (int i = 0; i < 7; ++i) g7 += kW7[i] * f(c + h * kX7[i]);
    for (int i = 0; i < 15; ++i) g15 += kW15[i] * f(c + h * kX15[i]);
    g7 *= h;
    g15 *= h;
    return {a, b, g15, std::fabs(g15 - g7)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_panels) {
    if (a == b) return {0.0, 0.0, 0, true};
    std::priority_queue<Panel> heap;
    Panel p0 = eval_panel(f, a, b);
    double total = p0.value, total_err = p0.err;
    heap.push(p0);
    int evals = 22;
    while (static_cast<int>(heap.size()) < max_panels) {
        double tol = abs_tol + rel_tol * std::fabs(total);
        if (total_err <= tol) break;
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval exhausted
            heap.push(worst);
            break;
        }
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        evals += 44;
    }
    double tol = abs_tol + rel_tol * std::fabs(total);
    return {total, total_err, evals, total_err <= tol};
}

QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            double first_width, double abs_tol, double rel_tol,
                            int max_panels) {
    double total = 0.0, total_err = 0.0;
    double lo = a, w = first_width;
    int evals = 0;
    bool converged = false;
    for (int seg = 0; seg < 64; ++seg) {
        QuadResult r = integrate(f, lo, lo + w, abs_tol * 0.1, rel_tol * 0.1, max_panels);
        total += r.value;
        total_err += r.err;
        evals += r.evaluations;
        double tol = abs_tol + rel_tol * std::fabs(total);
        if (seg > 2 && std::fabs(r.value) + r.err < 0.25 * std::max(tol, 1e-300)) {
            converged = true;
            break;
        }
        lo += w;
        w *= 2.0;
    }
    return {total, total_err, evals, converged};
}

}  // namespace bessex::quad
