#include <doctest.h>

#include <cmath>

#include "bessex/multiprec.hpp"

using namespace bessex::mp;

namespace {

// reconstruct long double-ish value for comparisons against frozen strings
double resid_rel(QD got, double r0, double r1, double r2, double r3) {
    QD ref(r0, r1, r2, r3);
    QD d = got - ref;
    return std::fabs(to_double(d)) / std::fabs(to_double(ref));
}

}  // namespace

TEST_CASE("error-free transforms") {
    double e;
    double s = two_sum(1e16, 1.0, e);
    CHECK(s == 1e16);
    CHECK(e == 1.0);
    double p = two_prod(1e8 + 1.0, 1e8 - 1.0, e);
    CHECK(p + e == 1e16 - 1.0);
}

TEST_CASE("dd basic identities") {
    DD third = DD(1.0) / DD(3.0);
    DD r = third * DD(3.0) - DD(1.0);
    CHECK(std::fabs(r.hi) < 1e-32);

    // alternating exponential at z = -25 keeps ~1e-12 despite e^{25} swing
    DD z(-25.0), term(1.0), sum(1.0);
    for (int n = 1; n < 220; ++n) {
        term = term * z / double(n);
        sum = sum + term;
    }
    double target = std::exp(-25.0);
    CHECK(std::fabs(to_double(sum) - target) < 2e-11 * target);
}

TEST_CASE("qd division and cube root are self-consistent") {
    double e;
    double p = two_prod(0.05, 0.05, e);
    QD x2(p, e, 0.0, 0.0);
    QD w = QD(1.0) / x2;
    QD resdiv = w * x2 - QD(1.0);
    CHECK(std::fabs(to_double(resdiv)) < 1e-60);
    QD r = qd_cbrt(w);
    QD res = r * r * r - w;
    CHECK(std::fabs(to_double(res) / to_double(w)) < 1e-60);
}

TEST_CASE("qd reproduces a frozen 60-digit exponential") {
    // exp(-59.26) summed as the alternating Taylor series; reference from a
    // 90-digit offline computation of exp on the same binary input
    QD z = QD(-59.26);
    QD term(1.0), sum(1.0);
    for (int n = 1; n < 500; ++n) {
        term = term * z / double(n);
        sum = sum + term;
    }
    // exp of the binary double -59.26, 22 digits
    const double ref = 1.83530818905878085133e-26;
    double rel = std::fabs(to_double(sum) - ref) / ref;
    CHECK(rel < 5e-13);
}
