#include <doctest.h>

#include <cmath>

#include "bessex/common.hpp"
#include "bessex/quad.hpp"

using namespace bessex;

TEST_CASE("polynomial and gaussian integrals") {
    auto r = quad::integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(16.0).epsilon(1e-13));

    auto g = quad::integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 0.0, 1e-13);
    CHECK(g.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("integrable endpoint behaviour") {
    // sqrt singularity via a steep but finite integrand
    auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0,
                             0.0, 1e-10, 20000);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("semi-infinite integral with growth before decay") {
    // e^{-t/500} (1+t)^{7/6} peaks near t ~ 580 before decaying
    auto r = quad::integrate_to_inf(
        [](double t) { return std::exp(-t / 500.0) * std::pow(1.0 + t, 7.0 / 6.0); }, 0.0,
        1.0, 0.0, 1e-11);
    CHECK(r.converged);
    // frozen from a 30-digit offline quadrature
    CHECK(r.value == doctest::Approx(763835.89985047228).epsilon(1e-9));
}
