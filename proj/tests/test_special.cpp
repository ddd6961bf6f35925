#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "loggas/quadrature.hpp"
#include "loggas/special.hpp"
#include "loggas/stats.hpp"

using namespace loggas;

TEST_CASE("e_partial basics") {
    CHECK(e_partial(0, 3.7) == 1.0);
    CHECK(e_partial(0, 0.0) == 1.0);
    // monotone in N: each added term is nonnegative
    for (int N = 0; N < 20; ++N)
        CHECK(e_partial(N, 2.5) <= e_partial(N + 1, 2.5));
    // converges to exp
    CHECK(e_partial(60, 5.0) == Catch::Approx(std::exp(5.0)).epsilon(1e-14));
}

// independent continued-fraction evaluation of Q(a,x), used only here:
// Q(a,x) = e^{-x} x^a / Gamma(a) * 1/(x+1-a - 1(1-a)/(x+3-a - ...))
static double q_contfrac_oracle(double a, double x) {
    double frac = 0.0;
    for (int i = 60; i >= 1; --i) {
        frac = -i * (i - a) / (x + 2.0 * i + 1.0 - a + frac);
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) / (x + 1.0 - a + frac);
}

TEST_CASE("scaled partial exponential equals regularized incomplete gamma") {
    // e^{-s} e_N(s) = Q(N+1, s); cross-check at (N,s) = (5,3) against an
    // independently coded continued fraction
    const double lhs = e_partial_scaled(5, 3.0);
    const double direct = std::exp(-3.0) * e_partial(5, 3.0);
    CHECK(lhs == Catch::Approx(direct).epsilon(1e-13));
    const double oracle = q_contfrac_oracle(6.0, 3.0);
    CHECK(lhs == Catch::Approx(oracle).epsilon(1e-10));
    CHECK(lhs >= 0.0);
    CHECK(lhs <= 1.0);
}

TEST_CASE("gamma_p against quadrature") {
    // P(a,x) = int_0^x t^{a-1} e^{-t} dt / Gamma(a); substitute t = u^2 so
    // the integrand is smooth down to 0 for every a >= 1/2
    for (double a : {0.5, 1.5, 3.0, 7.5}) {
        for (double x : {0.3, 1.0, 4.0, 9.0}) {
            const double quad = integrate_adaptive(
                [a](double u) {
                    return 2.0 * std::pow(u, 2.0 * a - 1.0) * std::exp(-u * u);
                },
                0.0, std::sqrt(x), 1e-13);
            CHECK(gamma_p(a, x) ==
                  Catch::Approx(quad / std::exp(std::lgamma(a))).epsilon(1e-9));
        }
    }
}

TEST_CASE("gauss-legendre exactness") {
    const auto& rule = gl_rule(12);
    // exact for polynomials of degree <= 23
    const double v = rule.integrate([](double x) { return x * x * x * x * x * x; },
                                    -1.0, 1.0);
    CHECK(v == Catch::Approx(2.0 / 7.0).margin(1e-13));
    const double w = rule.integrate([](double x) { return std::pow(x, 23); }, 0.0, 1.0);
    CHECK(w == Catch::Approx(1.0 / 24.0).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature on an oscillatory integrand") {
    const double v =
        integrate_adaptive([](double x) { return std::sin(40.0 * x); }, 0.0, M_PI, 1e-13);
    CHECK(v == Catch::Approx((1.0 - std::cos(40.0 * M_PI)) / 40.0).margin(1e-11));
}

TEST_CASE("wilson interval brackets the point estimate") {
    const auto iv = wilson_interval(380, 400);
    CHECK(iv.lo < 0.95);
    CHECK(iv.hi > 0.95);
    CHECK(iv.lo > 0.9);
    CHECK(iv.hi < 1.0);
}

TEST_CASE("two-sample KS separates shifted samples and accepts equal ones") {
    std::vector<double> a, b, c;
    for (int i = 0; i < 2000; ++i) {
        a.push_back(std::sin(i * 0.7) * 0.5 + i % 97 * 0.01);
        b.push_back(std::sin((i + 7777) * 0.7) * 0.5 + (i + 31) % 97 * 0.01);
        c.push_back(a.back() + 0.8);
    }
    CHECK(ks_two_sample(a, b).pvalue > 0.01);
    CHECK(ks_two_sample(a, c).pvalue < 1e-6);
}
