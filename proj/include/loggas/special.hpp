#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "loggas/errors.hpp"

namespace loggas {

// Regularized incomplete gamma functions P(a,x), Q(a,x), a > 0, x >= 0.
// Series for x < a+1, Lentz continued fraction otherwise.
namespace detail {

inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

// P(a,x) = gamma(a,x)/Gamma(a)
inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw Error("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_contfrac(a, x);
}

// Q(a,x) = 1 - P(a,x)
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw Error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_contfrac(a, x);
}

// lower incomplete gamma(a,x), unnormalized
inline double gamma_lower(double a, double x) {
    return gamma_p(a, x) * std::exp(std::lgamma(a));
}

// e^{-s} * sum_{k=0}^{N} s^k/k!  ==  Q(N+1, s), evaluated so the result
// stays in [0,1] for any s >= 0.
inline double e_partial_scaled(int N, double s) {
    if (N < 0) throw Error("e_partial_scaled: N < 0");
    if (s < 0.0) throw Error("e_partial_scaled: s < 0");
    if (s == 0.0) return 1.0;
    return gamma_q(static_cast<double>(N) + 1.0, s);
}

// partial exponential sum e_N^s = sum_{k=0}^{N} s^k/k!
// Direct summation when safe, scaled route otherwise.
inline double e_partial(int N, double s) {
    if (N < 0) throw Error("e_partial: N < 0");
    if (s < 0.0) throw Error("e_partial: s < 0");
    if (s < 700.0) {
        // The scaled form is accurate everywhere; for small s direct
        // summation is exact to rounding and avoids the special function.
        if (s < 30.0) {
            double term = 1.0, sum = 1.0;
            for (int k = 1; k <= N; ++k) {
                term *= s / k;
                sum += term;
            }
            return sum;
        }
        return e_partial_scaled(N, s) * std::exp(s);
    }
    return std::numeric_limits<double>::infinity();
}

inline double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// Wilson score interval for a binomial proportion at ~95% (z = 1.96).
struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

inline WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials,
                                      double z = 1.96) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

}  // namespace loggas
