#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "loggas/errors.hpp"

namespace loggas {

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration on
// the Legendre recurrence. Cached per order.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;

    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / pp;
                z -= dz;
                if (std::fabs(dz) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
    }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += w[i] * f(mid + half * x[i]);
        return s * half;
    }
};

inline const GaussLegendre& gl_rule(int n) {
    static thread_local std::vector<std::pair<int, GaussLegendre>> cache;
    for (auto& [order, rule] : cache)
        if (order == n) return rule;
    cache.emplace_back(n, GaussLegendre(n));
    return cache.back().second;
}

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1].
inline const double gk_xk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline const double gk_wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline const double gk_wg[4] = {0.129484966168870, 0.279705391489277,
                                0.381830050505119, 0.417959183673469};

template <class F>
void gk15(F&& f, double a, double b, double& result, double& err) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double rk = 0.0, rg = 0.0;
    double fv[15];
    for (int i = 0; i < 15; ++i) {
        fv[i] = f(mid + half * gk_xk[i]);
        rk += gk_wk[i] * fv[i];
    }
    // embedded 7-point Gauss uses the odd Kronrod nodes
    rg = gk_wg[3] * fv[7];
    for (int i = 0; i < 3; ++i) rg += gk_wg[i] * (fv[1 + 2 * i] + fv[13 - 2 * i]);
    result = rk * half;
    err = std::fabs((rk - rg) * half);
}

template <class F>
double adapt(F&& f, double a, double b, double tol, int depth) {
    double r, e;
    gk15(f, a, b, r, e);
    // stop when the local error meets the budget, hits rounding level, or
    // the interval is too deep to refine further
    if (e <= tol || e <= 5e-16 * (std::fabs(r) + 1e-30) || depth >= 24) return r;
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.6 * tol, depth + 1) +
           adapt(f, mid, b, 0.6 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration with absolute tolerance.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-12) {
    if (a == b) return 0.0;
    return detail::adapt(f, a, b, tol, 0);
}

}  // namespace loggas
