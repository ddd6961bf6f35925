#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "loggas/errors.hpp"

namespace loggas {

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// unbiased sample variance
inline double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double fourth_central_moment(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) {
        const double d = x - m;
        s += d * d * d * d;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// standard error of the sample variance (via the fourth moment)
inline double variance_stderr(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double n = static_cast<double>(v.size());
    const double s2 = sample_variance(v);
    const double m4 = fourth_central_moment(v);
    const double var_of_var = (m4 - (n - 3.0) / (n - 1.0) * s2 * s2) / n;
    return std::sqrt(std::max(0.0, var_of_var));
}

// two-sample Kolmogorov-Smirnov statistic
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw Error("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    return d;
}

// asymptotic Kolmogorov distribution tail: P(sqrt(n_eff) D > lambda)
inline double kolmogorov_pvalue(double d, std::size_t na, std::size_t nb) {
    const double n_eff =
        static_cast<double>(na) * static_cast<double>(nb) / (na + nb);
    const double lambda = (std::sqrt(n_eff) + 0.12 + 0.11 / std::sqrt(n_eff)) * d;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term =
            2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, sum));
}

struct KsResult {
    double statistic = 0.0;
    double pvalue = 1.0;
};

inline KsResult ks_two_sample(const std::vector<double>& a,
                              const std::vector<double>& b) {
    KsResult r;
    r.statistic = ks_statistic(a, b);
    r.pvalue = kolmogorov_pvalue(r.statistic, a.size(), b.size());
    return r;
}

}  // namespace loggas
