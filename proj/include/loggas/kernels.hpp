#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/quaternion.hpp"
#include "loggas/special.hpp"

namespace loggas {

// ---------------------------------------------------------------------------
// sine-kernel component functions, infinite volume
// ---------------------------------------------------------------------------

// S(x) = sin(pi x)/(pi x), S(0) = 1
inline double sine_S(double x) {
    const double t = M_PI * x;
    if (std::fabs(t) < 1e-8) return 1.0 - t * t / 6.0;
    return std::sin(t) / t;
}

// D(x) = S'(x) = (pi x cos(pi x) - sin(pi x)) / (pi x^2), D(0) = 0
inline double sine_D(double x) {
    const double t = M_PI * x;
    if (std::fabs(t) < 1e-4) {
        // series: S(x) = sum (-1)^k t^{2k} / (2k+1)!, differentiate in x
        return M_PI * (-t / 3.0 + t * t * t / 30.0);
    }
    return (t * std::cos(t) - std::sin(t)) / (M_PI * x * x);
}

// I(x) = int_0^x S(y) dy. Power series for |x| <= 2, adaptive quadrature
// beyond (the series term count grows with the argument).
inline double sine_I(double x) {
    const double ax = std::fabs(x);
    if (ax <= 2.0) {
        const double t = M_PI * x;
        double term = t;  // (pi x)^{2k+1}/(2k+1)! at k=0
        double sum = t;   // term / (2k+1) accumulated; k=0 gives t
        for (int k = 1; k <= 40; ++k) {
            term *= -t * t / ((2.0 * k) * (2.0 * k + 1.0));
            const double add = term / (2.0 * k + 1.0);
            sum += add;
            if (std::fabs(add) < 1e-17 * std::fabs(sum) + 1e-300) break;
        }
        return sum / M_PI;
    }
    const double sgn = x > 0 ? 1.0 : -1.0;
    return sgn * (sine_I(2.0) +
                  integrate_adaptive([](double y) { return sine_S(y); }, 2.0, ax, 1e-13));
}

inline double sgn0(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// ---------------------------------------------------------------------------
// finite-N frequency data
// ---------------------------------------------------------------------------

// Frequency index sets for the circular ensembles on the torus
// T_N = (-n/2, n/2]:
//   P_N   = half-integers in (-n/2, n/2), n of them, used for beta = 1, 2
//           (requires n even so that 0 is excluded),
//   P_N4  = half-integers in (-n, n), 2n of them, used for beta = 4.
struct FiniteNParams {
    int level = 0;       // the paper-schedule level when constructed from one
    std::int64_t n = 0;  // torus size

    static FiniteNParams from_torus_size(std::int64_t n, int level = 0) {
        if (n < 1) throw Error("FiniteNParams: torus size must be >= 1");
        FiniteNParams p;
        p.n = n;
        p.level = level;
        return p;
    }

    // Dyson schedule n_N = 2^{4N}
    static FiniteNParams from_level(int N) {
        if (N < 1 || N > 14) throw Error("FiniteNParams: level out of range");
        return from_torus_size(std::int64_t(1) << (4 * N), N);
    }

    double window_halfwidth() const { return static_cast<double>(level); }

    // P_N; only defined for even torus size
    std::vector<double> freq_beta12() const {
        if (n % 2 != 0)
            throw Error("FiniteNParams: P_N requires an even torus size");
        std::vector<double> p(static_cast<std::size_t>(n));
        for (std::int64_t k = 1; k <= n; ++k)
            p[static_cast<std::size_t>(k - 1)] =
                -(static_cast<double>(n) + 1.0) / 2.0 + static_cast<double>(k);
        return p;
    }

    // P_{N,4}
    std::vector<double> freq_beta4() const {
        std::vector<double> p(static_cast<std::size_t>(2 * n));
        for (std::int64_t k = -n; k < n; ++k)
            p[static_cast<std::size_t>(k + n)] = static_cast<double>(k) + 0.5;
        return p;
    }
};

// S_N(x) = sin(pi x) / (n sin(pi x / n)), removable singularities at n Z.
// Reduce to the fundamental period first; that also keeps the numerator
// argument small for large |x|.
inline double sine_SN(const FiniteNParams& par, double x) {
    const double n = static_cast<double>(par.n);
    const double k = std::round(x / n);
    const double d = x - k * n;  // |d| <= n/2
    // sin(pi x) = (-1)^{kn} sin(pi d), sin(pi x/n) = (-1)^k sin(pi d/n)
    const auto ki = static_cast<std::int64_t>(k);
    const double sign = (ki * (par.n + 1)) % 2 == 0 ? 1.0 : -1.0;
    if (std::fabs(d) < 1e-7) {
        const double t = M_PI * d;
        return sign * (1.0 - t * t / 6.0 * (1.0 - 1.0 / (n * n)));
    }
    return sign * std::sin(M_PI * d) / (n * std::sin(M_PI * d / n));
}

// D_N(x) via the finite Fourier sum
inline double sine_DN(const FiniteNParams& par, double x) {
    const double n = static_cast<double>(par.n);
    const auto p = par.freq_beta12();
    double s = 0.0;
    for (std::size_t i = p.size() / 2; i < p.size(); ++i)  // positive half
        s += p[i] * std::sin(2.0 * M_PI * x * p[i] / n);
    return -(4.0 * M_PI / (n * n)) * s;
}

// I_N(x) via the finite Fourier sum; exact, no quadrature
inline double sine_IN(const FiniteNParams& par, double x) {
    const double n = static_cast<double>(par.n);
    const auto p = par.freq_beta12();
    double s = 0.0;
    for (std::size_t i = p.size() / 2; i < p.size(); ++i)
        s += std::sin(2.0 * M_PI * x * p[i] / n) / p[i];
    return s / M_PI;
}

inline double sine_JN(const FiniteNParams& par, double x) {
    return sine_IN(par, x) - 0.5 * sgn0(x);
}

// beta = 4 component functions. The kernel template for beta = 4 doubles its
// argument, so the natural finite-N component lives on the doubled frequency
// lattice P_{N,4}:
//   S4_N(y) = sin(pi y) / (n sin(pi y / (2n))),   S4_N(0) = 2.
// These are what "the replacement of S by S_N" has to mean for beta = 4:
// with them the kernel diagonal gives intensity 1, which brute-force
// integration of the beta = 4 circular density confirms (see tests).
inline double sine_SN4(const FiniteNParams& par, double y) {
    const double n = static_cast<double>(par.n);
    const double k = std::round(y / (2.0 * n));
    const double d = y - k * 2.0 * n;  // |d| <= n
    // sin(pi y) = sin(pi d), sin(pi y/(2n)) = (-1)^k sin(pi d/(2n))
    const double sign = static_cast<std::int64_t>(k) % 2 == 0 ? 1.0 : -1.0;
    if (std::fabs(d) < 1e-7) {
        const double t = M_PI * d;
        return sign * 2.0 * (1.0 - t * t / 6.0 * (1.0 - 0.25 / (n * n)));
    }
    return sign * std::sin(M_PI * d) / (n * std::sin(M_PI * d / (2.0 * n)));
}

inline double sine_DN4(const FiniteNParams& par, double y) {
    const double n = static_cast<double>(par.n);
    const auto p = par.freq_beta4();
    double s = 0.0;
    for (std::size_t i = p.size() / 2; i < p.size(); ++i)
        s += p[i] * std::sin(M_PI * y * p[i] / n);
    return -(2.0 * M_PI / (n * n)) * s;
}

inline double sine_IN4(const FiniteNParams& par, double y) {
    const double n = static_cast<double>(par.n);
    const auto p = par.freq_beta4();
    double s = 0.0;
    for (std::size_t i = p.size() / 2; i < p.size(); ++i)
        s += std::sin(M_PI * y * p[i] / n) / p[i];
    return (2.0 / M_PI) * s;
}

// ---------------------------------------------------------------------------
// sine kernels
// ---------------------------------------------------------------------------

struct SineKernelValue {
    bool is_scalar = true;
    double s = 0.0;     // beta = 2
    Quaternion q;       // beta = 1, 4

    Quaternion as_quaternion() const {
        return is_scalar ? Quaternion::scalar(s) : q;
    }
};

inline void check_beta(int beta) {
    if (beta != 1 && beta != 2 && beta != 4)
        throw Error("beta must be one of {1,2,4}");
}

// infinite-volume kernel K_sin,beta
inline SineKernelValue ksin(int beta, double x) {
    check_beta(beta);
    SineKernelValue v;
    if (beta == 2) {
        v.is_scalar = true;
        v.s = sine_S(x);
        return v;
    }
    v.is_scalar = false;
    if (beta == 1) {
        v.q = theta(sine_S(x), sine_D(x), sine_I(x) - 0.5 * sgn0(x), sine_S(x));
    } else {
        v.q = theta(0.5 * sine_S(2.0 * x), 0.5 * sine_D(2.0 * x),
                    0.5 * sine_I(2.0 * x), 0.5 * sine_S(2.0 * x));
    }
    return v;
}

// finite-N circular kernel K^N_sin,beta
inline SineKernelValue ksinN(int beta, const FiniteNParams& par, double x) {
    check_beta(beta);
    SineKernelValue v;
    if (beta == 2) {
        v.is_scalar = true;
        v.s = sine_SN(par, x);
        return v;
    }
    v.is_scalar = false;
    if (beta == 1) {
        v.q = theta(sine_SN(par, x), sine_DN(par, x), sine_JN(par, x), sine_SN(par, x));
    } else {
        const double y = 2.0 * x;
        v.q = theta(0.5 * sine_SN4(par, y), 0.5 * sine_DN4(par, y),
                    0.5 * sine_IN4(par, y), 0.5 * sine_SN4(par, y));
    }
    return v;
}

// Kernel normalized so the one-point function is identically 1. For
// beta = 1, 2 this is ksin itself. For beta = 4 the infinite-volume template
// carries Mehta's half-intensity convention (scalar part 1/2 at x = 0); the
// intensity-1 kernel is twice it, and it is the N -> infinity limit of
// ksinN(4, .).
inline Quaternion ksin_corr(int beta, double x) {
    const SineKernelValue v = ksin(beta, x);
    Quaternion q = v.as_quaternion();
    if (beta == 4) q = q * Complex(2.0, 0.0);
    return q;
}

// ---------------------------------------------------------------------------
// Ginibre kernels
// ---------------------------------------------------------------------------

// K_gin(z1,z2) = (1/pi) exp(-|z1|^2/2 - |z2|^2/2 + z1 conj(z2)); Lebesgue
// reference measure
inline Complex kgin(Complex z1, Complex z2) {
    const Complex ex = -0.5 * std::norm(z1) - 0.5 * std::norm(z2) + z1 * std::conj(z2);
    return std::exp(ex) / M_PI;
}

// finite-N kernel (1/pi) e_{N-1}(z1 conj z2) exp(-|z1|^2/2 - |z2|^2/2).
// The running term starts at exp(-M) <= exp(-|w|) so nothing overflows.
inline Complex kginN(int N, Complex z1, Complex z2) {
    if (N < 1) throw Error("kginN: N must be >= 1");
    const double M = 0.5 * (std::norm(z1) + std::norm(z2));
    const Complex w = z1 * std::conj(z2);
    if (M > 700.0) return {0.0, 0.0};
    Complex term = std::exp(-M);
    Complex sum = term;
    for (int k = 1; k < N; ++k) {
        term *= w / static_cast<double>(k);
        sum += term;
    }
    return sum / M_PI;
}

// Gaussian-reference kernels of the variance decomposition:
//   K_N(z1,z2)     = sum_{k=0}^{N-1} (z1 conj z2)^k / k!
//   K*_N(z1,z2)    = sum_{k=N}^inf   (z1 conj z2)^k / k!
//   K = K_N + K*_N = exp(z1 conj z2)
inline Complex kgin_monomial(int N, Complex z1, Complex z2) {
    if (N < 1) throw Error("kgin_monomial: N must be >= 1");
    const Complex w = z1 * std::conj(z2);
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int k = 1; k < N; ++k) {
        term *= w / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

inline Complex kgin_tail(int N, Complex z1, Complex z2) {
    if (N < 1) throw Error("kgin_tail: N must be >= 1");
    const Complex w = z1 * std::conj(z2);
    const double aw = std::abs(w);
    if (aw == 0.0) return {0.0, 0.0};
    if (std::fabs(w.imag()) < 1e-300 && w.real() >= 0.0) {
        // real nonnegative case via the regularized incomplete gamma,
        // avoiding the exp(w) - e_{N-1}(w) cancellation
        return {std::exp(w.real()) * gamma_p(static_cast<double>(N), w.real()), 0.0};
    }
    // ascending series from k = N
    Complex term = std::exp(static_cast<double>(N) * std::log(Complex(w)) -
                            Complex(log_factorial(N), 0.0));
    Complex sum = term;
    for (int k = N + 1; k < N + 4000; ++k) {
        term *= w / static_cast<double>(k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// two-level cluster function of the circular ensembles (translation
// invariant: T(x) = rho1(x) rho1(0) - rho2(x,0) on the torus)
// ---------------------------------------------------------------------------

// closed forms
inline double cluster_TN_closed(int beta, const FiniteNParams& par, double x) {
    check_beta(beta);
    if (beta == 2) {
        const double s = sine_SN(par, x);
        return s * s;
    }
    if (beta == 1) {
        const double s = sine_SN(par, x);
        return s * s - sine_DN(par, x) * sine_JN(par, x);
    }
    const double y = 2.0 * x;
    const double s = sine_SN4(par, y);
    return 0.25 * (s * s - sine_DN4(par, y) * sine_IN4(par, y));
}

// quaternion-product route: [K(x) K(-x)]^(0)
inline double cluster_TN_quaternion(int beta, const FiniteNParams& par, double x) {
    check_beta(beta);
    if (beta == 2) return sine_SN(par, x) * sine_SN(par, -x);
    const Quaternion a = ksinN(beta, par, x).as_quaternion();
    const Quaternion b = ksinN(beta, par, -x).as_quaternion();
    return (a * b).scalar_part().real();
}

// Fourier-sum route, exact finite sums over the frequency sets. For beta = 1
// the bilinear p/q sums cover S_N^2 - D_N I_N; the sgn part of J_N
// contributes an extra + sgn(x) D_N(x) / 2 which is kept explicitly.
inline double cluster_TN_fourier(int beta, const FiniteNParams& par, double x) {
    check_beta(beta);
    const double n = static_cast<double>(par.n);
    if (beta == 2 || beta == 1) {
        const auto p = par.freq_beta12();
        double re_e = 0.0, im_e = 0.0;
        for (double f : p) {
            re_e += std::cos(2.0 * M_PI * x * f / n);
            im_e += std::sin(2.0 * M_PI * x * f / n);
        }
        const double first = (re_e * re_e + im_e * im_e) / (n * n);
        if (beta == 2) return first;
        // cross term: Re{ [sum_p p e(p)] [sum_q e(q)/q] } / n^2
        double re_a = 0.0, im_a = 0.0, re_b = 0.0, im_b = 0.0;
        for (double f : p) {
            const double c = std::cos(2.0 * M_PI * x * f / n);
            const double s = std::sin(2.0 * M_PI * x * f / n);
            re_a += f * c;
            im_a += f * s;
            re_b += c / f;
            im_b += s / f;
        }
        const double cross = (re_a * re_b - im_a * im_b) / (n * n);
        return first - cross + 0.5 * sgn0(x) * sine_DN(par, x);
    }
    const auto p4 = par.freq_beta4();
    double re_e = 0.0, im_e = 0.0, re_a = 0.0, im_a = 0.0, re_b = 0.0, im_b = 0.0;
    for (double f : p4) {
        const double c = std::cos(2.0 * M_PI * x * f / n);
        const double s = std::sin(2.0 * M_PI * x * f / n);
        re_e += c;
        im_e += s;
        re_a += f * c;
        im_a += f * s;
        re_b += c / f;
        im_b += s / f;
    }
    const double first = (re_e * re_e + im_e * im_e) / (4.0 * n * n);
    const double cross = (re_a * re_b - im_a * im_b) / (4.0 * n * n);
    return first - cross;
}

// Primary evaluator: quaternion route checked against the closed form.
inline double cluster_TN(int beta, const FiniteNParams& par, double x,
                         double route_tol = 1e-9) {
    const double a = cluster_TN_quaternion(beta, par, x);
    const double b = cluster_TN_closed(beta, par, x);
    if (std::fabs(a - b) > route_tol * (1.0 + std::fabs(b)))
        throw RouteMismatchError("cluster_TN: quaternion and closed-form routes differ by " +
                                 std::to_string(std::fabs(a - b)));
    return b;
}

// ---------------------------------------------------------------------------
// Fourier transform of the cluster function on the exact frequency lattice
// xi = k/n, k integer, -n^2/2 < k <= n^2/2. Exact finite convolution counts.
// ---------------------------------------------------------------------------

struct LatticeFrequency {
    std::int64_t k = 0;  // xi = k / n

    static LatticeFrequency from_value(const FiniteNParams& par, double xi,
                                       double tol = 1e-9) {
        const double kf = xi * static_cast<double>(par.n);
        const double kr = std::round(kf);
        if (std::fabs(kf - kr) > tol)
            throw OffLatticeError("frequency " + std::to_string(xi) +
                                  " is not on the lattice Z/" + std::to_string(par.n));
        const auto k = static_cast<std::int64_t>(kr);
        if (2 * k <= -par.n * par.n || 2 * k > par.n * par.n)
            throw OffLatticeError("frequency outside T_N");
        return {k};
    }
};

inline double fourier_TN(int beta, const FiniteNParams& par, LatticeFrequency xi) {
    check_beta(beta);
    const double n = static_cast<double>(par.n);
    const double k = static_cast<double>(xi.k);
    if (beta == 2) {
        const double c = n - std::fabs(k);
        return c > 0.0 ? c / n : 0.0;
    }
    if (beta == 1) {
        const double c = n - std::fabs(k);
        double v = c > 0.0 ? c / n : 0.0;
        const auto p = par.freq_beta12();
        // - (1/n) sum_{p, k-p in P_N} p/(k-p)
        double cross = 0.0;
        const double half = n / 2.0;
        for (double f : p) {
            const double q = k - f;
            if (q > -half && q < half) cross += f / q;
        }
        // sgn part of J_N: - (1/n) sum_p p/(p-k)
        double sgn_term = 0.0;
        for (double f : p) sgn_term += f / (f - k);
        return v - cross / n - sgn_term / n;
    }
    const double c4 = 2.0 * n - std::fabs(k);
    double v = c4 > 0.0 ? c4 / (4.0 * n) : 0.0;
    const auto p4 = par.freq_beta4();
    double cross = 0.0;
    for (double f : p4) {
        const double q = k - f;
        if (q > -n && q < n) cross += f / q;
    }
    return v - cross / (4.0 * n);
}

inline double fourier_TN(int beta, const FiniteNParams& par, double xi) {
    return fourier_TN(beta, par, LatticeFrequency::from_value(par, xi));
}

}  // namespace loggas
