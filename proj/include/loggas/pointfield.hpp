#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "loggas/configuration.hpp"
#include "loggas/errors.hpp"
#include "loggas/kernels.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/quaternion.hpp"
#include "loggas/special.hpp"

namespace loggas {

enum class ReferenceMeasure { Lebesgue, Gaussian };

// Tagged description of a point-field kernel.
struct KernelSpec {
    enum class Kind {
        SineInf,         // bulk sine field on R, beta in {1,2,4}
        SineFiniteN,     // circular-ensemble kernel on the torus
        Ginibre,         // infinite Ginibre field on C (Lebesgue)
        GinibreFiniteN,  // N-point Ginibre (Lebesgue)
        GinibreMonomial, // K_N against the standard complex Gaussian
        GinibreTail,     // K*_N against the standard complex Gaussian
    };

    Kind kind = Kind::SineInf;
    int beta = 2;
    FiniteNParams par;                   // SineFiniteN
    int order = 1;                       // N for the Ginibre family
    std::optional<double> window;        // halfwidth; restricts sine kernels

    static KernelSpec sine_infinite(int b) {
        check_beta(b);
        return {Kind::SineInf, b, {}, 1, std::nullopt};
    }
    static KernelSpec sine_finite(int b, FiniteNParams p,
                                  std::optional<double> window = std::nullopt) {
        check_beta(b);
        KernelSpec s{Kind::SineFiniteN, b, p, 1, window};
        return s;
    }
    static KernelSpec ginibre() { return {Kind::Ginibre, 2, {}, 1, std::nullopt}; }
    static KernelSpec ginibre_finite(int N) {
        return {Kind::GinibreFiniteN, 2, {}, N, std::nullopt};
    }
    static KernelSpec ginibre_monomial(int N) {
        return {Kind::GinibreMonomial, 2, {}, N, std::nullopt};
    }
    static KernelSpec ginibre_tail(int N) {
        return {Kind::GinibreTail, 2, {}, N, std::nullopt};
    }

    bool is_sine() const { return kind == Kind::SineInf || kind == Kind::SineFiniteN; }

    ReferenceMeasure reference() const {
        return (kind == Kind::GinibreMonomial || kind == Kind::GinibreTail)
                   ? ReferenceMeasure::Gaussian
                   : ReferenceMeasure::Lebesgue;
    }
};

// conversion between the Gaussian-reference and Lebesgue-reference values of
// an n-point correlation: rho_gauss = rho_leb * pi^n * exp(sum |z_i|^2)
inline double rho_gaussian_to_lebesgue(double value, std::span<const Complex> zs) {
    double logf = 0.0;
    for (auto z : zs) logf += std::norm(z);
    return value * std::exp(-logf) / std::pow(M_PI, static_cast<double>(zs.size()));
}

inline double rho_lebesgue_to_gaussian(double value, std::span<const Complex> zs) {
    double logf = 0.0;
    for (auto z : zs) logf += std::norm(z);
    return value * std::exp(logf) * std::pow(M_PI, static_cast<double>(zs.size()));
}

namespace detail {

inline Complex ginibre_kernel_value(const KernelSpec& spec, Complex a, Complex b) {
    switch (spec.kind) {
        case KernelSpec::Kind::Ginibre: return kgin(a, b);
        case KernelSpec::Kind::GinibreFiniteN: return kginN(spec.order, a, b);
        case KernelSpec::Kind::GinibreMonomial: return kgin_monomial(spec.order, a, b);
        case KernelSpec::Kind::GinibreTail: return kgin_tail(spec.order, a, b);
        default: throw Error("not a Ginibre kernel");
    }
}

// intensity-1 quaternion kernel for the sine specs (see ksin_corr)
inline Quaternion sine_kernel_quaternion(const KernelSpec& spec, double dx) {
    if (spec.kind == KernelSpec::Kind::SineInf) return ksin_corr(spec.beta, dx);
    return ksinN(spec.beta, spec.par, dx).as_quaternion();
}

inline double sine_kernel_scalar(const KernelSpec& spec, double dx) {
    return spec.kind == KernelSpec::Kind::SineInf ? sine_S(dx) : sine_SN(spec.par, dx);
}

}  // namespace detail

// n-point correlation function: determinant of the kernel Gram matrix
// (ordinary determinant for scalar kernels, quaternion determinant for
// beta = 1, 4), against the reference measure declared by the spec.
inline double rho_n(const KernelSpec& spec, const Configuration& cfg,
                    const QdetOptions& qopt = {}) {
    const std::size_t n = cfg.size();
    if (n == 0) return 1.0;
    if (spec.is_sine()) {
        if (cfg.two_d) throw Error("rho_n: sine kernels take real points");
        if (spec.window)
            for (double x : cfg.xs)
                if (std::fabs(x) >= *spec.window) return 0.0;
        if (spec.beta == 2) {
            Eigen::MatrixXd g(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    g(i, j) = detail::sine_kernel_scalar(spec, cfg.xs[i] - cfg.xs[j]);
            return g.determinant();
        }
        QuaternionMatrix A(static_cast<int>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                A(static_cast<int>(i), static_cast<int>(j)) =
                    detail::sine_kernel_quaternion(spec, cfg.xs[i] - cfg.xs[j]);
        const Complex d = qdet(A, qopt);
        return d.real();
    }
    if (!cfg.two_d) throw Error("rho_n: Ginibre kernels take complex points");
    Eigen::MatrixXcd g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = detail::ginibre_kernel_value(spec, cfg.zs[i], cfg.zs[j]);
    return g.determinant().real();
}

inline double rho_n(const KernelSpec& spec, std::vector<double> xs) {
    return rho_n(spec, Configuration::real_points(std::move(xs)));
}
inline double rho_n(const KernelSpec& spec, std::vector<Complex> zs) {
    return rho_n(spec, Configuration::complex_points(std::move(zs)));
}

// Two-level cluster function T(x,y) = rho1(x) rho1(y) - rho2(x,y), the sign
// convention under which T >= 0 near the diagonal for determinantal fields
// and T(x-y) matches cluster_TN for the translation-invariant circular
// kernels.
inline double two_level_cluster(const KernelSpec& spec, double x, double y) {
    const double r1x = rho_n(spec, std::vector<double>{x});
    const double r1y = rho_n(spec, std::vector<double>{y});
    const double r2 = rho_n(spec, std::vector<double>{x, y});
    return r1x * r1y - r2;
}

inline double two_level_cluster(const KernelSpec& spec, Complex z, Complex w) {
    const double r1x = rho_n(spec, std::vector<Complex>{z});
    const double r1y = rho_n(spec, std::vector<Complex>{w});
    const double r2 = rho_n(spec, std::vector<Complex>{z, w});
    return r1x * r1y - r2;
}

// ---------------------------------------------------------------------------
// linear statistics
// ---------------------------------------------------------------------------

// real test function with compact support
struct LinearStatistic {
    std::function<double(double)> f;
    double support_lo = 0.0;
    double support_hi = 0.0;

    double operator()(double x) const {
        return (x < support_lo || x > support_hi) ? 0.0 : f(x);
    }

    // boundedness sanity check by sampling
    bool bounded_on_support(double limit = 1e12, int samples = 2048) const {
        for (int i = 0; i <= samples; ++i) {
            const double x =
                support_lo + (support_hi - support_lo) * i / static_cast<double>(samples);
            if (!std::isfinite(f(x)) || std::fabs(f(x)) > limit) return false;
        }
        return true;
    }
};

// planar statistic of angular-momentum form g(z) = a(|z|) e^{i m arg z} with
// compact radial support [0, radius]; this family covers every statistic the
// variance identities here are evaluated on (m = 0 radial bumps and
// indicators, m = 1 the rotation statistic h_r f)
struct RadialStatistic {
    std::function<double(double)> radial;
    double radius = 0.0;
    int mode = 0;

    Complex operator()(Complex z) const {
        const double t = std::abs(z);
        if (t > radius) return {0.0, 0.0};
        const double a = radial(t);
        if (mode == 0) return {a, 0.0};
        const double th = std::arg(z);
        return a * std::exp(Complex(0.0, mode * th));
    }

    // (2/pi) int |g|^2 dz
    double l2_bound() const {
        const auto& rule = gl_rule(96);
        const double v = rule.integrate(
            [&](double t) { return radial(t) * radial(t) * t; }, 0.0, radius);
        return 4.0 * v;
    }
};

inline RadialStatistic rotation_statistic(double r) {
    return RadialStatistic{[](double) { return 1.0; }, r, 1};
}

inline RadialStatistic disk_indicator(double r) {
    return RadialStatistic{[](double) { return 1.0; }, r, 0};
}

// ---------------------------------------------------------------------------
// means of linear statistics
// ---------------------------------------------------------------------------

// E <s, h> for translation-invariant periodic sine fields: rho1(0) * int h.
inline double mean_linear_stat(const KernelSpec& spec, const LinearStatistic& h) {
    if (!spec.is_sine())
        throw UnsupportedSpecError("mean_linear_stat: expected a sine spec");
    if (spec.window)
        throw UnsupportedSpecError(
            "mean_linear_stat: windowed field is not translation invariant; "
            "use the sampled-ensemble overload");
    const double rho1 = rho_n(spec, std::vector<double>{0.0});
    const double ih =
        integrate_adaptive([&](double x) { return h(x); }, h.support_lo, h.support_hi, 1e-12);
    return rho1 * ih;
}

// Monte Carlo mean over sampled configurations
inline double mean_linear_stat(const std::vector<Configuration>& samples,
                               const LinearStatistic& h) {
    if (samples.empty()) throw UnsupportedSpecError("mean_linear_stat: no samples");
    double total = 0.0;
    for (const auto& c : samples) {
        for (double x : c.xs) total += h(x);
    }
    return total / static_cast<double>(samples.size());
}

// E <s, g> for the Ginibre family: radial reduction. Nonzero angular
// momentum integrates to zero by rotation invariance of the diagonal.
inline double mean_linear_stat(const KernelSpec& spec, const RadialStatistic& g) {
    if (spec.is_sine()) throw UnsupportedSpecError("mean_linear_stat: need planar spec");
    if (g.mode != 0) return 0.0;
    const auto& rule = gl_rule(128);
    // diagonal kernel value times reference weight, as a function of |z|
    auto diag = [&](double t) -> double {
        const Complex z(t, 0.0);
        const double k = detail::ginibre_kernel_value(spec, z, z).real();
        if (spec.reference() == ReferenceMeasure::Gaussian)
            return k * std::exp(-t * t) / M_PI;
        return k;
    };
    return 2.0 * M_PI *
           rule.integrate([&](double t) { return g.radial(t) * diag(t) * t; }, 0.0,
                          g.radius);
}

// ---------------------------------------------------------------------------
// variance of a linear statistic for the periodic circular fields, through
// the exact frequency-lattice identity
//   Var = (1/n) sum_xi |F_N(h)(xi)|^2 m_N(xi),   m_N(xi) = rho1(0) - F_N(T)(xi)
// ---------------------------------------------------------------------------

struct PeriodicVariance {
    double variance = 0.0;
    double mean = 0.0;
    double m_at_zero = 0.0;
};

inline PeriodicVariance var_linear_stat_fourier(const FiniteNParams& par, int beta,
                                                const LinearStatistic& h,
                                                int quad_nodes = 1024) {
    check_beta(beta);
    const double n = static_cast<double>(par.n);
    if (h.support_lo < -n / 2.0 || h.support_hi > n / 2.0)
        throw UnsupportedSpecError("var_linear_stat_fourier: h not supported in T_N");
    const auto& rule = gl_rule(quad_nodes);

    const double ih = rule.integrate([&](double x) { return h(x); }, h.support_lo,
                                     h.support_hi);

    // F_N(h)(k/n) for k on the exact lattice; h real so |F(-k)| = |F(k)|
    const std::int64_t kmax = par.n * par.n / 2;
    double var = 0.0;
    for (std::int64_t k = 0; k <= kmax; ++k) {
        const double xi = static_cast<double>(k) / n;
        double re = 0.0, im = 0.0;
        re = rule.integrate([&](double x) { return h(x) * std::cos(2.0 * M_PI * xi * x); },
                            h.support_lo, h.support_hi);
        if (k > 0)
            im = rule.integrate(
                [&](double x) { return -h(x) * std::sin(2.0 * M_PI * xi * x); },
                h.support_lo, h.support_hi);
        const double mag2 = re * re + im * im;
        const double m_xi = 1.0 - fourier_TN(beta, par, LatticeFrequency{k});
        var += (k == 0 ? 1.0 : 2.0) * mag2 * m_xi;
    }
    PeriodicVariance out;
    out.variance = var / n;
    out.mean = ih;  // rho1(0) = 1 for the circular kernels
    out.m_at_zero = 1.0 - fourier_TN(beta, par, LatticeFrequency{0});
    return out;
}

// ---------------------------------------------------------------------------
// determinantal variance for the Ginibre family by quadrature:
//   Var(<s,g>) = int |g|^2 K(z,z) g(dz) - int int g(w) conj(g(z)) |K(w,z)|^2
// Two independent routes: the angular integrals done analytically (radial
// mode sums), and a full tensor quadrature with the relative angle kept as a
// numerical variable. Their agreement is the convergence check.
// ---------------------------------------------------------------------------

namespace detail {

// Taylor index range of the kernel: [k0, k1) plus c_k = 1/k!
inline void ginibre_mode_range(const KernelSpec& spec, int& k0, int& k1, double radius) {
    switch (spec.kind) {
        case KernelSpec::Kind::GinibreMonomial:
            k0 = 0;
            k1 = spec.order;
            break;
        case KernelSpec::Kind::GinibreTail:
            k0 = spec.order;
            k1 = spec.order + static_cast<int>(4.0 * radius * radius) + 60;
            break;
        case KernelSpec::Kind::Ginibre:
            k0 = 0;
            k1 = static_cast<int>(4.0 * radius * radius) + 60;
            break;
        default:
            throw UnsupportedSpecError("variance quadrature: unsupported spec");
    }
}

}  // namespace detail

struct VarianceResult {
    double variance = 0.0;       // analytic-angle route
    double variance_check = 0.0; // numeric-angle route
    double bound = 0.0;          // (2/pi) int |g|^2 dz
};

inline VarianceResult var_determinantal_quadrature(const RadialStatistic& g,
                                                   const KernelSpec& spec,
                                                   int radial_nodes = 96,
                                                   int angular_nodes = 256,
                                                   double rel_tol = 1e-6) {
    if (spec.is_sine() || spec.kind == KernelSpec::Kind::GinibreFiniteN)
        throw UnsupportedSpecError(
            "var_determinantal_quadrature: Gaussian-reference Ginibre specs only "
            "(Ginibre, GinibreMonomial, GinibreTail)");
    // All three kernels here are Taylor series in w conj(z) with coefficients
    // 1/k!; the variance only sees modes k and k + m.
    int k0 = 0, k1 = 0;
    detail::ginibre_mode_range(spec, k0, k1, g.radius);
    const int m = g.mode;
    const auto& rule = gl_rule(radial_nodes);

    // diagonal part: 2 int a(t)^2 Kdiag(t) e^{-t^2} t dt, Kdiag = sum_k t^{2k}/k!
    auto kdiag_scaled = [&](double t) -> double {  // K(t,t) e^{-t^2}
        const double s = t * t;
        switch (spec.kind) {
            case KernelSpec::Kind::GinibreMonomial:
                return e_partial_scaled(spec.order - 1, s);
            case KernelSpec::Kind::GinibreTail:
                return 1.0 - e_partial_scaled(spec.order - 1, s);
            default:
                return 1.0;
        }
    };
    const double diag = 2.0 * rule.integrate(
                                  [&](double t) {
                                      return g.radial(t) * g.radial(t) * kdiag_scaled(t) * t;
                                  },
                                  0.0, g.radius);

    // Radial mode integrals: the (k, l = k+m) pair contributes
    // 4 c_k c_l [int a(t) t^{k+l+1} e^{-t^2} dt]^2 -- note the same power
    // k+l+1 = 2k+m+1 on both sides of the double integral.
    auto mode_integral = [&](int k) -> double {
        return rule.integrate(
            [&](double t) {
                if (t <= 0.0) return 0.0;
                const double logpow =
                    (2.0 * k + m + 1.0) * std::log(t) - t * t;
                return g.radial(t) * std::exp(logpow);
            },
            0.0, g.radius);
    };

    double dbl = 0.0;
    for (int k = k0; k < k1; ++k) {
        const int l = k + m;
        if (l < k0 || l >= k1) continue;
        const double logc = -log_factorial(k) - log_factorial(l);
        const double fk = mode_integral(k);
        dbl += 4.0 * std::exp(logc) * fk * fk;
    }

    VarianceResult out;
    out.variance = diag - dbl;
    out.bound = g.l2_bound();

    // numeric-angle route: (2/pi) int_t int_s int_psi a(t) a(s) t s
    //   e^{-t^2-s^2} cos(m psi) |K|^2
    auto numeric_route = [&](int rn, int an) -> double {
        const auto& rr = gl_rule(rn);
        const double mid_shift = M_PI / an;
        double acc = 0.0;
        for (std::size_t it = 0; it < rr.x.size(); ++it) {
            const double t = 0.5 * g.radius * (rr.x[it] + 1.0);
            const double wt = 0.5 * g.radius * rr.w[it];
            for (std::size_t is = 0; is < rr.x.size(); ++is) {
                const double s = 0.5 * g.radius * (rr.x[is] + 1.0);
                const double ws = 0.5 * g.radius * rr.w[is];
                double ang = 0.0;
                for (int ia = 0; ia < an; ++ia) {
                    const double psi = 2.0 * M_PI * ia / an + mid_shift;
                    const Complex z2 = std::polar(s, psi);
                    const Complex kv = detail::ginibre_kernel_value(spec, Complex(t, 0.0), z2);
                    ang += std::cos(m * psi) * std::norm(kv);
                }
                ang *= 2.0 * M_PI / an;
                acc += wt * ws * g.radial(t) * g.radial(s) * t * s *
                       std::exp(-t * t - s * s) * ang;
            }
        }
        return diag - (2.0 / M_PI) * acc;
    };

    out.variance_check = numeric_route(radial_nodes, angular_nodes);
    const double scale = std::max({1.0, std::fabs(out.variance)});
    if (std::fabs(out.variance - out.variance_check) > rel_tol * scale)
        throw QuadratureNotConvergedError(
            "variance quadrature routes disagree beyond tolerance");
    if (out.variance > out.bound + 1e-9 * (1.0 + out.bound))
        throw Error("variance exceeds the (2/pi) L2 bound");
    return out;
}

// ---------------------------------------------------------------------------
// the finite-rank cross term of the variance decomposition
//   Var^{mu^N} = Var^{mu} + M - Var^{mu^N*}   (both variances of <s, h_r>)
// with closed form M = gamma(N + 1/2, r^2)^2 / ((N-1)! N!).
// ---------------------------------------------------------------------------

// closed form, positive
inline double M_N_r_closed(int N, double r) {
    if (N < 1 || r < 0.0) throw Error("M_N_r: need N >= 1, r >= 0");
    const double a = static_cast<double>(N) + 0.5;
    const double p = gamma_p(a, r * r);
    if (p <= 0.0) return 0.0;
    const double log_gamma_lower = std::log(p) + std::lgamma(a);
    return std::exp(2.0 * log_gamma_lower - log_factorial(N - 1) - log_factorial(N));
}

// |M| bound from the partial-exponential estimate:
// 2 (1 - e^{-r^2} e_{N-1}(r^2)) (1 - e^{-r^2} e_N(r^2))
inline double M_bound(int N, double r) {
    if (N < 1 || r < 0.0) throw Error("M_bound: need N >= 1, r >= 0");
    const double s = r * r;
    return 2.0 * (1.0 - e_partial_scaled(N - 1, s)) * (1.0 - e_partial_scaled(N, s));
}

// quadrature of the defining double integral
//   int h(w) conj(h(z)) { |K|^2 - |K_N|^2 - |K*_N|^2 } g(dw) g(dz),
// the cross part 2 Re K_N conj(K*_N) evaluated directly
inline double M_N_r_quadrature(int N, double r, int radial_nodes = 96,
                               int angular_nodes = 256) {
    const auto& rule = gl_rule(radial_nodes);
    double acc = 0.0;
    for (std::size_t it = 0; it < rule.x.size(); ++it) {
        const double t = 0.5 * r * (rule.x[it] + 1.0);
        const double wt = 0.5 * r * rule.w[it];
        for (std::size_t is = 0; is < rule.x.size(); ++is) {
            const double s = 0.5 * r * (rule.x[is] + 1.0);
            const double ws = 0.5 * r * rule.w[is];
            double ang = 0.0;
            for (int ia = 0; ia < angular_nodes; ++ia) {
                const double psi = 2.0 * M_PI * ia / angular_nodes + M_PI / angular_nodes;
                const Complex z2 = std::polar(s, psi);
                const Complex kn = kgin_monomial(N, Complex(t, 0.0), z2);
                const Complex kt = kgin_tail(N, Complex(t, 0.0), z2);
                ang += std::cos(psi) * 2.0 * (kn * std::conj(kt)).real();
            }
            ang *= 2.0 * M_PI / angular_nodes;
            acc += wt * ws * t * s * std::exp(-t * t - s * s) * ang;
        }
    }
    return (2.0 / M_PI) * acc;
}

struct DecompositionReport {
    double var_full = 0.0;
    double var_finite = 0.0;
    double var_tail = 0.0;
    double m_value = 0.0;  // the defining integral, = M_N_r_closed for h_r
    double residual = 0.0; // |var_finite - (var_full + m - var_tail)| / scale
};

// Checks Var^{mu^N} = Var^{mu} + M - Var^{mu^N*} for g in the h_r f family
// (angular momentum m); M is computed from the same mode decomposition.
inline DecompositionReport var_decomposition_check(int N, const RadialStatistic& g) {
    DecompositionReport rep;
    const auto full = var_determinantal_quadrature(g, KernelSpec::ginibre());
    const auto fin = var_determinantal_quadrature(g, KernelSpec::ginibre_monomial(N));
    const auto tail = var_determinantal_quadrature(g, KernelSpec::ginibre_tail(N));
    rep.var_full = full.variance;
    rep.var_finite = fin.variance;
    rep.var_tail = tail.variance;

    // cross term by the same radial mode reduction: modes pair k < N <= k+m
    const auto& rule = gl_rule(96);
    const int m = g.mode;
    double cross = 0.0;
    for (int k = std::max(0, N - m); k < N; ++k) {
        const int l = k + m;
        if (l < N) continue;
        const double fk = rule.integrate(
            [&](double t) {
                if (t <= 0.0) return 0.0;
                return g.radial(t) *
                       std::exp((2.0 * k + m + 1.0) * std::log(t) - t * t);
            },
            0.0, g.radius);
        cross += 4.0 * std::exp(-log_factorial(k) - log_factorial(l)) * fk * fk;
    }
    rep.m_value = cross;
    const double scale =
        std::max({1.0, std::fabs(rep.var_full), std::fabs(rep.var_finite)});
    rep.residual =
        std::fabs(rep.var_finite - (rep.var_full + rep.m_value - rep.var_tail)) / scale;
    return rep;
}

// Var^{mu^N_gin}(<s, h_r f>) with radial f (Lemma-scale rotation statistic)
inline VarianceResult var_rotation_statistic(int N, double r,
                                             std::function<double(double)> f_radial) {
    RadialStatistic g{std::move(f_radial), r, 1};
    return var_determinantal_quadrature(g, KernelSpec::ginibre_monomial(N));
}

}  // namespace loggas
