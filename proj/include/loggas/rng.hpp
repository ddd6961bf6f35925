#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace loggas {

// splitmix64 mixer; used to derive independent substream seeds from
// (seed, stream index) pairs so replicas can run in parallel.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x51a94e38ULL));
}

// Seeded generator with a fixed Gaussian recipe. std::mt19937_64 output is
// pinned by the standard and the Box-Muller variant below is spelled out
// explicitly, so fixtures are portable across platforms and compilers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
        return Rng(substream_seed(seed, stream));
    }

    // uniform in [0, 1)
    double uniform() {
        return (gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t raw() { return gen_(); }

    std::uint64_t uniform_index(std::uint64_t n) {
        // rejection-free modulo bias is negligible for the n used here,
        // but do it properly anyway
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via trigonometric Box-Muller, one cached value.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // complex Gaussian with independent N(0, sigma2) real and imaginary parts
    std::complex<double> complex_gaussian(double sigma2 = 1.0) {
        const double s = std::sqrt(sigma2);
        return {s * gaussian(), s * gaussian()};
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace loggas
