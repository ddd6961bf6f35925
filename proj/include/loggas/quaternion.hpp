#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "loggas/errors.hpp"

namespace loggas {

using Complex = std::complex<double>;

// Quaternion with complex coefficients, q = q0*1 + q1*e1 + q2*e2 + q3*e3,
// identified with a 2x2 complex matrix through
//   1 = [[1,0],[0,1]], e1 = [[i,0],[0,-i]], e2 = [[0,1],[-1,0]],
//   e3 = [[0,i],[i,0]].
struct Quaternion {
    Complex q0{0.0, 0.0};
    Complex q1{0.0, 0.0};
    Complex q2{0.0, 0.0};
    Complex q3{0.0, 0.0};

    static Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static Quaternion scalar(Complex a) { return {a, 0.0, 0.0, 0.0}; }
    static Quaternion e1() { return {0.0, 1.0, 0.0, 0.0}; }
    static Quaternion e2() { return {0.0, 0.0, 1.0, 0.0}; }
    static Quaternion e3() { return {0.0, 0.0, 0.0, 1.0}; }

    Complex scalar_part() const { return q0; }

    Quaternion operator+(const Quaternion& o) const {
        return {q0 + o.q0, q1 + o.q1, q2 + o.q2, q3 + o.q3};
    }
    Quaternion operator-(const Quaternion& o) const {
        return {q0 - o.q0, q1 - o.q1, q2 - o.q2, q3 - o.q3};
    }
    Quaternion operator*(Complex c) const { return {c * q0, c * q1, c * q2, c * q3}; }

    // quaternion product, from the e_i multiplication table
    // (e1^2 = e2^2 = e3^2 = -1, e1 e2 = e3, e2 e3 = e1, e3 e1 = e2)
    Quaternion operator*(const Quaternion& o) const {
        return {q0 * o.q0 - q1 * o.q1 - q2 * o.q2 - q3 * o.q3,
                q0 * o.q1 + q1 * o.q0 + q2 * o.q3 - q3 * o.q2,
                q0 * o.q2 + q2 * o.q0 + q3 * o.q1 - q1 * o.q3,
                q0 * o.q3 + q3 * o.q0 + q1 * o.q2 - q2 * o.q1};
    }

    double norm1() const {
        return std::abs(q0) + std::abs(q1) + std::abs(q2) + std::abs(q3);
    }
};

// q-bar: keeps the scalar part, negates the vector part
inline Quaternion conj_dual(const Quaternion& q) {
    return {q.q0, -q.q1, -q.q2, -q.q3};
}

using Matrix2c = Eigen::Matrix2cd;

inline Matrix2c to_complex_2x2(const Quaternion& q) {
    const Complex i(0.0, 1.0);
    Matrix2c m;
    m(0, 0) = q.q0 + i * q.q1;
    m(0, 1) = q.q2 + i * q.q3;
    m(1, 0) = -q.q2 + i * q.q3;
    m(1, 1) = q.q0 - i * q.q1;
    return m;
}

inline Quaternion from_complex_2x2(const Matrix2c& m) {
    const Complex i(0.0, 1.0);
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    return {0.5 * (a + d), -0.5 * i * (a - d), 0.5 * (b - c), -0.5 * i * (b + c)};
}

// Theta in operator form, for kernel construction
inline Quaternion theta(Complex a, Complex b, Complex c, Complex d) {
    const Complex i(0.0, 1.0);
    return {0.5 * (a + d), -0.5 * i * (a - d), 0.5 * (b - c), -0.5 * i * (b + c)};
}

class QuaternionMatrix {
  public:
    explicit QuaternionMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    int size() const { return n_; }

    Quaternion& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Quaternion& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    // a_ij == conj_dual(a_ji) entrywise, absolute tolerance
    bool is_self_dual(double tol = 1e-12) const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const Quaternion d = (*this)(i, j) - conj_dual((*this)(j, i));
                if (d.norm1() > tol) return false;
            }
        return true;
    }

    QuaternionMatrix permuted(const std::vector<int>& perm) const {
        QuaternionMatrix out(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) out(i, j) = (*this)(perm[i], perm[j]);
        return out;
    }

  private:
    int n_;
    std::vector<Quaternion> a_;
};

// 2n x 2n complex matrix with block (i,j) = to_complex_2x2(a_ij)
inline Eigen::MatrixXcd complexify(const QuaternionMatrix& A) {
    const int n = A.size();
    Eigen::MatrixXcd m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.block<2, 2>(2 * i, 2 * j) = to_complex_2x2(A(i, j));
    return m;
}

namespace detail {

// product of entries around the closed cycle c: a_{c0 c1} a_{c1 c2} ... a_{c_{l-1} c0}
inline Quaternion cycle_product(const QuaternionMatrix& A, const std::vector<int>& c) {
    Quaternion p = A(c[0], c[1 % c.size()]);
    for (std::size_t k = 1; k < c.size(); ++k)
        p = p * A(c[k], c[(k + 1) % c.size()]);
    return p;
}

}  // namespace detail

struct QdetOptions {
    int dimension_cap = 9;
    bool check_self_dual = true;
    double self_dual_tol = 1e-12;
};

// Scalar-part cycle expansion of the quaternion determinant of a self-dual
// matrix: sum over permutations of sign(sigma) times the product over cycles
// of the scalar part of the ordered entry product. Factorial cost; the
// correlation functions in this library need n <= 6.
inline Complex qdet(const QuaternionMatrix& A, const QdetOptions& opt = {}) {
    const int n = A.size();
    if (n > opt.dimension_cap)
        throw DimensionTooLargeError("qdet: dimension " + std::to_string(n) +
                                     " exceeds cap " + std::to_string(opt.dimension_cap));
    if (opt.check_self_dual && !A.is_self_dual(opt.self_dual_tol))
        throw NotSelfDualError("qdet: matrix is not self-dual");
    if (n == 0) return {1.0, 0.0};

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total{0.0, 0.0};
    std::vector<char> seen(n);
    do {
        // decompose into cycles; sign = (-1)^(n - #cycles)
        std::fill(seen.begin(), seen.end(), 0);
        Complex term{1.0, 0.0};
        int ncycles = 0;
        for (int s = 0; s < n; ++s) {
            if (seen[s]) continue;
            std::vector<int> cyc;
            int cur = s;
            while (!seen[cur]) {
                seen[cur] = 1;
                cyc.push_back(cur);
                cur = perm[cur];
            }
            ++ncycles;
            const Quaternion p = detail::cycle_product(A, cyc);
#ifndef NDEBUG
            if (cyc.size() >= 2) {
                // the scalar part must not depend on the rotational reading
                std::vector<int> rot(cyc.begin() + 1, cyc.end());
                rot.push_back(cyc.front());
                const Quaternion p2 = detail::cycle_product(A, rot);
                assert(std::abs(p.scalar_part() - p2.scalar_part()) <=
                       1e-9 * (1.0 + std::abs(p.scalar_part())));
            }
#endif
            term *= p.scalar_part();
        }
        const double sign = ((n - ncycles) % 2 == 0) ? 1.0 : -1.0;
        total += sign * term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace loggas
