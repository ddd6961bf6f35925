#include <catch2/catch_amalgamated.hpp>
#include <Eigen/Dense>

#include "loggas/quaternion.hpp"
#include "loggas/rng.hpp"

using namespace loggas;

namespace {

Quaternion random_quaternion(Rng& rng) {
    return {Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), rng.gaussian()),
            Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), rng.gaussian())};
}

// quaternion whose 2x2 matrix image is real, the class every sine-kernel
// entry lives in (q0, q2 real; q1, q3 purely imaginary)
Quaternion random_real_block_quaternion(Rng& rng) {
    Matrix2c m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = Complex(rng.gaussian(), 0.0);
    return from_complex_2x2(m);
}

// random self-dual matrix with real 2x2 blocks: free entries above the
// diagonal, real scalar diagonal. The quaternion determinant of such a
// matrix is real.
QuaternionMatrix random_self_dual(int n, Rng& rng) {
    QuaternionMatrix A(n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = Quaternion::scalar(Complex(rng.gaussian(), 0.0));
        for (int j = i + 1; j < n; ++j) {
            A(i, j) = random_real_block_quaternion(rng);
            A(j, i) = conj_dual(A(i, j));
        }
    }
    return A;
}

}  // namespace

TEST_CASE("basis matrices") {
    const Complex I(0.0, 1.0);
    auto m1 = to_complex_2x2(Quaternion::one());
    CHECK(m1(0, 0) == Complex(1.0, 0.0));
    CHECK(m1(0, 1) == Complex(0.0, 0.0));
    CHECK(m1(1, 1) == Complex(1.0, 0.0));

    auto m2 = to_complex_2x2(Quaternion::e2());
    CHECK(m2(0, 0) == Complex(0.0, 0.0));
    CHECK(m2(0, 1) == Complex(1.0, 0.0));
    CHECK(m2(1, 0) == Complex(-1.0, 0.0));
    CHECK(m2(1, 1) == Complex(0.0, 0.0));

    auto m3 = to_complex_2x2(Quaternion::e3());
    CHECK(m3(0, 1) == I);
    CHECK(m3(1, 0) == I);

    // identity matrix -> scalar 1
    Matrix2c id = Matrix2c::Identity();
    auto q = from_complex_2x2(id);
    CHECK(q.q0 == Complex(1.0, 0.0));
    CHECK(std::abs(q.q1) == 0.0);

    // diag(i, -i) -> e1
    Matrix2c d;
    d << I, 0.0, 0.0, -I;
    auto qe1 = from_complex_2x2(d);
    CHECK(std::abs(qe1.q0) < 1e-15);
    CHECK(std::abs(qe1.q1 - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(qe1.q2) < 1e-15);
    CHECK(std::abs(qe1.q3) < 1e-15);
}

TEST_CASE("round trip between quaternions and 2x2 matrices") {
    Rng rng(42);
    for (int it = 0; it < 100; ++it) {
        Matrix2c m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
        const Matrix2c back = to_complex_2x2(from_complex_2x2(m));
        CHECK((back - m).cwiseAbs().maxCoeff() < 1e-14);

        const Quaternion q = random_quaternion(rng);
        const Quaternion qb = from_complex_2x2(to_complex_2x2(q));
        CHECK((qb - q).norm1() < 1e-14);
    }
}

TEST_CASE("conj_dual is an involution and q qbar is scalar") {
    Rng rng(7);
    CHECK((conj_dual(Quaternion::one()) - Quaternion::one()).norm1() == 0.0);
    CHECK((conj_dual(Quaternion::e1()) + Quaternion::e1()).norm1() == 0.0);
    for (int it = 0; it < 100; ++it) {
        const Quaternion q = random_quaternion(rng);
        CHECK((conj_dual(conj_dual(q)) - q).norm1() < 1e-15);
        const Quaternion p = q * conj_dual(q);
        CHECK(std::abs(p.q1) < 1e-13);
        CHECK(std::abs(p.q2) < 1e-13);
        CHECK(std::abs(p.q3) < 1e-13);
    }
}

TEST_CASE("quaternion product matches matrix product") {
    Rng rng(3);
    for (int it = 0; it < 50; ++it) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        const Matrix2c mm = to_complex_2x2(a) * to_complex_2x2(b);
        CHECK((to_complex_2x2(a * b) - mm).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("qdet trivial cases") {
    QuaternionMatrix one(1);
    one(0, 0) = Quaternion::scalar(Complex(2.5, -0.5));
    CHECK(qdet(one) == Complex(2.5, -0.5));

    // diagonal scalar matrix: brute force over the two permutations gives a*b
    QuaternionMatrix diag(2);
    diag(0, 0) = Quaternion::scalar(3.0);
    diag(1, 1) = Quaternion::scalar(-2.0);
    CHECK(qdet(diag) == Complex(-6.0, 0.0));
}

TEST_CASE("qdet equals ordinary determinant for scalar matrices") {
    Rng rng(11);
    for (int n : {2, 3, 4, 5}) {
        QuaternionMatrix A(n);
        Eigen::MatrixXcd M(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                const Complex v(rng.gaussian(), rng.gaussian());
                M(i, j) = v;
                M(j, i) = v;
                A(i, j) = Quaternion::scalar(v);
                A(j, i) = Quaternion::scalar(v);
            }
        }
        const Complex expect = M.determinant();
        CHECK(std::abs(qdet(A) - expect) < 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("complexify assembles blocks") {
    QuaternionMatrix A(1);
    A(0, 0) = Quaternion::e2();
    auto M = complexify(A);
    CHECK(M(0, 1) == Complex(1.0, 0.0));
    CHECK(M(1, 0) == Complex(-1.0, 0.0));

    Rng rng(5);
    QuaternionMatrix B(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) B(i, j) = random_quaternion(rng);
    auto MB = complexify(B);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Matrix2c blk = to_complex_2x2(B(i, j));
            CHECK((MB.block<2, 2>(2 * i, 2 * j) - blk).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("qdet squared equals determinant of the complexification") {
    Rng rng(2024);
    for (int it = 0; it < 100; ++it) {
        const int n = 1 + static_cast<int>(rng.uniform_index(5));
        const QuaternionMatrix A = random_self_dual(n, rng);
        REQUIRE(A.is_self_dual());
        const Complex q = qdet(A);
        const Complex d = complexify(A).determinant();
        CHECK(std::abs(q.imag()) <= 1e-10 * (1.0 + std::abs(q)));
        CHECK(std::abs(q * q - d) <= 1e-8 * (1.0 + std::abs(d)));
    }
}

TEST_CASE("qdet invariant under simultaneous row and column permutation") {
    Rng rng(99);
    for (int it = 0; it < 20; ++it) {
        const int n = 2 + static_cast<int>(rng.uniform_index(4));
        const QuaternionMatrix A = random_self_dual(n, rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.uniform_index(static_cast<std::uint64_t>(i) + 1)]);
        const Complex a = qdet(A);
        const Complex b = qdet(A.permuted(perm));
        CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("qdet error paths") {
    QuaternionMatrix bad(2);
    bad(0, 0) = Quaternion::one();
    bad(1, 1) = Quaternion::one();
    bad(0, 1) = Quaternion::e1();
    bad(1, 0) = Quaternion::e1();  // should be -e1
    CHECK_THROWS_AS(qdet(bad), NotSelfDualError);

    QuaternionMatrix big(10);
    for (int i = 0; i < 10; ++i) big(i, i) = Quaternion::one();
    CHECK_THROWS_AS(qdet(big), DimensionTooLargeError);
}
