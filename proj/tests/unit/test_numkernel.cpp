#include <doctest.h>

#include <cmath>
#include <random>

#include "qhsusy/numkernel.hpp"

using namespace qhsusy;

namespace {

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(d(gen), d(gen));
    }
    return m;
}

ComplexMatrix random_hermitian(Eigen::Index n, unsigned seed) {
    const auto m = random_matrix(n, n, seed);
    return (m + m.adjoint()) / 2.0;
}

ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c = ComplexMatrix::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    }
    return c;
}

// Single-mode raising operator a^dag^2 / 2 on `cutoff` levels.
ComplexMatrix kplus(std::size_t cutoff) {
    ComplexMatrix m = ComplexMatrix::Zero(cutoff, cutoff);
    for (std::size_t n = 0; n + 2 < cutoff; ++n) {
        m(n + 2, n) = std::sqrt(static_cast<double>((n + 1) * (n + 2))) / 2.0;
    }
    return m;
}

}  // namespace

TEST_CASE("matmul agrees with a triple loop and rejects mismatched shapes") {
    const auto a = random_matrix(7, 5, 1);
    const auto b = random_matrix(5, 6, 2);
    CHECK((num::matmul(a, b) - naive_matmul(a, b)).norm() < 1e-13);
    CHECK_THROWS_AS(num::matmul(a, a), DimensionError);
}

TEST_CASE("adjoint reverses products") {
    const auto a = random_matrix(4, 4, 3);
    const auto b = random_matrix(4, 4, 4);
    const auto lhs = num::adjoint(num::matmul(a, b));
    const auto rhs = num::matmul(num::adjoint(b), num::adjoint(a));
    CHECK((lhs - rhs).norm() < 1e-13);
}

TEST_CASE("fro_norm on small oracles") {
    CHECK(num::fro_norm(ComplexMatrix::Identity(2, 2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(num::fro_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
    ComplexMatrix m(2, 2);
    m << 3.0, Complex(0.0, 4.0), 0.0, 0.0;
    CHECK(num::fro_norm(m) == doctest::Approx(5.0));
}

TEST_CASE("require_finite and require_square") {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = std::nan("");
    CHECK_THROWS_AS(num::require_finite(m, "t"), NonFiniteError);
    CHECK_THROWS_AS(num::require_square(ComplexMatrix::Zero(2, 3), "t"), DimensionError);
}

TEST_CASE("Hermitian eigensolver reconstructs random matrices") {
    const auto a = random_hermitian(40, 7);
    const auto eig = num::eig_hermitian_real(a);
    for (Eigen::Index i = 1; i < eig.eigenvalues.size(); ++i) CHECK(eig.eigenvalues(i) >= eig.eigenvalues(i - 1));
    const ComplexMatrix rebuilt =
        eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
    CHECK((rebuilt - a).norm() <= 1e-10 * a.norm());
    const auto vals = num::eigvals_hermitian(a);
    CHECK((vals - eig.eigenvalues).norm() < 1e-12);
    const auto cplx = num::eig_hermitian(a);
    CHECK(cplx.eigenvalues.imag().norm() == 0.0);
}

TEST_CASE("Hermitian eigensolver rejects non-Hermitian input") {
    ComplexMatrix a(2, 2);
    a << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(num::eig_hermitian_real(a), NonHermitianError);
    CHECK_THROWS_AS(num::eigvals_hermitian(a), NonHermitianError);
}

TEST_CASE("general eigensolver orders by real then imaginary part") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = Complex(1.0, 2.0);
    a(2, 2) = Complex(1.0, -1.0);
    a(0, 2) = 5.0;  // upper triangular: eigenvalues are the diagonal
    const auto eig = num::eig_general(a);
    CHECK(std::abs(eig.eigenvalues(0) - Complex(1.0, -1.0)) < 1e-12);
    CHECK(std::abs(eig.eigenvalues(1) - Complex(1.0, 2.0)) < 1e-12);
    CHECK(std::abs(eig.eigenvalues(2) - Complex(3.0, 0.0)) < 1e-12);
    for (Eigen::Index k = 0; k < 3; ++k) {
        const ComplexVector v = eig.eigenvectors.col(k);
        CHECK((a * v - eig.eigenvalues(k) * v).norm() < 1e-10 * v.norm());
    }
}

TEST_CASE("expm_hermitian oracles") {
    CHECK((num::expm_hermitian(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() < 1e-15);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = std::log(2.0);
    d(1, 1) = std::log(3.0);
    const auto e = num::expm_hermitian(d);
    CHECK(std::abs(e(0, 0) - 2.0) < 1e-14);
    CHECK(std::abs(e(1, 1) - 3.0) < 1e-14);
    const ComplexMatrix h = random_hermitian(20, 11);
    const ComplexMatrix a = h * (3.0 / num::eigvals_hermitian(h).cwiseAbs().maxCoeff());
    const ComplexMatrix prod = num::expm_hermitian(a) * num::expm_hermitian(-a);
    CHECK((prod - ComplexMatrix::Identity(20, 20)).norm() < 1e-10);
    CHECK(num::eigvals_hermitian(num::expm_hermitian(a)).minCoeff() > 0.0);
}

TEST_CASE("expm_general oracles") {
    SUBCASE("nilpotent") {
        ComplexMatrix n = ComplexMatrix::Zero(3, 3);
        n(0, 2) = Complex(2.0, -1.0);
        ComplexMatrix expected = ComplexMatrix::Identity(3, 3) + n;
        CHECK((num::expm_general(n) - expected).norm() < 1e-15);
    }
    SUBCASE("diagonal") {
        ComplexMatrix d = ComplexMatrix::Zero(2, 2);
        d(0, 0) = 1.0;
        d(1, 1) = Complex(2.0, M_PI);
        const auto e = num::expm_general(d);
        CHECK(std::abs(e(0, 0) - std::exp(1.0)) < 1e-14);
        CHECK(std::abs(e(1, 1) + std::exp(2.0)) < 1e-13);
    }
    SUBCASE("rotation generator") {
        const double t = 0.7;
        ComplexMatrix g(2, 2);
        g << 0.0, -t, t, 0.0;
        const auto e = num::expm_general(g);
        CHECK(std::abs(e(0, 0) - std::cos(t)) < 1e-15);
        CHECK(std::abs(e(0, 1) + std::sin(t)) < 1e-15);
        CHECK(std::abs(e(1, 0) - std::sin(t)) < 1e-15);
    }
    SUBCASE("agrees with the Hermitian route") {
        const ComplexMatrix a = random_hermitian(25, 13) * 2.0;
        const auto e1 = num::expm_general(a);
        const auto e2 = num::expm_hermitian(a);
        CHECK((e1 - e2).norm() <= 1e-10 * e2.norm());
    }
    SUBCASE("exp(p K+) matches the terminating series") {
        // (a^dag^2/2)^k |n> has the closed form sqrt((n+2k)!/n!) / 2^k |n+2k>.
        const std::size_t cutoff = 20;
        const double p = 0.3;
        const auto e = num::expm_general(p * kplus(cutoff));
        double worst = 0.0;
        for (std::size_t n = 0; n < cutoff; ++n) {
            for (std::size_t k = 0; n + 2 * k < cutoff; ++k) {
                double ratio = 1.0;
                for (std::size_t j = n + 1; j <= n + 2 * k; ++j) ratio *= static_cast<double>(j);
                double fact_k = 1.0;
                for (std::size_t j = 2; j <= k; ++j) fact_k *= static_cast<double>(j);
                const double expected = std::pow(p / 2.0, static_cast<double>(k)) * std::sqrt(ratio) / fact_k;
                worst = std::max(worst, std::abs(e(n + 2 * k, n) - expected) / std::max(1.0, expected));
            }
        }
        CHECK(worst < 1e-13);
    }
    SUBCASE("overflow guard") {
        ComplexMatrix big = ComplexMatrix::Zero(2, 2);
        big(0, 1) = 1000.0;
        big(1, 0) = 1.0;
        CHECK_THROWS_AS(num::expm_general(big), OverflowError);
    }
}

TEST_CASE("inverse") {
    CHECK((num::inverse(ComplexMatrix::Identity(4, 4)) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = Complex(0.0, 4.0);
    const auto di = num::inverse(d);
    CHECK(std::abs(di(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(di(1, 1) - Complex(0.0, -0.25)) < 1e-15);

    const ComplexMatrix a = random_matrix(30, 30, 17) + 10.0 * ComplexMatrix::Identity(30, 30);
    CHECK((a * num::inverse(a) - ComplexMatrix::Identity(30, 30)).norm() < 1e-12);

    ComplexMatrix s(2, 2);
    s << 1.0, 2.0, 2.0, 4.0;
    try {
        (void)num::inverse(s);
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(e.pivot_index == 1);
    }
}

TEST_CASE("hermitian_function applies f to eigenvalues") {
    const auto a = random_hermitian(10, 19);
    const auto eig = num::eig_hermitian_real(a);
    const auto sq = num::hermitian_function(eig, [](double x) { return x * x; });
    CHECK((sq - a * a).norm() < 1e-11);
}
