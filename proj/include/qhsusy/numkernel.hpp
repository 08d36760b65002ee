#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qhsusy/errors.hpp"

namespace qhsusy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct EigenDecomposition {
    ComplexVector eigenvalues;
    ComplexMatrix eigenvectors;  // columns
};

/// Hermitian eigendecomposition with real eigenvalues.
struct HermitianEigen {
    RealVector eigenvalues;  // ascending
    ComplexMatrix eigenvectors;
};

namespace num {

/// Upper bound on the 1-norm accepted by expm_general before the result would overflow.
inline constexpr double kDefaultExpmNormBound = 700.0;

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

double fro_norm(const ComplexMatrix& a);

/// ||a - a^H||_F, the quantity tested by every Hermitian precondition.
double hermiticity_defect(const ComplexMatrix& a);

void require_finite(const ComplexMatrix& a, const char* what);
void require_square(const ComplexMatrix& a, const char* what);

/// Real ascending eigenvalues and orthonormal eigenvectors.
/// Throws NonHermitianError unless ||a - a^H||_F <= 1e-10 ||a||_F.
HermitianEigen eig_hermitian_real(const ComplexMatrix& a);
EigenDecomposition eig_hermitian(const ComplexMatrix& a);

/// Ascending eigenvalues only (same precondition as eig_hermitian_real).
RealVector eigvals_hermitian(const ComplexMatrix& a);

/// Eigenvalues ordered by ascending real part, ties by imaginary part.
EigenDecomposition eig_general(const ComplexMatrix& a);

/// V exp(L) V^H from the Hermitian eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& a);

/// Scaling and squaring with a Taylor polynomial whose tail bound is below 1e-16.
ComplexMatrix expm_general(const ComplexMatrix& a, double norm_bound = kDefaultExpmNormBound);

/// Gauss-Jordan with partial pivoting; SingularMatrixError when a pivot falls below
/// 1e-13 ||a||_F.
ComplexMatrix inverse(const ComplexMatrix& a);

/// f(a) = V f(L) V^H for Hermitian a; f is applied to each real eigenvalue.
template <typename F>
ComplexMatrix hermitian_function(const HermitianEigen& eig, F&& f) {
    const auto n = eig.eigenvalues.size();
    ComplexVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i) = Complex(f(eig.eigenvalues(i)));
    }
    return eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace num
}  // namespace qhsusy
