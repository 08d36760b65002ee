#include "qhsusy/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace qhsusy::num {

namespace {

double one_norm(const ComplexMatrix& a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
    require_square(a, what);
    const double defect = hermiticity_defect(a);
    const double scale = fro_norm(a);
    if (defect > 1e-10 * scale) {
        throw NonHermitianError(std::string(what) + ": ||a - a^H||_F = " + std::to_string(defect) +
                                " exceeds 1e-10 ||a||_F");
    }
}

}  // namespace

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() < 1 || a.rows() != a.cols()) {
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

void require_finite(const ComplexMatrix& a, const char* what) {
    if (!a.allFinite()) {
        throw NonFiniteError(std::string(what) + ": matrix has non-finite entries");
    }
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

double fro_norm(const ComplexMatrix& a) { return a.norm(); }

double hermiticity_defect(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

HermitianEigen eig_hermitian_real(const ComplexMatrix& a) {
    require_hermitian(a, "eig_hermitian");
    // Symmetrize so the solver sees an exactly Hermitian input.
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig_hermitian: tridiagonal QR did not converge", -1);
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvals_hermitian(const ComplexMatrix& a) {
    require_hermitian(a, "eigvals_hermitian");
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigvals_hermitian: tridiagonal QR did not converge", -1);
    }
    return solver.eigenvalues();
}

EigenDecomposition eig_hermitian(const ComplexMatrix& a) {
    auto eig = eig_hermitian_real(a);
    return {eig.eigenvalues.cast<Complex>(), std::move(eig.eigenvectors)};
}

EigenDecomposition eig_general(const ComplexMatrix& a) {
    require_square(a, "eig_general");
    require_finite(a, "eig_general");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver;
    solver.compute(a, true);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig_general: complex Schur iteration did not converge",
                               static_cast<long>(solver.getMaxIterations()));
    }
    const ComplexVector& values = solver.eigenvalues();
    const ComplexMatrix& vectors = solver.eigenvectors();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        if (values(i).real() != values(j).real()) {
            return values(i).real() < values(j).real();
        }
        return values(i).imag() < values(j).imag();
    });

    EigenDecomposition out{ComplexVector(values.size()), ComplexMatrix(a.rows(), a.cols())};
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto col = static_cast<Eigen::Index>(k);
        out.eigenvalues(col) = values(order[k]);
        out.eigenvectors.col(col) = vectors.col(order[k]);
    }
    return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& a) {
    const auto eig = eig_hermitian_real(a);
    ComplexMatrix out = hermitian_function(eig, [](double x) { return std::exp(x); });
    require_finite(out, "expm_hermitian");
    return out;
}

ComplexMatrix expm_general(const ComplexMatrix& a, double norm_bound) {
    require_square(a, "expm_general");
    require_finite(a, "expm_general");
    const double norm = one_norm(a);
    if (norm > norm_bound) {
        throw OverflowError("expm_general: ||a||_1 = " + std::to_string(norm) +
                            " exceeds the configured bound " + std::to_string(norm_bound));
    }

    // Diagonal input: the exponential is elementwise and exact.
    const auto n = a.rows();
    if (a.isDiagonal(0.0)) {
        ComplexMatrix d = ComplexMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) d(i, i) = std::exp(a(i, i));
        return d;
    }

    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    const ComplexMatrix b = a * std::ldexp(1.0, -squarings);

    // Smallest degree m with ||b||^(m+1)/(m+1)! / (1 - ||b||/(m+2)) < 1e-16.
    int degree = 1;
    double term = scaled * scaled / 2.0;
    while (term / (1.0 - scaled / (degree + 2)) >= 1e-16) {
        ++degree;
        term *= scaled / (degree + 1);
    }

    const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
    ComplexMatrix result = identity;
    for (int k = degree; k >= 1; --k) {
        result = identity + (b * result) / static_cast<double>(k);
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    require_finite(result, "expm_general");
    return result;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    require_square(a, "inverse");
    require_finite(a, "inverse");
    const auto n = a.rows();
    const double threshold = 1e-13 * fro_norm(a);

    ComplexMatrix work = a;
    ComplexMatrix inv = ComplexMatrix::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        double best = std::abs(work(col, col));
        for (Eigen::Index r = col + 1; r < n; ++r) {
            const double mag = std::abs(work(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best <= threshold) {
            throw SingularMatrixError(static_cast<std::size_t>(col), best);
        }
        if (pivot != col) {
            work.row(pivot).swap(work.row(col));
            inv.row(pivot).swap(inv.row(col));
        }
        const Complex scale = 1.0 / work(col, col);
        work.row(col) *= scale;
        inv.row(col) *= scale;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex factor = work(r, col);
            if (factor == Complex(0.0)) continue;
            work.row(r) -= factor * work.row(col);
            inv.row(r) -= factor * inv.row(col);
        }
    }
    return inv;
}

}  // namespace qhsusy::num
