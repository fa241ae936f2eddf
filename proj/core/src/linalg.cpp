#include "qgeom/linalg.hpp"

#include <cmath>
#include <string>

#include "qgeom/errors.hpp"

namespace qgeom {

namespace {

void require_same_dims(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError(std::string(op) + ": dimension mismatch (" +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
    }
}

}  // namespace

bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Eigen::Index n = m.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j; i < n; ++i) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
        }
    }
    return true;
}

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw ValidationError("HermitianMatrix: expected a non-empty square matrix, got " +
                              std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
    if (!is_hermitian(m_)) {
        throw ValidationError("HermitianMatrix: matrix is not Hermitian within 1e-12");
    }
}

HermitianMatrix HermitianMatrix::hermitian_part(const CMatrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw ValidationError("hermitian_part: expected a non-empty square matrix");
    }
    CMatrix h = 0.5 * (m + m.adjoint());
    for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
    return HermitianMatrix(std::move(h), Unchecked{});
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
    return HermitianMatrix(CMatrix::Identity(n, n), Unchecked{});
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
    return HermitianMatrix(CMatrix::Zero(n, n), Unchecked{});
}

void fix_phase(Eigen::Ref<CVector> v) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        // strict comparison: ties resolve to the lowest index
        if (a > best_abs * (1.0 + 1e-12)) {
            best_abs = a;
            best = i;
        }
    }
    if (best_abs <= 0.0) return;
    const Complex phase = std::conj(v(best)) / best_abs;
    v *= phase;
    v(best) = Complex(v(best).real(), 0.0);
}

EigenDecomposition hermitian_eig_trusted(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericError("hermitian_eig: eigensolver did not converge");
    }
    EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
        fix_phase(out.eigenvectors.col(k));
    }
    return out;
}

EigenDecomposition hermitian_eig(const HermitianMatrix& h) {
    return hermitian_eig_trusted(h.matrix());
}

Complex frobenius_inner(const CMatrix& a, const CMatrix& b) {
    require_same_dims(a, b, "frobenius_inner");
    // Tr(a^dagger b) = sum_ij conj(a_ij) b_ij
    return a.conjugate().cwiseProduct(b).sum();
}

Complex frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
    return frobenius_inner(a.matrix(), b.matrix());
}

double frobenius_norm(const CMatrix& a) { return a.norm(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    require_same_dims(a, b, "commutator");
    return a * b - b * a;
}

CMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b) {
    return commutator(a.matrix(), b.matrix());
}

double reconstruction_residual(const CMatrix& h, const EigenDecomposition& eig) {
    const CMatrix& v = eig.eigenvectors;
    const CMatrix rebuilt = v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    return (h - rebuilt).norm() / std::max(1.0, h.norm());
}

}  // namespace qgeom
