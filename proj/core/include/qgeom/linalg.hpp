#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qgeom {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;

/// Square complex matrix equal to its conjugate transpose (entrywise, 1e-12 absolute).
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    /// Throws ValidationError if `m` is empty, not square, or not Hermitian.
    explicit HermitianMatrix(CMatrix m);

    /// Keeps only the Hermitian part (m + m^dagger) / 2. For computed matrices
    /// that are Hermitian up to rounding.
    static HermitianMatrix hermitian_part(const CMatrix& m);

    static HermitianMatrix identity(Eigen::Index n);
    static HermitianMatrix zero(Eigen::Index n);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const CMatrix& matrix() const noexcept { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
        return a.m_ == b.m_;
    }

private:
    struct Unchecked {};
    HermitianMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}

    CMatrix m_;
};

struct EigenDecomposition {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

bool is_hermitian(const CMatrix& m, double tol = kHermitianTolerance);

/// Full eigendecomposition. Each eigenvector is rephased so that its
/// largest-magnitude component is real and positive.
EigenDecomposition hermitian_eig(const HermitianMatrix& h);

/// Same as hermitian_eig but reads only the lower triangle and skips validation.
EigenDecomposition hermitian_eig_trusted(const CMatrix& h);

/// Applies the gauge convention used by hermitian_eig to a single vector.
void fix_phase(Eigen::Ref<CVector> v);

/// Tr(a^dagger b).
Complex frobenius_inner(const CMatrix& a, const CMatrix& b);
Complex frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b);

double frobenius_norm(const CMatrix& a);

/// ab - ba.
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b);

/// Spectral reconstruction residual ||H - V diag(w) V^dagger||_2 / max(1, ||H||_2).
double reconstruction_residual(const CMatrix& h, const EigenDecomposition& eig);

}  // namespace qgeom
