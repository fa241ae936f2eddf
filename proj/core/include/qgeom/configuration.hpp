#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qgeom/linalg.hpp"

namespace qgeom {

/// D Hermitian N x N observables {X_a}. Immutable once built.
class MatrixConfiguration {
public:
    /// Throws ValidationError when `observables` is empty or dims differ.
    explicit MatrixConfiguration(std::vector<HermitianMatrix> observables);

    Eigen::Index hilbert_dim() const noexcept { return n_; }
    Eigen::Index feature_dim() const noexcept { return static_cast<Eigen::Index>(obs_.size()); }

    const std::vector<HermitianMatrix>& observables() const noexcept { return obs_; }
    const HermitianMatrix& operator[](std::size_t a) const { return obs_.at(a); }

    /// 1/2 sum_a X_a^2, the x-independent part of the displacement Hamiltonian.
    const CMatrix& half_square_sum() const noexcept { return half_sq_; }

    /// N^2 x D matrix; column a is the column-major vectorization of X_a.
    const CMatrix& stacked() const noexcept { return stacked_; }

    /// sum_a c_a X_a.
    CMatrix combination(const RVector& c) const;

private:
    Eigen::Index n_ = 0;
    std::vector<HermitianMatrix> obs_;
    CMatrix half_sq_;
    CMatrix stacked_;
};

/// Wraps plain complex matrices, keeping only their Hermitian parts.
MatrixConfiguration make_configuration(std::span<const CMatrix> matrices);

/// Direct sum: X_a = diag(X_a^(1), X_a^(2), ...). All parts need the same D.
MatrixConfiguration direct_sum(std::span<const MatrixConfiguration> parts);

/// X_a + shift_a * 1.
MatrixConfiguration translate(const MatrixConfiguration& cfg, const RVector& shift);

/// Root-mean-square spread sqrt(sum_a ||X_a - tr(X_a)/N||_2^2 / N); the
/// characteristic length of the geometry in feature units.
double feature_scale(const MatrixConfiguration& cfg);

}  // namespace qgeom
