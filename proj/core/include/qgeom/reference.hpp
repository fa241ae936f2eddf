#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qgeom/configuration.hpp"

namespace qgeom {

/// Spin j = two_j / 2, carried by an N = two_j + 1 dimensional irrep of su(2).
struct SpinLabel {
    int two_j = 1;

    explicit SpinLabel(int twice_j);
    static SpinLabel from_dim(Eigen::Index n) { return SpinLabel(static_cast<int>(n) - 1); }

    double j() const noexcept { return 0.5 * two_j; }
    Eigen::Index dim() const noexcept { return two_j + 1; }
};

/// J_1, J_2, J_3 in the basis |j, m>, m = j, j-1, ..., -j (J_3 diagonal, descending).
std::array<HermitianMatrix, 3> angular_momentum(SpinLabel spin);

/// X_a = alpha J_a.
MatrixConfiguration fuzzy_sphere(SpinLabel spin, double alpha);

/// Generalized Gell-Mann matrices, Tr(l_a l_b) = 2 delta_ab. Order: symmetric
/// pairs, antisymmetric pairs (both lexicographic in (row, col)), then diagonal.
std::vector<HermitianMatrix> gell_mann(Eigen::Index n);

/// Minimal fuzzy CP^{N-1}: X_a = l_a, a = 1..N^2-1.
MatrixConfiguration fuzzy_cpn(Eigen::Index n);

/// Clock U = diag(q^k) and shift V|k> = |k+1 mod N>, q = exp(2 pi i / N).
std::pair<CMatrix, CMatrix> clock_shift(Eigen::Index n);

/// X_1 + i X_2 = U, X_3 + i X_4 = V.
MatrixConfiguration fuzzy_torus(Eigen::Index n);

/// X_a = diag(points(0, a), ..., points(N-1, a)); one row per point.
MatrixConfiguration commuting_config(const RMatrix& points);

}  // namespace qgeom
