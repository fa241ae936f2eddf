#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qgeom/configuration.hpp"
#include "qgeom/states.hpp"

namespace qgeom {

/// Spectrum and Hermitian eigenmaps of the matrix Laplacian.
///
/// eigenmaps[0] is always 1/sqrt(N) with eigenvalue 0; the remaining eigenmaps
/// are orthonormal under Tr(Y_i Y_j) and sorted by ascending eigenvalue.
struct LaplacianAnalysis {
    Eigen::Index dim = 0;
    RVector eigenvalues;
    std::vector<HermitianMatrix> eigenmaps;
};

struct ComponentDecomposition {
    std::vector<HermitianMatrix> projectors;
    double residual = 0.0;  // ||sum_j P_j - 1||_2
};

/// Window of indices into the non-zero eigenvalues, half open [lo, hi).
struct WeylWindow {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

struct WeylFit {
    double dimension = 0.0;  // 2 * slope
    double slope = 0.0;
    double intercept = 0.0;
    WeylWindow window;
    std::size_t zero_modes = 0;
};

enum class ConfigurationClass { classical, almost_commutative, deep_quantum };

std::string_view to_string(ConfigurationClass c);

struct Classification {
    ConfigurationClass tag = ConfigurationClass::classical;
    double ratio = 0.0;  // max_{a<b} ||[X_a, X_b]||_2 / ||X_a X_b||_2
};

/// Superoperator sum_a [X_a, [X_a, .]] as an N^2 x N^2 matrix acting on
/// column-major vectorized matrices: vec(Y)_(i + N j) = Y_ij.
CMatrix matrix_laplacian(const MatrixConfiguration& cfg);

/// sum_a [X_a, [X_a, y]] evaluated directly.
CMatrix apply_laplacian(const MatrixConfiguration& cfg, const CMatrix& y);

/// Orthonormal Hermitian basis of Mat(N): 1/sqrt(N) followed by l_a / sqrt(2).
std::vector<HermitianMatrix> hermitian_basis(Eigen::Index n);

LaplacianAnalysis laplacian_spectrum(const MatrixConfiguration& cfg);

/// 1e-3 times the median eigenvalue.
double default_zero_tolerance(const LaplacianAnalysis& analysis);

std::size_t count_zero_modes(const LaplacianAnalysis& analysis, double tol_zero);

/// Projectors onto the irreducible blocks, recovered from the eigenspace of
/// eigenvalues <= tol_zero by diagonalizing a random real combination of its
/// eigenmaps. Throws NonProjectorError when a recovered element is not
/// idempotent within 1e-4.
ComponentDecomposition zero_mode_components(const LaplacianAnalysis& analysis, double tol_zero);

/// Default fit window over the non-zero eigenvalues: [N, floor(0.75 N^2)).
WeylWindow default_weyl_window(const LaplacianAnalysis& analysis);

/// Least-squares slope of log N(lambda) against log lambda over `window`,
/// after removing eigenvalues <= tol_zero. Throws FitError with fewer than 10
/// eigenvalues in the window or no spread in lambda.
WeylFit weyl_dimension(const LaplacianAnalysis& analysis,
                       std::optional<WeylWindow> window = std::nullopt,
                       std::optional<double> tol_zero = std::nullopt);

/// b(a, i) = Tr(Y_i X_a); rows are features, columns eigenmaps.
RMatrix eigenmap_overlap(const LaplacianAnalysis& analysis, const MatrixConfiguration& cfg);

/// Orthogonal projection of every X_a onto span(Y_0 .. Y_{n-1}).
MatrixConfiguration project_observables(const MatrixConfiguration& cfg,
                                        const LaplacianAnalysis& analysis, std::size_t n);

/// Laplacian of the reduced configuration {Y_1, ..., Y_n}.
CMatrix reduced_laplacian(const LaplacianAnalysis& analysis, std::size_t n);

/// E[Y] = sum_a Tr([X_a, Y]^dagger [X_a, Y]).
double laplacian_energy(const MatrixConfiguration& cfg, const HermitianMatrix& y);

/// Requires D >= 2. classical: r <= 1e-6; deep quantum: r >= 1.
Classification classify_configuration(const MatrixConfiguration& cfg);

/// -Tr(y^2 ln y^2) for ||y||_2 = 1.
double observable_entropy(const HermitianMatrix& y);

/// Tr(rho Y rho Y) with rho the mean of |x_i><x_i| over `states`.
double nonlocal_correlation(const std::vector<QuasiCoherentState>& states,
                            const HermitianMatrix& y);

}  // namespace qgeom
