#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgeom/configuration.hpp"
#include "qgeom/linalg.hpp"

namespace qgeom {

/// Full spectrum of H(x) at one feature-space point.
struct DisplacementSpectrum {
    RVector point;
    RVector eigenvalues;   // ascending, lambda_0 >= 0 up to rounding
    CMatrix eigenvectors;  // columns, gauge fixed as in hermitian_eig
    double gap = 0.0;      // lambda_1 - lambda_0 (infinity when N == 1)
    bool degenerate = false;
};

/// Normalized ground state |x> of H(x) and its energy lambda(x).
struct QuasiCoherentState {
    CVector vector;
    double energy = 0.0;
    RVector point;
};

struct CloudPoint {
    RVector source;  // x
    RVector image;   // <x|X_a|x>
    double displacement_sq = 0.0;
    double variance = 0.0;
    double energy = 0.0;
};

/// A cloud together with the rows that could not be mapped.
struct Cloud {
    std::vector<CloudPoint> points;
    std::vector<std::size_t> rows;             // source row of points[i]
    std::vector<std::size_t> degenerate_rows;  // rows skipped for a degenerate ground state
};

/// Axis-aligned box in feature space.
struct Box {
    RVector lo;
    RVector hi;
};

/// Gap threshold below which the ground state counts as degenerate:
/// 1e-8 * max(1, lambda_max).
double degeneracy_threshold(const RVector& ascending_eigenvalues);

/// H(x) = 1/2 sum_a (X_a - x_a)^2.
HermitianMatrix displacement_hamiltonian(const MatrixConfiguration& cfg, const RVector& x);

DisplacementSpectrum displacement_spectrum(const MatrixConfiguration& cfg, const RVector& x);

/// Ground eigenpair of H(x). Degeneracy is not an error here; inspect
/// displacement_spectrum(...).degenerate when it matters.
QuasiCoherentState quasi_coherent_state(const MatrixConfiguration& cfg, const RVector& x);
QuasiCoherentState quasi_coherent_state(const DisplacementSpectrum& spectrum);

/// <psi|X_a|psi> for every observable.
RVector expectations(const MatrixConfiguration& cfg, const CVector& psi);

/// Throws DegenerateStateError when the ground state at x is degenerate.
CloudPoint cloud_point(const MatrixConfiguration& cfg, const RVector& x);

/// cloud_point for every row of `dataset` (T x D). Degenerate rows are
/// recorded in Cloud::degenerate_rows, not dropped silently.
Cloud qcml_cloud(const MatrixConfiguration& cfg, const RMatrix& dataset);

/// Bounding box of the rows of `data`, each side widened by `inflate` times its width.
Box bounding_box(const RMatrix& data, double inflate = 0.2);

/// Uniform samples from `region` mapped through cloud_point; deterministic per seed.
Cloud qg_point_cloud(const MatrixConfiguration& cfg, const Box& region, std::size_t n_samples,
                     std::uint64_t seed);

/// ||1||_2^2 = N. Semiclassically this counts the quantum cells covering the
/// sampled region, one per cell; the exact value is the Hilbert-space dimension.
double hilbert_dim_estimate(const MatrixConfiguration& cfg, const Box& region,
                            std::size_t n_samples);

}  // namespace qgeom
