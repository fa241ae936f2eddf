#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qgeom/configuration.hpp"
#include "qgeom/states.hpp"

namespace qgeom {

/// q_{mu nu} = sum_{k != 0} <x|X_mu|k><k|X_nu|x> / (lambda_k - lambda_0)^2,
/// g = 2 Re q, omega = 2 Im q.
struct QuantumGeometricTensor {
    RVector point;
    CMatrix q;
    RMatrix g;
    RMatrix omega;
};

/// Throws DegenerateStateError at a degenerate point.
QuantumGeometricTensor qgt(const MatrixConfiguration& cfg, const RVector& x);

struct MetricDimension {
    RMatrix spectra;                    // row t: eigenvalues of g at points[t], descending
    std::vector<int> per_point;         // -1 for rows skipped as degenerate
    int dimension = 0;                  // modal per-point value (smallest on ties)
    double fraction = 0.0;              // share of evaluated points with per_point == dimension
    std::vector<std::size_t> degenerate_rows;
};

/// Per-point dimension of the metric spectrum e_0 >= e_1 >= ...: the number of
/// eigenvalues before the first ratio e_i / e_{i+1} above `gap_ratio_threshold`.
/// All-zero spectra give 0; spectra without such a gap give D.
int metric_rank(const RVector& descending, double gap_ratio_threshold);

MetricDimension metric_dimension(const MatrixConfiguration& cfg, const RMatrix& points,
                                 double gap_ratio_threshold = 5.0);

struct QuantumDistance {
    double distance = 0.0;  // sqrt(-ln |<s1|s2>|); +infinity for orthogonal states
    double phase = 0.0;     // arg <s1|s2> in (-pi, pi]
};

QuantumDistance quantum_distance(const QuasiCoherentState& s1, const QuasiCoherentState& s2);

/// 3-dimensional affine slice x = origin + frame * u of feature space.
struct AffineSlice {
    RVector origin;  // D
    RMatrix frame;   // D x 3, orthonormal columns
    RVector embed(const std::array<double, 3>& u) const;
};

/// First three feature axes through the origin. Requires D >= 3.
AffineSlice default_slice(Eigen::Index feature_dim);

/// Throws ValidationError unless the frame is D x 3 with orthonormal columns.
void validate_slice(const AffineSlice& slice, Eigen::Index feature_dim);

struct SearchBox3 {
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};
};

/// Bounding box of `data` expressed in slice coordinates, widened by `inflate`.
SearchBox3 slice_box(const AffineSlice& slice, const RMatrix& data, double inflate = 0.2);

struct DegeneracyPoint {
    std::array<double, 3> location{};  // slice coordinates
    RVector feature_location;          // embedded in R^D
    double gap = 0.0;
    std::optional<int> charge;
};

struct DegeneracySearchOptions {
    std::size_t n_starts = 64;
    std::uint64_t seed = 0;
    int seed_grid = 8;                    // per axis
    std::optional<double> accept_gap;     // default 1e-3 * feature_scale
    std::optional<double> dedupe_radius;  // default 1e-2 * feature_scale
    std::size_t max_iterations = 4000;
};

/// Multi-start simplex minimization of lambda_1 - lambda_0 over `box`.
/// Results are sorted lexicographically by location; deterministic per seed.
std::vector<DegeneracyPoint> find_degeneracy_points(const MatrixConfiguration& cfg,
                                                    const AffineSlice& slice,
                                                    const SearchBox3& box,
                                                    const DegeneracySearchOptions& options = {});

struct ChernGrid {
    int n_theta = 24;
    int n_phi = 24;
};

struct ChernResult {
    int charge = 0;
    double raw = 0.0;       // (1/2pi) sum of plaquette phases
    double residual = 0.0;  // |raw - charge|
    double min_gap = 0.0;   // smallest lambda_1 - lambda_0 on the grid
};

/// Lattice flux of the ground-state bundle through the sphere of `radius`
/// around `center` (slice coordinates). Plaquettes are traversed so that the
/// outward normal is positive. Throws DegenerateOnSphereError when a grid point
/// is degenerate and GridTooCoarseError when the residual exceeds 0.05.
ChernResult chern_number(const MatrixConfiguration& cfg, const AffineSlice& slice,
                         const std::array<double, 3>& center, double radius,
                         ChernGrid grid = {});

/// Charges of every point on a sphere of radius 0.4 times the distance to its
/// nearest neighbour, capped at `max_radius`. Failed evaluations leave the
/// charge unset.
void assign_charges(const MatrixConfiguration& cfg, const AffineSlice& slice,
                    std::vector<DegeneracyPoint>& points, double max_radius,
                    ChernGrid grid = {});

}  // namespace qgeom
