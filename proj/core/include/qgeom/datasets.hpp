#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgeom/linalg.hpp"

namespace qgeom {

struct Provenance {
    std::string generator;
    std::map<std::string, double> parameters;
    std::optional<std::uint64_t> seed;
};

/// T x D data. Generators may attach integer labels (one per row) and
/// auxiliary per-row parameters (the a-parameters of the conformal datasets).
struct Dataset {
    RMatrix rows;
    std::vector<std::string> feature_names;  // empty or D entries
    Provenance provenance;
    std::vector<int> labels;
    RMatrix aux;
};

/// Throws ValidationError on NaN/Inf entries, T == 0, or a feature-name count
/// that differs from D.
void validate(const Dataset& ds);

/// Uniform on the sphere surface (normalized Gaussian directions) plus
/// i.i.d. Gaussian noise per coordinate.
Dataset sphere_uniform(std::size_t n, double radius, const RVector& center, double noise_sigma,
                       std::uint64_t seed);

struct TwoSpheresParams {
    RVector center_a = RVector::Zero(3);
    RVector center_b = (RVector(3) << 0.0, 0.0, 3.0).finished();
    double radius_a = 1.5;
    double radius_b = 1.0;
    bool area_weighted = false;  // default: half of the points on each sphere
};

/// Labels: 0 for sphere a, 1 for sphere b. Rows are interleaved in draw order.
Dataset two_spheres(std::size_t n, const TwoSpheresParams& params, double noise_sigma,
                    std::uint64_t seed);

/// Unit sphere with density proportional to (1 + cos(theta))^2.
Dataset sphere_nonuniform(std::size_t n, double noise_sigma, std::uint64_t seed);

/// Images of n_ref fixed reference points of the unit disk under
/// f(z) = e^{i theta} (a - z) / (1 - conj(a) z), one row per map, columns
/// interleaved (x_1, y_1, x_2, ...). aux holds (Re a, Im a, theta) per row.
Dataset conformal_maps(std::size_t n_maps, std::size_t n_ref, double a_max, std::uint64_t seed,
                       bool random_theta = false);

/// Ball automorphism of C^n:
/// e^{i theta} sqrt(1 - |a|^2) (1 - a a^dagger)^{-1/2} (a - z) / (1 - <a|z>).
/// Throws ValidationError when |a| >= 1 or the dimensions differ.
CVector blaschke_potapov_factor(const CVector& a, const CVector& z, double theta = 0.0);

/// Reference points uniform in the unit ball of C^n. Columns run over
/// reference points, then complex coordinates, then (Re, Im). aux holds the
/// real and imaginary parts of a followed by theta. Requires 1 <= n <= 5.
Dataset blaschke_potapov(std::size_t n_maps, std::size_t n_ref, int ball_dim, double a_max,
                         std::uint64_t seed, bool random_theta = false);

struct ScaleResult {
    Dataset data;
    RVector mean;
    RVector stddev;  // population standard deviation
    std::vector<std::size_t> constant_columns;

    /// Maps scaled rows back to the original units.
    RMatrix inverse(const RMatrix& scaled) const;
};

/// Zero mean, unit variance per column. Constant columns become 0 and are
/// reported with a warning.
ScaleResult standard_scale(const Dataset& ds);

/// Rectangular numeric CSV. Throws ParseError on ragged rows, non-numeric
/// cells (with 1-based row and column) or an empty file.
Dataset load_csv(const std::filesystem::path& path, bool has_header = false);

}  // namespace qgeom
