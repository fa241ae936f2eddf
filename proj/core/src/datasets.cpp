#include "qgeom/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string_view>

#include <spdlog/spdlog.h>

#include "qgeom/errors.hpp"

namespace qgeom {

namespace {

using Rng = std::mt19937_64;

/// Uniform direction on S^{dim-1}.
RVector random_direction(Rng& rng, Eigen::Index dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RVector v(dim);
    do {
        for (Eigen::Index k = 0; k < dim; ++k) v(k) = normal(rng);
    } while (v.norm() < 1e-12);
    return v / v.norm();
}

/// Uniform point in the real ball of radius r in R^dim.
RVector random_in_ball(Rng& rng, Eigen::Index dim, double r) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const RVector dir = random_direction(rng, dim);
    return r * std::pow(uni(rng), 1.0 / static_cast<double>(dim)) * dir;
}

void add_noise(RMatrix& rows, double sigma, Rng& rng) {
    if (sigma == 0.0) return;
    std::normal_distribution<double> normal(0.0, sigma);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) += normal(rng);
    }
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

void validate(const Dataset& ds) {
    require(ds.rows.rows() >= 1 && ds.rows.cols() >= 1, "dataset: empty");
    require(ds.rows.allFinite(), "dataset: contains NaN or Inf");
    require(ds.feature_names.empty() ||
                ds.feature_names.size() == static_cast<std::size_t>(ds.rows.cols()),
            "dataset: feature_names must have D entries");
}

Dataset sphere_uniform(std::size_t n, double radius, const RVector& center, double noise_sigma,
                       std::uint64_t seed) {
    require(n >= 1, "sphere_uniform: n must be >= 1");
    require(radius > 0.0, "sphere_uniform: radius must be positive");
    require(center.size() == 3, "sphere_uniform: center must have 3 coordinates");
    require(noise_sigma >= 0.0, "sphere_uniform: noise must be non-negative");
    Rng rng(seed);
    Dataset ds;
    ds.rows.resize(static_cast<Eigen::Index>(n), 3);
    for (Eigen::Index i = 0; i < ds.rows.rows(); ++i) {
        ds.rows.row(i) = (center + radius * random_direction(rng, 3)).transpose();
    }
    add_noise(ds.rows, noise_sigma, rng);
    ds.provenance = {"sphere-uniform",
                     {{"n", double(n)}, {"radius", radius}, {"noise", noise_sigma}},
                     seed};
    return ds;
}

Dataset two_spheres(std::size_t n, const TwoSpheresParams& p, double noise_sigma,
                    std::uint64_t seed) {
    require(n >= 2, "two_spheres: n must be >= 2");
    require(p.radius_a > 0.0 && p.radius_b > 0.0, "two_spheres: radii must be positive");
    require(p.center_a.size() == 3 && p.center_b.size() == 3, "two_spheres: centers must be 3-vectors");
    require(noise_sigma >= 0.0, "two_spheres: noise must be non-negative");
    std::size_t n_a = n / 2;
    if (p.area_weighted) {
        const double ra2 = p.radius_a * p.radius_a;
        const double rb2 = p.radius_b * p.radius_b;
        n_a = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ra2 / (ra2 + rb2)));
        n_a = std::clamp<std::size_t>(n_a, 1, n - 1);
    }
    Rng rng(seed);
    Dataset ds;
    ds.rows.resize(static_cast<Eigen::Index>(n), 3);
    ds.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool first = i < n_a;
        const RVector dir = random_direction(rng, 3);
        const RVector x = first ? RVector(p.center_a + p.radius_a * dir) : RVector(p.center_b + p.radius_b * dir);
        ds.rows.row(static_cast<Eigen::Index>(i)) = x.transpose();
        ds.labels[i] = first ? 0 : 1;
    }
    add_noise(ds.rows, noise_sigma, rng);
    ds.provenance = {"two-spheres",
                     {{"n", double(n)},
                      {"radius_a", p.radius_a},
                      {"radius_b", p.radius_b},
                      {"center_b_z", p.center_b(2)},
                      {"area_weighted", p.area_weighted ? 1.0 : 0.0},
                      {"noise", noise_sigma}},
                     seed};
    return ds;
}

Dataset sphere_nonuniform(std::size_t n, double noise_sigma, std::uint64_t seed) {
    require(n >= 1, "sphere_nonuniform: n must be >= 1");
    require(noise_sigma >= 0.0, "sphere_nonuniform: noise must be non-negative");
    Rng rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Dataset ds;
    ds.rows.resize(static_cast<Eigen::Index>(n), 3);
    for (Eigen::Index i = 0; i < ds.rows.rows(); ++i) {
        // u = cos(theta) is uniform under the area measure; accept with (1 + u)^2 / 4
        double u = 0.0;
        do {
            u = 2.0 * uni(rng) - 1.0;
        } while (uni(rng) * 4.0 > (1.0 + u) * (1.0 + u));
        const double phi = 2.0 * std::numbers::pi * uni(rng);
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        ds.rows.row(i) << s * std::cos(phi), s * std::sin(phi), u;
    }
    add_noise(ds.rows, noise_sigma, rng);
    ds.provenance = {"sphere-nonuniform", {{"n", double(n)}, {"noise", noise_sigma}}, seed};
    return ds;
}

Dataset conformal_maps(std::size_t n_maps, std::size_t n_ref, double a_max, std::uint64_t seed,
                       bool random_theta) {
    require(n_maps >= 1 && n_ref >= 1, "conformal_maps: n_maps and n_ref must be >= 1");
    require(a_max >= 0.0 && a_max < 1.0, "conformal_maps: a_max must lie in [0, 1)");
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<Complex> ref(n_ref);
    for (auto& z : ref) {
        const RVector p = random_in_ball(rng, 2, 1.0);
        z = {p(0), p(1)};
    }
    Dataset ds;
    ds.rows.resize(static_cast<Eigen::Index>(n_maps), static_cast<Eigen::Index>(2 * n_ref));
    ds.aux.resize(static_cast<Eigen::Index>(n_maps), 3);
    for (Eigen::Index t = 0; t < ds.rows.rows(); ++t) {
        const RVector p = random_in_ball(rng, 2, a_max);
        const Complex a(p(0), p(1));
        const double theta = random_theta ? angle(rng) : 0.0;
        const Complex rot = std::polar(1.0, theta);
        for (std::size_t i = 0; i < n_ref; ++i) {
            const Complex f = rot * (a - ref[i]) / (1.0 - std::conj(a) * ref[i]);
            ds.rows(t, static_cast<Eigen::Index>(2 * i)) = f.real();
            ds.rows(t, static_cast<Eigen::Index>(2 * i + 1)) = f.imag();
        }
        ds.aux.row(t) << a.real(), a.imag(), theta;
    }
    ds.provenance = {"conformal-maps",
                     {{"n_maps", double(n_maps)},
                      {"n_ref", double(n_ref)},
                      {"a_max", a_max},
                      {"random_theta", random_theta ? 1.0 : 0.0}},
                     seed};
    return ds;
}

CVector blaschke_potapov_factor(const CVector& a, const CVector& z, double theta) {
    require(a.size() == z.size() && a.size() >= 1, "blaschke_potapov_factor: dimension mismatch");
    const double a2 = a.squaredNorm();
    require(a2 < 1.0, "blaschke_potapov_factor: |a| must be < 1");
    const Eigen::Index n = a.size();
    const CMatrix m = CMatrix::Identity(n, n) - a * a.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    const CMatrix inv_sqrt = solver.eigenvectors() *
                             solver.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                             solver.eigenvectors().adjoint();
    const Complex denom = 1.0 - a.dot(z);  // <a|z> conjugates a
    return std::polar(std::sqrt(1.0 - a2), theta) * (inv_sqrt * (a - z)) / denom;
}

Dataset blaschke_potapov(std::size_t n_maps, std::size_t n_ref, int ball_dim, double a_max,
                         std::uint64_t seed, bool random_theta) {
    require(n_maps >= 1 && n_ref >= 1, "blaschke_potapov: n_maps and n_ref must be >= 1");
    require(ball_dim >= 1 && ball_dim <= 5, "blaschke_potapov: ball_dim must lie in [1, 5]");
    require(a_max >= 0.0 && a_max < 1.0, "blaschke_potapov: a_max must lie in [0, 1)");
    const Eigen::Index n = ball_dim;
    const auto to_complex = [n](const RVector& p) {
        CVector z(n);
        for (Eigen::Index k = 0; k < n; ++k) z(k) = {p(2 * k), p(2 * k + 1)};
        return z;
    };
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<CVector> ref;
    for (std::size_t i = 0; i < n_ref; ++i) ref.push_back(to_complex(random_in_ball(rng, 2 * n, 1.0)));
    Dataset ds;
    const auto cols = static_cast<Eigen::Index>(2 * n_ref) * n;
    ds.rows.resize(static_cast<Eigen::Index>(n_maps), cols);
    ds.aux.resize(static_cast<Eigen::Index>(n_maps), 2 * n + 1);
    for (Eigen::Index t = 0; t < ds.rows.rows(); ++t) {
        const RVector pa = random_in_ball(rng, 2 * n, a_max);
        const CVector a = to_complex(pa);
        const double theta = random_theta ? angle(rng) : 0.0;
        for (std::size_t i = 0; i < n_ref; ++i) {
            const CVector f = blaschke_potapov_factor(a, ref[i], theta);
            for (Eigen::Index k = 0; k < n; ++k) {
                const Eigen::Index c = static_cast<Eigen::Index>(i) * 2 * n + 2 * k;
                ds.rows(t, c) = f(k).real();
                ds.rows(t, c + 1) = f(k).imag();
            }
        }
        ds.aux.row(t).head(2 * n) = pa.transpose();
        ds.aux(t, 2 * n) = theta;
    }
    ds.provenance = {"blaschke-potapov",
                     {{"n_maps", double(n_maps)},
                      {"n_ref", double(n_ref)},
                      {"ball_dim", double(ball_dim)},
                      {"a_max", a_max},
                      {"random_theta", random_theta ? 1.0 : 0.0}},
                     seed};
    return ds;
}

RMatrix ScaleResult::inverse(const RMatrix& scaled) const {
    require(scaled.cols() == mean.size(), "ScaleResult::inverse: column count mismatch");
    RMatrix out = scaled;
    for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) = out.col(j) * stddev(j) + RVector::Constant(out.rows(), mean(j));
    return out;
}

ScaleResult standard_scale(const Dataset& ds) {
    validate(ds);
    ScaleResult out;
    out.data = ds;
    const Eigen::Index t = ds.rows.rows();
    out.mean = ds.rows.colwise().mean().transpose();
    out.stddev = RVector::Zero(ds.rows.cols());
    for (Eigen::Index j = 0; j < ds.rows.cols(); ++j) {
        const RVector centered = ds.rows.col(j).array() - out.mean(j);
        const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(t));
        out.stddev(j) = sd;
        if (sd <= 1e-14 * std::max(1.0, std::abs(out.mean(j)))) {
            out.data.rows.col(j).setZero();
            out.constant_columns.push_back(static_cast<std::size_t>(j));
            spdlog::warn("standard_scale: column {} is constant; mapped to 0", j);
        } else {
            out.data.rows.col(j) = centered / sd;
        }
    }
    out.data.provenance.generator = ds.provenance.generator.empty()
                                        ? "standard-scale"
                                        : ds.provenance.generator + "+standard-scale";
    return out;
}

Dataset load_csv(const std::filesystem::path& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_csv: cannot open " + path.string());
    Dataset ds;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (header_pending) {
            for (const auto c : cells) ds.feature_names.emplace_back(c);
            width = cells.size();
            header_pending = false;
            continue;
        }
        if (width == 0) width = cells.size();
        if (cells.size() != width) {
            throw ParseError("load_csv: row " + std::to_string(lineno) + " has " +
                                 std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(width),
                             lineno, 0);
        }
        std::vector<double> values(width);
        for (std::size_t c = 0; c < width; ++c) {
            const auto cell = cells[c];
            const char* end = cell.data() + cell.size();
            auto [ptr, ec] = std::from_chars(cell.data(), end, values[c]);
            if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(values[c])) {
                throw ParseError("load_csv: non-numeric cell '" + std::string(cell) + "' at row " +
                                     std::to_string(lineno) + ", column " + std::to_string(c + 1),
                                 lineno, c + 1);
            }
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw ParseError("load_csv: no data rows in " + path.string());
    ds.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            ds.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    ds.provenance = {"csv", {{"rows", double(rows.size())}, {"cols", double(width)}}, std::nullopt};
    return ds;
}

}  // namespace qgeom
