#include "qgeom/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "qgeom/errors.hpp"
#include "qgeom/parallel.hpp"

namespace qgeom {

QuantumGeometricTensor qgt(const MatrixConfiguration& cfg, const RVector& x) {
    const DisplacementSpectrum s = displacement_spectrum(cfg, x);
    if (s.degenerate) {
        throw DegenerateStateError("qgt: degenerate ground state (gap " + std::to_string(s.gap) + ")",
                                   s.gap);
    }
    const Eigen::Index n = cfg.hilbert_dim();
    const Eigen::Index d = cfg.feature_dim();
    QuantumGeometricTensor out;
    out.point = x;
    out.q = CMatrix::Zero(d, d);
    if (n > 1) {
        // a(k, mu) = <k|X_mu|x> / (lambda_k - lambda_0) for excited k, so q = a^dagger a
        const CVector psi = s.eigenvectors.col(0);
        const CMatrix excited = s.eigenvectors.rightCols(n - 1);
        CMatrix a(n - 1, d);
        for (Eigen::Index mu = 0; mu < d; ++mu) {
            a.col(mu) = excited.adjoint() * (cfg[static_cast<std::size_t>(mu)].matrix() * psi);
        }
        for (Eigen::Index k = 1; k < n; ++k) {
            a.row(k - 1) /= s.eigenvalues(k) - s.eigenvalues(0);
        }
        out.q = a.adjoint() * a;
        out.q = 0.5 * (out.q + out.q.adjoint()).eval();
    }
    out.g = 2.0 * out.q.real();
    out.omega = 2.0 * out.q.imag();
    return out;
}

int metric_rank(const RVector& descending, double gap_ratio_threshold) {
    const Eigen::Index d = descending.size();
    if (d == 0) return 0;
    const double top = descending(0);
    const double floor = 1e-12 * std::max(top, 1.0);
    if (top <= floor) return 0;
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
        const double next = std::max(descending(i + 1), floor * 1e-3);
        if (descending(i) / next > gap_ratio_threshold) return static_cast<int>(i + 1);
    }
    return static_cast<int>(d);
}

MetricDimension metric_dimension(const MatrixConfiguration& cfg, const RMatrix& points,
                                 double gap_ratio_threshold) {
    if (points.rows() == 0) throw ValidationError("metric_dimension: no points");
    if (points.cols() != cfg.feature_dim()) {
        throw ValidationError("metric_dimension: points have the wrong number of columns");
    }
    if (!(gap_ratio_threshold > 1.0)) {
        throw ValidationError("metric_dimension: gap_ratio_threshold must exceed 1");
    }
    const auto t = static_cast<std::size_t>(points.rows());
    const Eigen::Index d = cfg.feature_dim();
    MetricDimension out;
    out.spectra = RMatrix::Constant(points.rows(), d, std::numeric_limits<double>::quiet_NaN());
    out.per_point.assign(t, -1);
    parallel_for(t, [&](std::size_t i) {
        const auto row = static_cast<Eigen::Index>(i);
        const RVector x = points.row(row).transpose();
        if (displacement_spectrum(cfg, x).degenerate) return;
        const RMatrix g = qgt(cfg, x).g;
        Eigen::SelfAdjointEigenSolver<RMatrix> solver(g, Eigen::EigenvaluesOnly);
        const RVector desc = solver.eigenvalues().reverse();
        out.spectra.row(row) = desc.transpose();
        out.per_point[i] = metric_rank(desc, gap_ratio_threshold);
    });

    std::map<int, std::size_t> votes;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < t; ++i) {
        if (out.per_point[i] < 0) {
            out.degenerate_rows.push_back(i);
        } else {
            ++votes[out.per_point[i]];
            ++evaluated;
        }
    }
    std::size_t best = 0;
    for (const auto& [dim, count] : votes) {
        if (count > best) {
            best = count;
            out.dimension = dim;
        }
    }
    out.fraction = evaluated ? static_cast<double>(best) / static_cast<double>(evaluated) : 0.0;
    return out;
}

QuantumDistance quantum_distance(const QuasiCoherentState& s1, const QuasiCoherentState& s2) {
    if (s1.vector.size() != s2.vector.size()) {
        throw ValidationError("quantum_distance: state dimension mismatch");
    }
    const Complex overlap = s1.vector.dot(s2.vector);  // conjugates the first argument
    const double mag = std::min(std::abs(overlap), 1.0);
    QuantumDistance out;
    if (mag < 1e-300) {
        out.distance = std::numeric_limits<double>::infinity();
        out.phase = 0.0;
        return out;
    }
    out.distance = std::sqrt(std::max(0.0, -std::log(mag)));
    out.phase = std::arg(overlap);
    if (out.phase == -std::numbers::pi) out.phase = std::numbers::pi;
    return out;
}

RVector AffineSlice::embed(const std::array<double, 3>& u) const {
    return origin + frame * Eigen::Vector3d(u[0], u[1], u[2]);
}

AffineSlice default_slice(Eigen::Index feature_dim) {
    if (feature_dim < 3) throw ValidationError("default_slice: requires feature_dim >= 3");
    AffineSlice s;
    s.origin = RVector::Zero(feature_dim);
    s.frame = RMatrix::Zero(feature_dim, 3);
    s.frame.topRows(3).setIdentity();
    return s;
}

void validate_slice(const AffineSlice& slice, Eigen::Index feature_dim) {
    if (slice.origin.size() != feature_dim || slice.frame.rows() != feature_dim ||
        slice.frame.cols() != 3) {
        throw ValidationError("slice: expected origin of length D and a D x 3 frame");
    }
    const RMatrix gram = slice.frame.transpose() * slice.frame;
    if ((gram - RMatrix::Identity(3, 3)).norm() > 1e-8) {
        throw ValidationError("slice: frame columns are not orthonormal");
    }
}

SearchBox3 slice_box(const AffineSlice& slice, const RMatrix& data, double inflate) {
    if (data.rows() == 0) throw ValidationError("slice_box: no data");
    validate_slice(slice, data.cols());
    const RMatrix u = (data.rowwise() - slice.origin.transpose()) * slice.frame;
    SearchBox3 box;
    for (int k = 0; k < 3; ++k) {
        const double lo = u.col(k).minCoeff();
        const double hi = u.col(k).maxCoeff();
        const double pad = inflate * (hi - lo);
        box.lo[static_cast<std::size_t>(k)] = lo - pad;
        box.hi[static_cast<std::size_t>(k)] = hi + pad;
    }
    return box;
}

namespace {

struct GapObjective {
    const MatrixConfiguration* cfg;
    const AffineSlice* slice;
};

double gap_at(const MatrixConfiguration& cfg, const AffineSlice& slice,
              const std::array<double, 3>& u) {
    const EigenDecomposition eig =
        hermitian_eig_trusted(displacement_hamiltonian(cfg, slice.embed(u)).matrix());
    return eig.eigenvalues(1) - eig.eigenvalues(0);
}

double gsl_gap(const gsl_vector* v, void* params) {
    const auto* obj = static_cast<const GapObjective*>(params);
    return gap_at(*obj->cfg, *obj->slice,
                  {gsl_vector_get(v, 0), gsl_vector_get(v, 1), gsl_vector_get(v, 2)});
}

struct SimplexResult {
    std::array<double, 3> u{};
    double gap = 0.0;
};

SimplexResult descend(const GapObjective& obj, const std::array<double, 3>& start, double step,
                      double size_tol, std::size_t max_iterations) {
    gsl_multimin_function f{&gsl_gap, 3, const_cast<GapObjective*>(&obj)};
    gsl_vector* x = gsl_vector_alloc(3);
    gsl_vector* steps = gsl_vector_alloc(3);
    for (std::size_t k = 0; k < 3; ++k) gsl_vector_set(x, k, start[k]);
    gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
    SimplexResult out;
    // restart a few times: the simplex can collapse early on the cone around a crossing
    for (int round = 0; round < 3; ++round) {
        gsl_vector_set_all(steps, step);
        gsl_multimin_fminimizer_set(m, &f, x, steps);
        for (std::size_t it = 0; it < max_iterations; ++it) {
            if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), size_tol) == GSL_SUCCESS) break;
        }
        gsl_vector_memcpy(x, gsl_multimin_fminimizer_x(m));
        step *= 1e-2;
    }
    for (std::size_t k = 0; k < 3; ++k) out.u[k] = gsl_vector_get(x, k);
    out.gap = gsl_multimin_fminimizer_minimum(m);
    gsl_multimin_fminimizer_free(m);
    gsl_vector_free(steps);
    gsl_vector_free(x);
    return out;
}

double distance3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

}  // namespace

std::vector<DegeneracyPoint> find_degeneracy_points(const MatrixConfiguration& cfg,
                                                    const AffineSlice& slice,
                                                    const SearchBox3& box,
                                                    const DegeneracySearchOptions& options) {
    validate_slice(slice, cfg.feature_dim());
    if (options.n_starts < 1) throw ValidationError("find_degeneracy_points: n_starts must be >= 1");
    if (options.seed_grid < 2) throw ValidationError("find_degeneracy_points: seed_grid must be >= 2");
    for (std::size_t k = 0; k < 3; ++k) {
        if (!(box.hi[k] > box.lo[k])) throw ValidationError("find_degeneracy_points: empty search box");
    }
    if (cfg.hilbert_dim() < 2) return {};
    const double scale = std::max(feature_scale(cfg), 1e-12);
    const double accept = options.accept_gap.value_or(1e-3 * scale);
    const double dedupe = options.dedupe_radius.value_or(1e-2 * scale);

    // coarse grid, then keep cells that are local minima of the gap
    const int g = options.seed_grid;
    const auto gn = static_cast<std::size_t>(g);
    std::array<double, 3> cell{};
    for (std::size_t k = 0; k < 3; ++k) cell[k] = (box.hi[k] - box.lo[k]) / (g - 1);
    const auto node = [&](std::size_t i, std::size_t j, std::size_t k) {
        return std::array<double, 3>{box.lo[0] + cell[0] * static_cast<double>(i),
                                     box.lo[1] + cell[1] * static_cast<double>(j),
                                     box.lo[2] + cell[2] * static_cast<double>(k)};
    };
    std::vector<double> coarse(gn * gn * gn);
    parallel_for(coarse.size(), [&](std::size_t idx) {
        coarse[idx] = gap_at(cfg, slice, node(idx / (gn * gn), (idx / gn) % gn, idx % gn));
    });
    std::vector<std::pair<double, std::array<double, 3>>> minima;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            for (int k = 0; k < g; ++k) {
                const auto at = [&](int a, int b, int c) {
                    return coarse[(static_cast<std::size_t>(a) * gn + static_cast<std::size_t>(b)) * gn +
                                  static_cast<std::size_t>(c)];
                };
                const double v = at(i, j, k);
                bool is_min = true;
                for (int di = -1; di <= 1 && is_min; ++di) {
                    for (int dj = -1; dj <= 1 && is_min; ++dj) {
                        for (int dk = -1; dk <= 1 && is_min; ++dk) {
                            const int a = i + di, b = j + dj, c = k + dk;
                            if ((di | dj | dk) == 0 || a < 0 || b < 0 || c < 0 || a >= g || b >= g ||
                                c >= g) {
                                continue;
                            }
                            if (at(a, b, c) < v) is_min = false;
                        }
                    }
                }
                if (is_min) {
                    minima.emplace_back(v, node(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                                static_cast<std::size_t>(k)));
                }
            }
        }
    }
    std::sort(minima.begin(), minima.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::array<double, 3>> starts;
    for (const auto& m : minima) {
        if (starts.size() >= options.n_starts) break;
        starts.push_back(m.second);
    }
    std::mt19937_64 rng(options.seed);
    std::array<std::uniform_real_distribution<double>, 3> uni{
        std::uniform_real_distribution<double>(box.lo[0], box.hi[0]),
        std::uniform_real_distribution<double>(box.lo[1], box.hi[1]),
        std::uniform_real_distribution<double>(box.lo[2], box.hi[2])};
    while (starts.size() < options.n_starts) {
        starts.push_back({uni[0](rng), uni[1](rng), uni[2](rng)});
    }

    const double step = 0.5 * std::min({cell[0], cell[1], cell[2]});
    const GapObjective obj{&cfg, &slice};
    std::vector<SimplexResult> found(starts.size());
    parallel_for(starts.size(), [&](std::size_t s) {
        found[s] = descend(obj, starts[s], step, 1e-10 * scale, options.max_iterations);
    });

    std::vector<SimplexResult> accepted;
    for (const auto& r : found) {
        if (r.gap > accept) continue;
        bool inside = true;
        for (std::size_t k = 0; k < 3; ++k) {
            const double pad = 1e-6 * (box.hi[k] - box.lo[k]);
            if (r.u[k] < box.lo[k] - pad || r.u[k] > box.hi[k] + pad) inside = false;
        }
        if (inside) accepted.push_back(r);
    }
    std::stable_sort(accepted.begin(), accepted.end(),
                     [](const auto& a, const auto& b) { return a.gap < b.gap; });
    std::vector<DegeneracyPoint> out;
    for (const auto& r : accepted) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const DegeneracyPoint& p) {
            return distance3(p.location, r.u) < dedupe;
        });
        if (dup) continue;
        DegeneracyPoint p;
        p.location = r.u;
        p.feature_location = slice.embed(r.u);
        p.gap = r.gap;
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.location < b.location; });
    return out;
}

ChernResult chern_number(const MatrixConfiguration& cfg, const AffineSlice& slice,
                         const std::array<double, 3>& center, double radius, ChernGrid grid) {
    validate_slice(slice, cfg.feature_dim());
    if (!(radius > 0.0)) throw ValidationError("chern_number: radius must be positive");
    if (grid.n_theta < 2 || grid.n_phi < 3) {
        throw ValidationError("chern_number: grid needs n_theta >= 2 and n_phi >= 3");
    }
    const int nt = grid.n_theta;
    const int np = grid.n_phi;
    const double pi = std::numbers::pi;

    // row 0 and row nt are the poles and hold a single state each
    const auto index = [&](int i, int j) -> std::size_t {
        if (i == 0) return 0;
        if (i == nt) return 1;
        return 2 + static_cast<std::size_t>((i - 1) * np + (j % np));
    };
    const std::size_t count = 2 + static_cast<std::size_t>((nt - 1) * np);
    std::vector<CVector> states(count);
    std::vector<double> gaps(count);
    parallel_for(count, [&](std::size_t idx) {
        double theta = 0.0;
        double phi = 0.0;
        if (idx == 1) {
            theta = pi;
        } else if (idx >= 2) {
            const auto r = static_cast<int>(idx - 2);
            theta = pi * (r / np + 1) / nt;
            phi = 2.0 * pi * (r % np) / np;
        }
        const std::array<double, 3> u{center[0] + radius * std::sin(theta) * std::cos(phi),
                                      center[1] + radius * std::sin(theta) * std::sin(phi),
                                      center[2] + radius * std::cos(theta)};
        const DisplacementSpectrum s = displacement_spectrum(cfg, slice.embed(u));
        gaps[idx] = s.degenerate ? 0.0 : s.gap;
        states[idx] = s.eigenvectors.col(0);
    });
    ChernResult out;
    out.min_gap = *std::min_element(gaps.begin(), gaps.end());
    if (out.min_gap <= 0.0) {
        throw DegenerateOnSphereError("chern_number: the sphere passes through a degenerate point",
                                      out.min_gap);
    }

    double weakest = 1.0;
    const auto link = [&](std::size_t a, std::size_t b) -> Complex {
        if (a == b) return {1.0, 0.0};
        const Complex o = states[a].dot(states[b]);
        const double m = std::abs(o);
        weakest = std::min(weakest, m);
        return m > 0.0 ? o / m : Complex{1.0, 0.0};
    };
    // theta increases, then phi: e_theta x e_phi is the outward normal
    double flux = 0.0;
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < np; ++j) {
            const std::size_t a = index(i, j);
            const std::size_t b = index(i + 1, j);
            const std::size_t c = index(i + 1, j + 1);
            const std::size_t d = index(i, j + 1);
            flux += std::arg(link(a, b) * link(b, c) * link(c, d) * link(d, a));
        }
    }
    out.raw = flux / (2.0 * pi);
    out.charge = static_cast<int>(std::lround(out.raw));
    out.residual = std::abs(out.raw - out.charge);
    if (weakest < 1e-6 || out.residual > 0.05) {
        throw GridTooCoarseError("chern_number: grid too coarse for this sphere (residual " +
                                     std::to_string(out.residual) + ")",
                                 out.residual);
    }
    return out;
}

void assign_charges(const MatrixConfiguration& cfg, const AffineSlice& slice,
                    std::vector<DegeneracyPoint>& points, double max_radius, ChernGrid grid) {
    if (!(max_radius > 0.0)) throw ValidationError("assign_charges: max_radius must be positive");
    parallel_for(points.size(), [&](std::size_t i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i) nearest = std::min(nearest, distance3(points[i].location, points[j].location));
        }
        const double radius = std::min(max_radius, 0.4 * nearest);
        try {
            points[i].charge = chern_number(cfg, slice, points[i].location, radius, grid).charge;
        } catch (const NumericError&) {
            points[i].charge.reset();
        }
    });
}

}  // namespace qgeom
