// Acceptance checks. Each criterion prints one line:
//   criterion <k> PASS|FAIL|SKIP <name>: <measured values>
// Exit status is 0 when every selected criterion passes, 77 when all were skipped.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "qgeom/qgeom.hpp"
#include "test_support.hpp"

using namespace qgeom;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
    Status status = Status::fail;
    std::string detail;
};

struct Context {
    std::optional<fs::path> work_dir;
};

std::string fmt(double v) { return format_double(v); }

Outcome verdict(bool ok, const std::ostringstream& detail) {
    return {ok ? Status::pass : Status::fail, detail.str()};
}

/// Trains, or reloads a configuration trained earlier with the same settings.
MatrixConfiguration trained(const Context& ctx, const std::string& tag, const RMatrix& data,
                            const TrainingConfig& tc) {
    std::optional<fs::path> cache;
    if (ctx.work_dir) {
        std::ostringstream name;
        name << tag << "_n" << tc.hilbert_dim << "_w" << tc.fluctuation_weight << "_e" << tc.epochs
             << "_b" << tc.batch_size << "_s" << tc.seed << ".json";
        cache = *ctx.work_dir / name.str();
        if (fs::exists(*cache)) return read_configuration(*cache);
    }
    TrainingResult r = train(data, tc);
    if (cache) {
        fs::create_directories(cache->parent_path());
        write_configuration(*cache, r.configuration);
    }
    return std::move(r.configuration);
}

// Training setups shared between criteria.
constexpr std::uint64_t kSeed = 1;

MatrixConfiguration sphere_model(const Context& ctx) {
    const Dataset ds = sphere_uniform(1000, 1.0, RVector::Zero(3), 0.0, kSeed);
    TrainingConfig tc;
    tc.hilbert_dim = 4;
    tc.fluctuation_weight = 0.1;
    tc.epochs = 20000;
    tc.seed = kSeed;
    return trained(ctx, "sphere", ds.rows, tc);
}

const Dataset& two_spheres_data() {
    static const Dataset ds = two_spheres(2000, {}, 0.1, kSeed);
    return ds;
}

MatrixConfiguration two_spheres_model(const Context& ctx) {
    TrainingConfig tc;
    tc.hilbert_dim = 8;
    tc.fluctuation_weight = 0.1;
    tc.epochs = 5000;
    tc.seed = kSeed;
    return trained(ctx, "two_spheres", two_spheres_data().rows, tc);
}

/// Ground-state quantities from a plain eigensolve, independent of the library's
/// state code: returns (lambda_0, sigma^2, d^2).
std::array<double, 3> direct_ground(const MatrixConfiguration& cfg, const RVector& x) {
    const Eigen::Index n = cfg.hilbert_dim();
    CMatrix h = CMatrix::Zero(n, n);
    for (std::size_t a = 0; a < static_cast<std::size_t>(cfg.feature_dim()); ++a) {
        CMatrix s = cfg[a].matrix();
        s.diagonal().array() -= x(static_cast<Eigen::Index>(a));
        h += 0.5 * s * s;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    const CVector psi = es.eigenvectors().col(0);
    double var = 0.0, disp = 0.0;
    for (std::size_t a = 0; a < static_cast<std::size_t>(cfg.feature_dim()); ++a) {
        const CMatrix& m = cfg[a].matrix();
        const double mean = psi.dot(m * psi).real();
        var += psi.dot(m * (m * psi)).real() - mean * mean;
        const double d = mean - x(static_cast<Eigen::Index>(a));
        disp += d * d;
    }
    return {es.eigenvalues()(0), var, disp};
}

Outcome criterion1(const Context&) {
    std::mt19937_64 rng(101);
    const std::array<Eigen::Index, 3> ns{2, 4, 8};
    const std::array<Eigen::Index, 3> ds{1, 3, 30};
    double worst_lib = 0.0, worst_direct = 0.0;
    int pairs = 0;
    for (int k = 0; k < 500; ++k) {
        const Eigen::Index n = ns[static_cast<std::size_t>(k % 3)];
        const Eigen::Index d = ds[static_cast<std::size_t>((k / 3) % 3)];
        const auto cfg = test::random_configuration(rng, n, d);
        const RVector x = test::random_point(rng, d, 1.5);
        const CloudPoint p = cloud_point(cfg, x);
        const double lib = std::abs(2.0 * p.energy - (p.variance + p.displacement_sq)) / (2.0 * p.energy);
        const auto [lam, var, disp] = direct_ground(cfg, x);
        const double direct = std::abs(2.0 * lam - (var + disp)) / (2.0 * lam);
        worst_lib = std::max(worst_lib, lib);
        worst_direct = std::max(worst_direct, direct);
        ++pairs;
    }
    std::ostringstream s;
    s << pairs << " pairs, max relative deviation " << fmt(worst_lib) << " (library terms), "
      << fmt(worst_direct) << " (independent eigensolve); tolerance 1e-8";
    return verdict(worst_lib <= 1e-8 && worst_direct <= 1e-8, s);
}

double direct_loss(const std::vector<CMatrix>& x, const RMatrix& batch, double w) {
    double total = 0.0;
    const MatrixConfiguration cfg = make_configuration(x);
    for (Eigen::Index t = 0; t < batch.rows(); ++t) {
        const auto [lam, var, disp] = direct_ground(cfg, batch.row(t).transpose());
        total += disp + w * var;
    }
    return total;
}

Outcome criterion2(const Context&) {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> nd(2, 6), dd(1, 4);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Eigen::Index n = nd(rng), d = dd(rng);
        const auto cfg = test::random_configuration(rng, n, d);
        RMatrix batch(5, d);
        for (Eigen::Index t = 0; t < 5; ++t) batch.row(t) = test::random_point(rng, d, 1.5).transpose();
        const double w = 0.1 + 0.2 * k / 20.0;
        const RVector analytic = parameter_gradient(loss_gradient(cfg, batch, w).gradient);

        std::vector<CMatrix> x;
        for (const auto& m : cfg.observables()) x.push_back(m.matrix());
        const double h = 1e-5;
        const auto probe = [&](std::size_t a, Eigen::Index i, Eigen::Index j, Complex unit) {
            auto plus = x, minus = x;
            plus[a](i, j) += h * unit;
            minus[a](i, j) -= h * unit;
            if (i != j) {
                plus[a](j, i) += h * std::conj(unit);
                minus[a](j, i) -= h * std::conj(unit);
            }
            return (direct_loss(plus, batch, w) - direct_loss(minus, batch, w)) / (2.0 * h);
        };
        RVector fd(analytic.size());
        Eigen::Index idx = 0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            for (Eigen::Index i = 0; i < n; ++i) fd(idx++) = probe(a, i, i, 1.0);
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = i + 1; j < n; ++j) {
                    fd(idx++) = probe(a, i, j, 1.0);
                    fd(idx++) = probe(a, i, j, Complex(0.0, 1.0));
                }
            }
        }
        worst = std::max(worst, (analytic - fd).norm() / fd.norm());
    }
    std::ostringstream s;
    s << "20 instances, max relative gradient error " << fmt(worst) << "; tolerance 1e-5";
    return verdict(worst <= 1e-5, s);
}

struct SphereAlignment {
    double commutator = 0.0;  // max_{a<b} ||[J_a,J_b] - i eps_abc J_c||_F
    double casimir = 0.0;     // ||sum J_a^2 - j(j+1)||_F
    double j3_error = 0.0;    // max |eig(J_3) - m|
    int sign = 1;
};

/// Maps a learned N = 4 sphere onto J_a = s (j + w) (X_a - tr(X_a)/N). The scale is the
/// optimum of the exact fuzzy sphere; the orientation s = +-1 is the one with the smaller
/// commutator residual (a reflection of the feature axes flips the structure constants).
SphereAlignment align_sphere(const MatrixConfiguration& cfg, double j, double w) {
    const Eigen::Index n = cfg.hilbert_dim();
    SphereAlignment best;
    best.commutator = std::numeric_limits<double>::infinity();
    for (int sign : {1, -1}) {
        std::array<CMatrix, 3> jm;
        for (std::size_t a = 0; a < 3; ++a) {
            CMatrix m = cfg[a].matrix();
            m.diagonal().array() -= m.trace() / static_cast<double>(n);
            jm[a] = static_cast<double>(sign) * (j + w) * m;
        }
        double comm = 0.0;
        for (std::size_t a = 0; a < 3; ++a) {
            const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
            const CMatrix r = jm[a] * jm[b] - jm[b] * jm[a] - Complex(0.0, 1.0) * jm[c];
            comm = std::max(comm, r.norm());
        }
        if (comm < best.commutator) {
            best.commutator = comm;
            best.sign = sign;
            CMatrix cas = jm[0] * jm[0] + jm[1] * jm[1] + jm[2] * jm[2];
            cas.diagonal().array() -= j * (j + 1.0);
            best.casimir = cas.norm();
            Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (jm[2] + jm[2].adjoint()));
            best.j3_error = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) {
                best.j3_error = std::max(best.j3_error, std::abs(es.eigenvalues()(k) - (-j + static_cast<double>(k))));
            }
        }
    }
    return best;
}

Outcome criterion3(const Context& ctx) {
    const MatrixConfiguration cfg = sphere_model(ctx);
    const SphereAlignment al = align_sphere(cfg, 1.5, 0.1);
    std::ostringstream s;
    s << "commutator residual " << fmt(al.commutator) << " (<= 0.25), Casimir residual " << fmt(al.casimir)
      << " (<= 0.20), J3 eigenvalue error " << fmt(al.j3_error) << " (<= 0.15), orientation "
      << al.sign;
    return verdict(al.commutator <= 0.25 && al.casimir <= 0.20 && al.j3_error <= 0.15, s);
}

Outcome criterion4(const Context&) {
    std::mt19937_64 rng(404);
    const RMatrix pts = test::unit_sphere_points(rng, 200);
    double worst = 0.0;
    std::ostringstream s;
    for (int two_j : {1, 3}) {
        for (double w : {0.1, 0.5}) {
            const double j = 0.5 * two_j;
            const auto mean_loss = [&](double alpha) {
                return loss(fuzzy_sphere(SpinLabel(two_j), alpha), pts, w).value / 200.0;
            };
            const auto scan = [&](double lo, double hi, double step) {
                double best_a = lo, best_l = mean_loss(lo);
                for (double a = lo + step; a <= hi; a += step) {
                    const double l = mean_loss(a);
                    if (l < best_l) best_l = l, best_a = a;
                }
                return best_a;
            };
            const double coarse = scan(0.05, 3.0, 1e-2);
            const double fine = scan(std::max(0.01, coarse - 2e-2), coarse + 2e-2, 1e-5);
            const double expected = 1.0 / (j + w);
            worst = std::max(worst, std::abs(fine - expected));
            s << "j=" << j << " w=" << w << ": " << fmt(std::round(fine * 1e5) / 1e5) << " vs "
              << fmt(expected) << "; ";
        }
    }
    s << "max deviation " << fmt(worst) << " (<= 1e-3)";
    return verdict(worst <= 1e-3, s);
}

Outcome criterion5(const Context&) {
    const LaplacianAnalysis an = laplacian_spectrum(fuzzy_sphere(SpinLabel(3), 1.0));
    const RVector& ev = an.eigenvalues;
    bool ok = ev.size() == 16 && std::abs(ev(0)) <= 1e-10;
    double worst = 0.0;
    Eigen::Index k = 0;
    for (int l = 0; l <= 3 && ok; ++l) {
        for (int m = 0; m < 2 * l + 1; ++m, ++k) {
            if (l == 0) continue;
            // ratios against the l = 1 level, which equals 2 for this normalization
            const double ratio = ev(k) / ev(1);
            worst = std::max(worst, std::abs(ratio - l * (l + 1) / 2.0));
        }
    }
    ok = ok && worst <= 1e-10;
    std::ostringstream s;
    s << "16 eigenvalues, zero mode " << fmt(ev(0)) << ", l=1 level " << fmt(ev(1))
      << ", max ratio deviation from l(l+1)/2 with multiplicities 1,3,5,7: " << fmt(worst) << " (<= 1e-10)";
    return verdict(ok, s);
}

Outcome criterion6(const Context&) {
    const AffineSlice slice = default_slice(3);
    bool ok = true;
    std::ostringstream s;
    for (int two_j : {1, 3}) {
        const auto cfg = fuzzy_sphere(SpinLabel(two_j), 1.0);
        const ChernResult c24 = chern_number(cfg, slice, {0, 0, 0}, 0.5, {24, 24});
        const ChernResult c48 = chern_number(cfg, slice, {0, 0, 0}, 0.5, {48, 48});
        ok = ok && std::abs(c24.charge) == two_j && c24.charge == c48.charge && c24.residual <= 0.05 &&
             c48.residual <= 0.05;
        s << "2j=" << two_j << ": c1=" << c24.charge << " (24x24, residual " << fmt(c24.residual) << "), "
          << c48.charge << " (48x48, residual " << fmt(c48.residual) << "); ";
    }
    s << "expected |c1| = 2j, residual <= 0.05";
    return verdict(ok, s);
}

Outcome criterion7(const Context& ctx) {
    std::ostringstream s;
    // exact part: blocks of different spin, the second one displaced along x_3
    const std::vector<MatrixConfiguration> parts{
        fuzzy_sphere(SpinLabel(1), 1.0),
        translate(fuzzy_sphere(SpinLabel(2), 0.8), Eigen::Vector3d(0, 0, 3))};
    const MatrixConfiguration sum = direct_sum(parts);
    const LaplacianAnalysis an = laplacian_spectrum(sum);
    const double tol = default_zero_tolerance(an);
    const std::size_t zeros = count_zero_modes(an, tol);
    bool ok = zeros == 2;
    double block_err = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();
    if (ok) {
        const ComponentDecomposition dec = zero_mode_components(an, tol);
        residual = dec.residual;
        CMatrix p0 = CMatrix::Zero(5, 5), p1 = CMatrix::Zero(5, 5);
        p0.topLeftCorner(2, 2).setIdentity();
        p1.bottomRightCorner(3, 3).setIdentity();
        if (dec.projectors.size() == 2) {
            block_err = std::max((dec.projectors[0].matrix() - p0).norm(), (dec.projectors[1].matrix() - p1).norm());
        }
    }
    ok = ok && residual <= 1e-6 && block_err <= 1e-6;
    s << "direct sum: " << zeros << " zero modes (expected 2), projector residual " << fmt(residual)
      << ", block mismatch " << fmt(block_err) << " (<= 1e-6); ";

    const LaplacianAnalysis tr = laplacian_spectrum(two_spheres_model(ctx));
    const double ratio = tr.eigenvalues(2) / tr.eigenvalues(1);
    ok = ok && ratio >= 3.0;
    s << "trained two spheres: lowest eigenvalues " << fmt(tr.eigenvalues(0)) << ", " << fmt(tr.eigenvalues(1))
      << ", " << fmt(tr.eigenvalues(2)) << ", third/second " << fmt(ratio) << " (>= 3)";
    return verdict(ok, s);
}

struct MonopoleSummary {
    std::size_t count = 0;
    bool all_charged = false;
    int charge_sum = 0;
    std::optional<int> enclosing;
};

MonopoleSummary monopoles(const MatrixConfiguration& cfg, const RMatrix& data) {
    const AffineSlice slice = default_slice(3);
    auto pts = find_degeneracy_points(cfg, slice, slice_box(slice, data));
    assign_charges(cfg, slice, pts, 0.1 * feature_scale(cfg));
    MonopoleSummary out;
    out.count = pts.size();
    out.all_charged = true;
    if (pts.empty()) return out;
    std::array<double, 3> lo = pts[0].location, hi = lo;
    for (const auto& p : pts) {
        if (!p.charge) out.all_charged = false;
        out.charge_sum += p.charge.value_or(0);
        for (std::size_t k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], p.location[k]);
            hi[k] = std::max(hi[k], p.location[k]);
        }
    }
    std::array<double, 3> center{};
    double half_diag = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        center[k] = 0.5 * (lo[k] + hi[k]);
        half_diag += 0.25 * (hi[k] - lo[k]) * (hi[k] - lo[k]);
    }
    // enclosing sphere; widened a little if it happens to cross a degeneracy
    for (double extra : {0.5, 0.55, 0.6, 0.7}) {
        try {
            out.enclosing = chern_number(cfg, slice, center, std::sqrt(half_diag) + extra * feature_scale(cfg)).charge;
            break;
        } catch (const DegenerateOnSphereError&) {
        }
    }
    return out;
}

Outcome criterion8(const Context& ctx) {
    std::ostringstream s;
    const MonopoleSummary one = monopoles(sphere_model(ctx), sphere_uniform(1000, 1.0, RVector::Zero(3), 0.0, kSeed).rows);
    const MonopoleSummary two = monopoles(two_spheres_model(ctx), two_spheres_data().rows);
    const auto show = [&](const char* name, const MonopoleSummary& m) {
        s << name << ": " << m.count << " points, charge sum " << m.charge_sum << ", enclosing "
          << (m.enclosing ? std::to_string(*m.enclosing) : std::string("n/a")) << (m.all_charged ? "" : ", some charges missing")
          << "; ";
    };
    show("sphere N=4", one);
    show("two spheres N=8", two);
    s << "expected 3 and 7 +- 2 points with sum equal to the enclosing charge";
    const auto additive = [](const MonopoleSummary& m) {
        return m.all_charged && m.enclosing && *m.enclosing == m.charge_sum;
    };
    const bool ok = one.count == 3 && additive(one) && two.count >= 5 && two.count <= 9 && additive(two);
    return verdict(ok, s);
}

Outcome criterion9(const Context& ctx) {
    std::ostringstream s;
    const Dataset conf = conformal_maps(2000, 100, 0.9, kSeed);
    TrainingConfig tc;
    tc.hilbert_dim = 8;
    tc.fluctuation_weight = 0.1;
    tc.epochs = 1000;
    tc.seed = kSeed;
    const MatrixConfiguration cfg = trained(ctx, "conformal", conf.rows, tc);
    const MetricDimension md = metric_dimension(cfg, conf.rows);
    const LaplacianAnalysis an = laplacian_spectrum(cfg);
    std::optional<double> weyl;
    try {
        weyl = weyl_dimension(an).dimension;
    } catch (const FitError&) {
    }
    bool ok = md.dimension == 2 && md.fraction >= 0.8 && weyl && *weyl >= 1.5 && *weyl <= 2.5;
    s << "conformal maps: metric d=" << md.dimension << " at " << fmt(md.fraction) << " of points (d=2 at >= 0.8), Weyl d="
      << (weyl ? fmt(*weyl) : std::string("fit failed")) << " (in [1.5, 2.5]); ";

    const Dataset nonuni = sphere_nonuniform(2000, 0.1, kSeed);
    TrainingConfig tn = tc;
    tn.epochs = 5000;
    const LaplacianAnalysis ln = laplacian_spectrum(trained(ctx, "sphere_nonuniform", nonuni.rows, tn));
    const RVector& e = ln.eigenvalues;
    // groups {e0}, {e1..e3}, {e4..e8}: spread inside each group against the two gaps between them
    const double spread = std::max(e(3) - e(1), e(8) - e(4));
    const double gap = std::min(e(1) - e(0), e(4) - e(3));
    ok = ok && spread < gap;
    s << "non-uniform sphere: groups 1,3,5 with max within-group spread " << fmt(spread)
      << " and min between-group gap " << fmt(gap) << " (gap from the 5-group to the next eigenvalue "
      << fmt(e(9) - e(8)) << ")";
    return verdict(ok, s);
}

Outcome criterion10(const Context&) {
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto in_disk = [&] {
        Complex c;
        do c = {u(rng), u(rng)};
        while (std::abs(c) >= 1.0);
        return c;
    };
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const Complex a = in_disk(), z = in_disk();
        const CVector f = blaschke_potapov_factor(CVector::Constant(1, a), CVector::Constant(1, z));
        worst = std::max(worst, std::abs(f(0) - (a - z) / (1.0 - std::conj(a) * z)));
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t outside = 0, samples = 0;
    double max_norm = 0.0;
    for (Eigen::Index n = 2; n <= 5; ++n) {
        for (int k = 0; k < 2500; ++k) {
            CVector a(n), z(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                a(i) = {normal(rng), normal(rng)};
                z(i) = {normal(rng), normal(rng)};
            }
            a *= std::pow(std::abs(u(rng)), 1.0 / (2.0 * n)) * 0.999 / a.norm();
            z *= std::pow(std::abs(u(rng)), 1.0 / (2.0 * n)) * 0.999 / z.norm();
            const double norm = blaschke_potapov_factor(a, z).norm();
            max_norm = std::max(max_norm, norm);
            if (!(norm < 1.0)) ++outside;
            ++samples;
        }
    }
    std::ostringstream s;
    s << "n=1 max deviation from the disk automorphism " << fmt(worst) << " over 10000 pairs (<= 1e-12); n=2..5: "
      << outside << " of " << samples << " images outside the ball, max norm " << fmt(max_norm);
    return verdict(worst <= 1e-12 && outside == 0, s);
}

Outcome criterion11(const Context& ctx) {
    const char* env = std::getenv("QGEOM_WBC_CSV");
    if (env == nullptr || !fs::exists(env)) {
        return {Status::skip, "breast cancer CSV not found (set QGEOM_WBC_CSV)"};
    }
    const Dataset raw = load_csv(env, true);
    const ScaleResult sc = standard_scale(raw);
    const RMatrix& x = sc.data.rows;
    const double n = static_cast<double>(x.rows());
    const double mean_err = x.colwise().mean().cwiseAbs().maxCoeff();
    const double var_err = ((x.colwise().squaredNorm() / n).array() - 1.0).abs().maxCoeff();

    TrainingConfig tc;
    tc.hilbert_dim = 8;
    tc.fluctuation_weight = 0.1;
    tc.epochs = 3000;
    tc.seed = kSeed;
    const MatrixConfiguration cfg = trained(ctx, "wbc", x, tc);
    const LaplacianAnalysis an = laplacian_spectrum(cfg);
    const std::size_t zeros = count_zero_modes(an, default_zero_tolerance(an));
    const MetricDimension md = metric_dimension(cfg, x);
    const bool ok = mean_err <= 1e-12 && var_err <= 1e-12 && zeros == 1 && md.dimension == 2 && md.fraction >= 0.7;
    std::ostringstream s;
    s << raw.rows.rows() << "x" << raw.rows.cols() << " rows, scaled |mean| " << fmt(mean_err) << ", |var-1| "
      << fmt(var_err) << "; " << zeros << " zero modes (expected 1); metric d=" << md.dimension << " at "
      << fmt(md.fraction) << " of points (d=2 at >= 0.7)";
    return verdict(ok, s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qgeom acceptance checks"};
    std::vector<int> selected;
    std::string work_dir;
    app.add_option("-c,--criterion", selected, "criteria to run (default: all)")->check(CLI::Range(1, 11));
    app.add_option("--work-dir", work_dir, "cache directory for trained configurations");
    CLI11_PARSE(app, argc, argv);

    const std::map<int, std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
        {1, {"energy identity", criterion1}},
        {2, {"gradient oracle", criterion2}},
        {3, {"fuzzy-sphere training", criterion3}},
        {4, {"optimal scale", criterion4}},
        {5, {"Laplacian spectrum", criterion5}},
        {6, {"Chern quantization", criterion6}},
        {7, {"component separation", criterion7}},
        {8, {"degeneracy structure", criterion8}},
        {9, {"intrinsic dimension", criterion9}},
        {10, {"Blaschke-Potapov", criterion10}},
        {11, {"breast cancer pipeline", criterion11}},
    };
    if (selected.empty()) {
        for (const auto& [k, _] : criteria) selected.push_back(k);
    }
    Context ctx;
    if (!work_dir.empty()) ctx.work_dir = work_dir;

    int failed = 0, skipped = 0;
    for (int k : std::set<int>(selected.begin(), selected.end())) {
        const auto& [name, run] = criteria.at(k);
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = run(ctx);
        } catch (const std::exception& e) {
            out = {Status::fail, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const char* tag = out.status == Status::pass ? "PASS" : out.status == Status::fail ? "FAIL" : "SKIP";
        std::cout << "criterion " << k << " " << tag << " " << name << ": " << out.detail << " ["
                  << std::round(secs * 10.0) / 10.0 << " s]" << std::endl;
        failed += out.status == Status::fail;
        skipped += out.status == Status::skip;
    }
    if (failed > 0) return 1;
    if (skipped == static_cast<int>(std::set<int>(selected.begin(), selected.end()).size())) return 77;
    return 0;
}
