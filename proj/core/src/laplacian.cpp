#include "qgeom/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "qgeom/errors.hpp"
#include "qgeom/reference.hpp"

namespace qgeom {

std::string_view to_string(ConfigurationClass c) {
    switch (c) {
        case ConfigurationClass::classical: return "classical";
        case ConfigurationClass::almost_commutative: return "almost-commutative";
        case ConfigurationClass::deep_quantum: return "deep-quantum";
    }
    return "unknown";
}

CMatrix matrix_laplacian(const MatrixConfiguration& cfg) {
    const Eigen::Index n = cfg.hilbert_dim();
    const Eigen::Index nn = n * n;
    // sum_a ad_a^2 with ad_a = 1 (x) X_a - X_a^T (x) 1, which expands to
    // 1 (x) S + S^T (x) 1 - 2 sum_a X_a^T (x) X_a,  S = sum_a X_a^2.
    const CMatrix s = 2.0 * cfg.half_square_sum();
    CMatrix out = CMatrix::Zero(nn, nn);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.block(k * n, k * n, n, n) += s;
        for (Eigen::Index l = 0; l < n; ++l) {
            out.block(k * n, l * n, n, n).diagonal().array() += s(l, k);
        }
    }
    for (const auto& xa : cfg.observables()) {
        const CMatrix& x = xa.matrix();
        for (Eigen::Index l = 0; l < n; ++l) {
            for (Eigen::Index k = 0; k < n; ++k) {
                const Complex c = x(l, k);
                if (c == Complex{}) continue;
                out.block(k * n, l * n, n, n) -= 2.0 * c * x;
            }
        }
    }
    return 0.5 * (out + out.adjoint());
}

CMatrix apply_laplacian(const MatrixConfiguration& cfg, const CMatrix& y) {
    if (y.rows() != cfg.hilbert_dim() || y.cols() != cfg.hilbert_dim()) {
        throw ValidationError("apply_laplacian: matrix dimension mismatch");
    }
    CMatrix out = CMatrix::Zero(y.rows(), y.cols());
    for (const auto& xa : cfg.observables()) {
        const CMatrix inner = commutator(xa.matrix(), y);
        out += commutator(xa.matrix(), inner);
    }
    return out;
}

std::vector<HermitianMatrix> hermitian_basis(Eigen::Index n) {
    std::vector<HermitianMatrix> out;
    out.reserve(static_cast<std::size_t>(n * n));
    out.push_back(HermitianMatrix::hermitian_part(CMatrix::Identity(n, n) / std::sqrt(double(n))));
    if (n < 2) return out;
    for (const auto& l : gell_mann(n)) {
        out.push_back(HermitianMatrix::hermitian_part(l.matrix() / std::sqrt(2.0)));
    }
    return out;
}

LaplacianAnalysis laplacian_spectrum(const MatrixConfiguration& cfg) {
    const Eigen::Index n = cfg.hilbert_dim();
    const Eigen::Index nn = n * n;
    LaplacianAnalysis out;
    out.dim = n;
    out.eigenvalues = RVector::Zero(nn);
    const auto basis = hermitian_basis(n);
    out.eigenmaps.push_back(basis.front());
    if (n == 1) return out;

    // The Laplacian maps Hermitian matrices to Hermitian matrices, so on the
    // traceless Hermitian subspace it is a real symmetric operator. Diagonalizing
    // it there yields Hermitian eigenmaps directly.
    CMatrix b(nn, nn - 1);
    for (Eigen::Index k = 1; k < nn; ++k) {
        b.col(k - 1) = Eigen::Map<const CVector>(basis[static_cast<std::size_t>(k)].matrix().data(), nn);
    }
    const CMatrix lap = matrix_laplacian(cfg);
    const CMatrix lb = lap * b;
    RMatrix reduced = (b.adjoint() * lb).real();
    reduced = 0.5 * (reduced + reduced.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<RMatrix> solver(reduced);
    if (solver.info() != Eigen::Success) {
        throw NumericError("laplacian_spectrum: eigensolver did not converge");
    }
    out.eigenvalues.tail(nn - 1) = solver.eigenvalues();
    for (Eigen::Index k = 0; k < nn - 1; ++k) {
        RVector coeff = solver.eigenvectors().col(k);
        Eigen::Index pivot = 0;
        coeff.cwiseAbs().maxCoeff(&pivot);
        if (coeff(pivot) < 0.0) coeff = -coeff;
        CVector flat = b * coeff.cast<Complex>();
        out.eigenmaps.push_back(
            HermitianMatrix::hermitian_part(Eigen::Map<const CMatrix>(flat.data(), n, n)));
    }
    return out;
}

double default_zero_tolerance(const LaplacianAnalysis& analysis) {
    std::vector<double> v(analysis.eigenvalues.data(),
                          analysis.eigenvalues.data() + analysis.eigenvalues.size());
    if (v.empty()) return 0.0;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
    double median = v[v.size() / 2];
    if (v.size() % 2 == 0) {
        const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2));
        median = 0.5 * (median + lower);
    }
    return 1e-3 * median;
}

std::size_t count_zero_modes(const LaplacianAnalysis& analysis, double tol_zero) {
    return static_cast<std::size_t>((analysis.eigenvalues.array() <= tol_zero).count());
}

ComponentDecomposition zero_mode_components(const LaplacianAnalysis& analysis, double tol_zero) {
    const Eigen::Index n = analysis.dim;
    const std::size_t k = std::max<std::size_t>(1, count_zero_modes(analysis, tol_zero));
    ComponentDecomposition out;
    if (k == 1) {
        out.projectors.push_back(HermitianMatrix::identity(n));
        return out;
    }
    if (static_cast<Eigen::Index>(k) > n) {
        throw NonProjectorError("zero_mode_components: " + std::to_string(k) +
                                " zero modes exceed the Hilbert-space dimension " +
                                std::to_string(n));
    }

    // fixed stream so the decomposition is reproducible
    std::mt19937_64 rng(0x51a7e5eedULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < k; ++i) z += normal(rng) * analysis.eigenmaps[i].matrix();
    const EigenDecomposition eig = hermitian_eig(HermitianMatrix::hermitian_part(z));

    // split the sorted spectrum of z at its k-1 widest gaps
    std::vector<Eigen::Index> gaps(static_cast<std::size_t>(n - 1));
    std::iota(gaps.begin(), gaps.end(), Eigen::Index{0});
    std::sort(gaps.begin(), gaps.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ga = eig.eigenvalues(a + 1) - eig.eigenvalues(a);
        const double gb = eig.eigenvalues(b + 1) - eig.eigenvalues(b);
        return ga != gb ? ga > gb : a < b;
    });
    std::vector<Eigen::Index> cuts(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(k - 1));
    std::sort(cuts.begin(), cuts.end());

    const auto project = [&](const CMatrix& p) {
        CMatrix acc = CMatrix::Zero(n, n);
        for (std::size_t i = 0; i < k; ++i) {
            const CMatrix& y = analysis.eigenmaps[i].matrix();
            acc += frobenius_inner(y, p).real() * y;
        }
        return acc;
    };

    std::vector<std::pair<Eigen::Index, HermitianMatrix>> found;
    Eigen::Index begin = 0;
    for (std::size_t c = 0; c <= cuts.size(); ++c) {
        const Eigen::Index end = c < cuts.size() ? cuts[c] + 1 : n;
        const auto vecs = eig.eigenvectors.middleCols(begin, end - begin);
        const CMatrix raw = vecs * vecs.adjoint();
        const HermitianMatrix p = HermitianMatrix::hermitian_part(project(raw));
        const double defect = (p.matrix() * p.matrix() - p.matrix()).norm();
        if (defect > 1e-4) {
            throw NonProjectorError("zero_mode_components: recovered element " + std::to_string(c) +
                                    " is not idempotent (||P^2 - P|| = " + std::to_string(defect) +
                                    ")");
        }
        // order blocks by the first basis vector they contain
        Eigen::Index first = 0;
        p.matrix().diagonal().real().maxCoeff(&first);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (p(i, i).real() > 0.5) {
                first = i;
                break;
            }
        }
        found.emplace_back(first, p);
        begin = end;
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    CMatrix total = CMatrix::Zero(n, n);
    for (auto& [key, p] : found) {
        total += p.matrix();
        out.projectors.push_back(std::move(p));
    }
    out.residual = (total - CMatrix::Identity(n, n)).norm();
    return out;
}

WeylWindow default_weyl_window(const LaplacianAnalysis& analysis) {
    const auto n = static_cast<std::size_t>(analysis.dim);
    return {n, static_cast<std::size_t>(std::floor(0.75 * static_cast<double>(n * n)))};
}

WeylFit weyl_dimension(const LaplacianAnalysis& analysis, std::optional<WeylWindow> window,
                       std::optional<double> tol_zero) {
    const double tol = tol_zero.value_or(default_zero_tolerance(analysis));
    std::vector<double> nonzero;
    for (Eigen::Index i = 0; i < analysis.eigenvalues.size(); ++i) {
        if (analysis.eigenvalues(i) > tol) nonzero.push_back(analysis.eigenvalues(i));
    }
    std::sort(nonzero.begin(), nonzero.end());
    WeylFit fit;
    fit.zero_modes = static_cast<std::size_t>(analysis.eigenvalues.size()) - nonzero.size();
    fit.window = window.value_or(default_weyl_window(analysis));
    fit.window.hi = std::min(fit.window.hi, nonzero.size());
    if (fit.window.hi < fit.window.lo + 10) {
        throw FitError("weyl_dimension: fewer than 10 eigenvalues in the fit window [" +
                       std::to_string(fit.window.lo) + ", " + std::to_string(fit.window.hi) + ")");
    }

    // points (log lambda_i, log #{eigenvalues <= lambda_i}), counting zero modes
    const std::size_t m = fit.window.hi - fit.window.lo;
    RVector lx(static_cast<Eigen::Index>(m));
    RVector ly(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double lambda = nonzero[fit.window.lo + i];
        const auto upto = std::upper_bound(nonzero.begin(), nonzero.end(), lambda * (1.0 + 1e-9));
        const auto count = static_cast<double>(fit.zero_modes) +
                           static_cast<double>(std::distance(nonzero.begin(), upto));
        lx(static_cast<Eigen::Index>(i)) = std::log(lambda);
        ly(static_cast<Eigen::Index>(i)) = std::log(count);
    }
    const double mx = lx.mean();
    const double my = ly.mean();
    const double sxx = (lx.array() - mx).square().sum();
    if (!(sxx > 1e-12)) {
        throw FitError("weyl_dimension: eigenvalues in the fit window are all equal");
    }
    fit.slope = ((lx.array() - mx) * (ly.array() - my)).sum() / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.dimension = 2.0 * fit.slope;
    return fit;
}

RMatrix eigenmap_overlap(const LaplacianAnalysis& analysis, const MatrixConfiguration& cfg) {
    if (cfg.hilbert_dim() != analysis.dim) {
        throw ValidationError("eigenmap_overlap: Hilbert-space dimension mismatch");
    }
    const auto modes = static_cast<Eigen::Index>(analysis.eigenmaps.size());
    RMatrix b(cfg.feature_dim(), modes);
    for (Eigen::Index a = 0; a < cfg.feature_dim(); ++a) {
        for (Eigen::Index i = 0; i < modes; ++i) {
            b(a, i) = frobenius_inner(analysis.eigenmaps[static_cast<std::size_t>(i)].matrix(),
                                      cfg[static_cast<std::size_t>(a)].matrix())
                          .real();
        }
    }
    return b;
}

MatrixConfiguration project_observables(const MatrixConfiguration& cfg,
                                        const LaplacianAnalysis& analysis, std::size_t n) {
    if (n < 1 || n > analysis.eigenmaps.size()) {
        throw ValidationError("project_observables: n must lie in [1, N^2]");
    }
    if (cfg.hilbert_dim() != analysis.dim) {
        throw ValidationError("project_observables: Hilbert-space dimension mismatch");
    }
    std::vector<CMatrix> out;
    for (const auto& xa : cfg.observables()) {
        CMatrix acc = CMatrix::Zero(analysis.dim, analysis.dim);
        for (std::size_t i = 0; i < n; ++i) {
            const CMatrix& y = analysis.eigenmaps[i].matrix();
            acc += frobenius_inner(y, xa.matrix()).real() * y;
        }
        out.push_back(std::move(acc));
    }
    return make_configuration(out);
}

CMatrix reduced_laplacian(const LaplacianAnalysis& analysis, std::size_t n) {
    if (n < 1 || n >= analysis.eigenmaps.size()) {
        throw ValidationError("reduced_laplacian: n must lie in [1, N^2 - 1]");
    }
    std::vector<HermitianMatrix> modes(analysis.eigenmaps.begin() + 1,
                                       analysis.eigenmaps.begin() + 1 + static_cast<std::ptrdiff_t>(n));
    return matrix_laplacian(MatrixConfiguration(std::move(modes)));
}

double laplacian_energy(const MatrixConfiguration& cfg, const HermitianMatrix& y) {
    if (y.dim() != cfg.hilbert_dim()) throw ValidationError("laplacian_energy: dimension mismatch");
    double e = 0.0;
    for (const auto& xa : cfg.observables()) e += commutator(xa, y).squaredNorm();
    return e;
}

Classification classify_configuration(const MatrixConfiguration& cfg) {
    if (cfg.feature_dim() < 2) throw ValidationError("classify_configuration: requires D >= 2");
    Classification out;
    const auto& x = cfg.observables();
    for (std::size_t a = 0; a < x.size(); ++a) {
        for (std::size_t b = a + 1; b < x.size(); ++b) {
            const CMatrix prod = x[a].matrix() * x[b].matrix();
            const double denom = prod.norm();
            if (denom == 0.0) continue;
            const double comm = (prod - x[b].matrix() * x[a].matrix()).norm();
            out.ratio = std::max(out.ratio, comm / denom);
        }
    }
    if (out.ratio <= 1e-6) {
        out.tag = ConfigurationClass::classical;
    } else if (out.ratio >= 1.0) {
        out.tag = ConfigurationClass::deep_quantum;
    } else {
        out.tag = ConfigurationClass::almost_commutative;
    }
    return out;
}

double observable_entropy(const HermitianMatrix& y) {
    const double norm = y.matrix().norm();
    if (std::abs(norm - 1.0) > 1e-8) {
        throw ValidationError("observable_entropy: expected ||y||_2 = 1, got " + std::to_string(norm));
    }
    const EigenDecomposition eig = hermitian_eig(y);
    double s = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double mu = eig.eigenvalues(i) * eig.eigenvalues(i);
        if (mu > 0.0) s -= mu * std::log(mu);
    }
    return s;
}

double nonlocal_correlation(const std::vector<QuasiCoherentState>& states,
                            const HermitianMatrix& y) {
    if (states.empty()) throw ValidationError("nonlocal_correlation: no states");
    const Eigen::Index n = y.dim();
    CMatrix rho = CMatrix::Zero(n, n);
    for (const auto& s : states) {
        if (s.vector.size() != n) throw ValidationError("nonlocal_correlation: state dimension mismatch");
        rho += s.vector * s.vector.adjoint();
    }
    rho /= static_cast<double>(states.size());
    const CMatrix ry = rho * y.matrix();
    return (ry * ry).trace().real();
}

}  // namespace qgeom
