#include "qgeom/states.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qgeom/errors.hpp"
#include "qgeom/parallel.hpp"

namespace qgeom {

namespace {

void require_point(const MatrixConfiguration& cfg, const RVector& x) {
    if (x.size() != cfg.feature_dim()) {
        throw ValidationError("point has " + std::to_string(x.size()) +
                              " coordinates, configuration has feature_dim " +
                              std::to_string(cfg.feature_dim()));
    }
}

CMatrix hamiltonian_matrix(const MatrixConfiguration& cfg, const RVector& x) {
    CMatrix h = cfg.half_square_sum() - cfg.combination(x);
    h.diagonal().array() += Complex(0.5 * x.squaredNorm(), 0.0);
    return h;
}

}  // namespace

double degeneracy_threshold(const RVector& ascending_eigenvalues) {
    const double top = ascending_eigenvalues.size() ? ascending_eigenvalues.maxCoeff() : 0.0;
    return 1e-8 * std::max(1.0, top);
}

HermitianMatrix displacement_hamiltonian(const MatrixConfiguration& cfg, const RVector& x) {
    require_point(cfg, x);
    return HermitianMatrix::hermitian_part(hamiltonian_matrix(cfg, x));
}

DisplacementSpectrum displacement_spectrum(const MatrixConfiguration& cfg, const RVector& x) {
    require_point(cfg, x);
    const HermitianMatrix h = HermitianMatrix::hermitian_part(hamiltonian_matrix(cfg, x));
    EigenDecomposition eig = hermitian_eig(h);
    DisplacementSpectrum s;
    s.point = x;
    s.eigenvalues = std::move(eig.eigenvalues);
    s.eigenvectors = std::move(eig.eigenvectors);
    s.gap = s.eigenvalues.size() > 1 ? s.eigenvalues(1) - s.eigenvalues(0)
                                     : std::numeric_limits<double>::infinity();
    s.degenerate = s.gap <= degeneracy_threshold(s.eigenvalues);
    return s;
}

QuasiCoherentState quasi_coherent_state(const DisplacementSpectrum& spectrum) {
    return {spectrum.eigenvectors.col(0), spectrum.eigenvalues(0), spectrum.point};
}

QuasiCoherentState quasi_coherent_state(const MatrixConfiguration& cfg, const RVector& x) {
    return quasi_coherent_state(displacement_spectrum(cfg, x));
}

RVector expectations(const MatrixConfiguration& cfg, const CVector& psi) {
    const Eigen::Index n = cfg.hilbert_dim();
    if (psi.size() != n) throw ValidationError("expectations: state dimension mismatch");
    // <psi|X|psi> = sum_ij conj(psi_i) X_ij psi_j = vec(conj(psi) psi^T) . vec(X)
    const CMatrix weights = psi.conjugate() * psi.transpose();
    const Eigen::Map<const CVector> w(weights.data(), n * n);
    return (cfg.stacked().transpose() * w).real();
}

CloudPoint cloud_point(const MatrixConfiguration& cfg, const RVector& x) {
    const DisplacementSpectrum s = displacement_spectrum(cfg, x);
    if (s.degenerate) {
        throw DegenerateStateError("cloud_point: degenerate ground state (gap " +
                                       std::to_string(s.gap) + ")",
                                   s.gap);
    }
    const CVector psi = s.eigenvectors.col(0);
    CloudPoint p;
    p.source = x;
    p.image.resize(cfg.feature_dim());
    p.energy = s.eigenvalues(0);
    for (Eigen::Index a = 0; a < cfg.feature_dim(); ++a) {
        const CVector u = cfg[static_cast<std::size_t>(a)].matrix() * psi;
        const double mean = psi.dot(u).real();
        p.image(a) = mean;
        p.variance += u.squaredNorm() - mean * mean;
        p.displacement_sq += (mean - x(a)) * (mean - x(a));
    }
    return p;
}

Cloud qcml_cloud(const MatrixConfiguration& cfg, const RMatrix& dataset) {
    if (dataset.rows() > 0 && dataset.cols() != cfg.feature_dim()) {
        throw ValidationError("qcml_cloud: dataset has " + std::to_string(dataset.cols()) +
                              " columns, configuration has feature_dim " +
                              std::to_string(cfg.feature_dim()));
    }
    const auto t = static_cast<std::size_t>(dataset.rows());
    std::vector<CloudPoint> slots(t);
    std::vector<char> ok(t, 0);
    parallel_for(t, [&](std::size_t i) {
        try {
            slots[i] = cloud_point(cfg, dataset.row(static_cast<Eigen::Index>(i)).transpose());
            ok[i] = 1;
        } catch (const DegenerateStateError&) {
        }
    });
    Cloud cloud;
    for (std::size_t i = 0; i < t; ++i) {
        if (ok[i]) {
            cloud.points.push_back(std::move(slots[i]));
            cloud.rows.push_back(i);
        } else {
            cloud.degenerate_rows.push_back(i);
        }
    }
    return cloud;
}

Box bounding_box(const RMatrix& data, double inflate) {
    if (data.rows() == 0) throw ValidationError("bounding_box: empty dataset");
    Box box{data.colwise().minCoeff().transpose(), data.colwise().maxCoeff().transpose()};
    const RVector pad = inflate * (box.hi - box.lo);
    box.lo -= pad;
    box.hi += pad;
    return box;
}

Cloud qg_point_cloud(const MatrixConfiguration& cfg, const Box& region, std::size_t n_samples,
                     std::uint64_t seed) {
    const Eigen::Index d = cfg.feature_dim();
    if (region.lo.size() != d || region.hi.size() != d) {
        throw ValidationError("qg_point_cloud: region dimension does not match feature_dim");
    }
    if ((region.hi.array() < region.lo.array()).any()) {
        throw ValidationError("qg_point_cloud: region has hi < lo");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RMatrix samples(static_cast<Eigen::Index>(n_samples), d);
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
        for (Eigen::Index a = 0; a < d; ++a) {
            samples(i, a) = region.lo(a) + (region.hi(a) - region.lo(a)) * unit(rng);
        }
    }
    return qcml_cloud(cfg, samples);
}

double hilbert_dim_estimate(const MatrixConfiguration& cfg, const Box& region,
                            std::size_t n_samples) {
    if (region.lo.size() != cfg.feature_dim() || region.hi.size() != cfg.feature_dim()) {
        throw ValidationError("hilbert_dim_estimate: region dimension does not match feature_dim");
    }
    (void)n_samples;
    const Eigen::Index n = cfg.hilbert_dim();
    return frobenius_inner(CMatrix::Identity(n, n), CMatrix::Identity(n, n)).real();
}

}  // namespace qgeom
