#include "qgeom/configuration.hpp"

#include <cmath>
#include <string>

#include "qgeom/errors.hpp"

namespace qgeom {

MatrixConfiguration::MatrixConfiguration(std::vector<HermitianMatrix> observables)
    : obs_(std::move(observables)) {
    if (obs_.empty()) throw ValidationError("MatrixConfiguration: need at least one observable");
    n_ = obs_.front().dim();
    if (n_ < 1) throw ValidationError("MatrixConfiguration: hilbert_dim must be >= 1");
    for (std::size_t a = 0; a < obs_.size(); ++a) {
        if (obs_[a].dim() != n_) {
            throw ValidationError("MatrixConfiguration: observable " + std::to_string(a) +
                                  " has dim " + std::to_string(obs_[a].dim()) + ", expected " +
                                  std::to_string(n_));
        }
    }

    const Eigen::Index d = feature_dim();
    half_sq_ = CMatrix::Zero(n_, n_);
    stacked_.resize(n_ * n_, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        const CMatrix& x = obs_[static_cast<std::size_t>(a)].matrix();
        half_sq_.noalias() += 0.5 * x * x;
        stacked_.col(a) = Eigen::Map<const CVector>(x.data(), n_ * n_);
    }
    half_sq_ = 0.5 * (half_sq_ + half_sq_.adjoint()).eval();
}

CMatrix MatrixConfiguration::combination(const RVector& c) const {
    if (c.size() != feature_dim()) {
        throw ValidationError("combination: expected " + std::to_string(feature_dim()) +
                              " coefficients, got " + std::to_string(c.size()));
    }
    CVector flat = stacked_ * c.cast<Complex>();
    return Eigen::Map<const CMatrix>(flat.data(), n_, n_);
}

MatrixConfiguration make_configuration(std::span<const CMatrix> matrices) {
    std::vector<HermitianMatrix> obs;
    obs.reserve(matrices.size());
    for (const auto& m : matrices) obs.push_back(HermitianMatrix::hermitian_part(m));
    return MatrixConfiguration(std::move(obs));
}

MatrixConfiguration direct_sum(std::span<const MatrixConfiguration> parts) {
    if (parts.empty()) throw ValidationError("direct_sum: no parts");
    const Eigen::Index d = parts.front().feature_dim();
    Eigen::Index total = 0;
    for (const auto& p : parts) {
        if (p.feature_dim() != d) throw ValidationError("direct_sum: feature_dim mismatch");
        total += p.hilbert_dim();
    }
    std::vector<CMatrix> blocks(static_cast<std::size_t>(d), CMatrix::Zero(total, total));
    Eigen::Index offset = 0;
    for (const auto& p : parts) {
        const Eigen::Index n = p.hilbert_dim();
        for (Eigen::Index a = 0; a < d; ++a) {
            blocks[static_cast<std::size_t>(a)].block(offset, offset, n, n) =
                p[static_cast<std::size_t>(a)].matrix();
        }
        offset += n;
    }
    return make_configuration(blocks);
}

MatrixConfiguration translate(const MatrixConfiguration& cfg, const RVector& shift) {
    if (shift.size() != cfg.feature_dim()) throw ValidationError("translate: shift length mismatch");
    std::vector<CMatrix> x;
    for (Eigen::Index a = 0; a < cfg.feature_dim(); ++a) {
        CMatrix m = cfg[static_cast<std::size_t>(a)].matrix();
        m.diagonal().array() += shift(a);
        x.push_back(std::move(m));
    }
    return make_configuration(x);
}

double feature_scale(const MatrixConfiguration& cfg) {
    const Eigen::Index n = cfg.hilbert_dim();
    double sum = 0.0;
    for (const auto& x : cfg.observables()) {
        const Complex mean = x.matrix().trace() / static_cast<double>(n);
        sum += (x.matrix() - mean * CMatrix::Identity(n, n)).squaredNorm();
    }
    return std::sqrt(sum / static_cast<double>(n));
}

}  // namespace qgeom
