#include "qgeom/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "qgeom/errors.hpp"
#include "qgeom/parallel.hpp"
#include "qgeom/states.hpp"

namespace qgeom {

void TrainingConfig::validate() const {
    if (!(fluctuation_weight > 0.0)) throw ValidationError("TrainingConfig: w must be > 0");
    if (!(learning_rate > 0.0)) throw ValidationError("TrainingConfig: learning_rate must be > 0");
    if (batch_size < 1) throw ValidationError("TrainingConfig: batch_size must be >= 1");
    if (hilbert_dim < 1) throw ValidationError("TrainingConfig: hilbert_dim must be >= 1");
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
        throw ValidationError("TrainingConfig: Adam betas must lie in [0, 1)");
    }
}

LossValue loss(const MatrixConfiguration& cfg, const RMatrix& batch, double w) {
    if (batch.rows() > 0 && batch.cols() != cfg.feature_dim()) {
        throw ValidationError("loss: batch width does not match feature_dim");
    }
    const Cloud cloud = qcml_cloud(cfg, batch);
    LossValue out;
    out.skipped = cloud.degenerate_rows.size();
    for (const auto& p : cloud.points) out.value += p.displacement_sq + w * p.variance;
    return out;
}

namespace {

// Per-row quantities entering the batch gradient
//   G_b = {X_b, Q} + alpha_b rho + beta_b tau
// with rho = |psi><psi|, tau = |psi><phi| + |phi><psi|, phi = R B |psi>,
// B = sum_a c_a X_a, c_a = 2(<X_a> - x_a), R the reduced resolvent, and
//   Q = (1-w)/2 tau + w rho,  alpha_b = (1-w) c_b - 2 w x_b,  beta_b = -(1-w) x_b.
struct RowTerms {
    bool used = false;
    double loss = 0.0;
    CVector psi;
    CVector phi;
    RVector mean;
};

RowTerms row_terms(const MatrixConfiguration& cfg, const RVector& x, double w) {
    const Eigen::Index n = cfg.hilbert_dim();
    const Eigen::Index d = cfg.feature_dim();
    CMatrix h = cfg.half_square_sum() - cfg.combination(x);
    h.diagonal().array() += Complex(0.5 * x.squaredNorm(), 0.0);
    const EigenDecomposition eig = hermitian_eig_trusted(h);

    RowTerms out;
    const double top = eig.eigenvalues(n - 1);
    if (n > 1 && eig.eigenvalues(1) - eig.eigenvalues(0) <= 1e-6 * std::max(1.0, top)) return out;

    out.psi = eig.eigenvectors.col(0);
    CMatrix u(n, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        u.col(a).noalias() = cfg[static_cast<std::size_t>(a)].matrix() * out.psi;
    }
    out.mean = (out.psi.adjoint() * u).real().transpose();
    const RVector second = u.colwise().squaredNorm().transpose();
    const RVector shift = out.mean - x;
    const double d2 = shift.squaredNorm();
    const double s2 = (second.array() - out.mean.array().square()).sum();
    out.loss = d2 + w * s2;

    const RVector c = 2.0 * shift;
    const CVector b_psi = u * c.cast<Complex>();
    out.phi = CVector::Zero(n);
    for (Eigen::Index k = 1; k < n; ++k) {
        const auto vk = eig.eigenvectors.col(k);
        out.phi += vk * (vk.dot(b_psi) / (eig.eigenvalues(0) - eig.eigenvalues(k)));
    }
    out.used = true;
    return out;
}

}  // namespace

LossGradient loss_gradient(const MatrixConfiguration& cfg, const RMatrix& batch, double w) {
    const Eigen::Index n = cfg.hilbert_dim();
    const Eigen::Index d = cfg.feature_dim();
    if (batch.rows() > 0 && batch.cols() != d) {
        throw ValidationError("loss_gradient: batch width does not match feature_dim");
    }
    const auto rows = static_cast<std::size_t>(batch.rows());
    std::vector<RowTerms> terms(rows);
    parallel_for(rows, [&](std::size_t p) {
        terms[p] = row_terms(cfg, batch.row(static_cast<Eigen::Index>(p)).transpose(), w);
    });

    LossGradient out;
    CMatrix q_sum = CMatrix::Zero(n, n);
    CMatrix rho_cols = CMatrix::Zero(n * n, batch.rows());
    CMatrix tau_cols = CMatrix::Zero(n * n, batch.rows());
    RMatrix alpha = RMatrix::Zero(batch.rows(), d);
    RMatrix beta = RMatrix::Zero(batch.rows(), d);
    for (std::size_t p = 0; p < rows; ++p) {
        const RowTerms& t = terms[p];
        if (!t.used) {
            ++out.skipped;
            continue;
        }
        const auto col = static_cast<Eigen::Index>(p);
        const CMatrix rho = t.psi * t.psi.adjoint();
        const CMatrix cross = t.psi * t.phi.adjoint();
        const CMatrix tau = cross + cross.adjoint();
        q_sum += 0.5 * (1.0 - w) * tau + w * rho;
        rho_cols.col(col) = Eigen::Map<const CVector>(rho.data(), n * n);
        tau_cols.col(col) = Eigen::Map<const CVector>(tau.data(), n * n);
        const RVector x = batch.row(col).transpose();
        alpha.row(col) = ((1.0 - w) * 2.0 * (t.mean - x) - 2.0 * w * x).transpose();
        beta.row(col) = (-(1.0 - w) * x).transpose();
        out.loss += t.loss;
    }

    const CMatrix stacked = rho_cols * alpha.cast<Complex>() + tau_cols * beta.cast<Complex>();
    out.gradient.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index b = 0; b < d; ++b) {
        const CMatrix& xb = cfg[static_cast<std::size_t>(b)].matrix();
        CMatrix g = xb * q_sum + q_sum * xb;
        g += Eigen::Map<const CMatrix>(stacked.col(b).data(), n, n);
        out.gradient.push_back(HermitianMatrix::hermitian_part(g));
    }
    return out;
}

RVector parameter_gradient(const std::vector<HermitianMatrix>& gradient) {
    if (gradient.empty()) return {};
    const Eigen::Index n = gradient.front().dim();
    const Eigen::Index per = n * n;
    RVector out(per * static_cast<Eigen::Index>(gradient.size()));
    Eigen::Index k = 0;
    for (const auto& g : gradient) {
        for (Eigen::Index i = 0; i < n; ++i) out(k++) = g(i, i).real();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                out(k++) = 2.0 * g(i, j).real();
                out(k++) = 2.0 * g(i, j).imag();
            }
        }
    }
    return out;
}

MatrixConfiguration initialize(Eigen::Index n, Eigen::Index d, const RMatrix& data,
                               std::uint64_t seed) {
    if (n < 1 || d < 1) throw ValidationError("initialize: N and D must be >= 1");
    if (data.rows() < 1 || data.cols() != d) {
        throw ValidationError("initialize: data must be non-empty with D columns");
    }
    const RVector mean = data.colwise().mean().transpose();
    const RVector std_dev =
        ((data.rowwise() - mean.transpose()).array().square().colwise().sum() /
         static_cast<double>(data.rows()))
            .sqrt()
            .transpose();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<CMatrix> x;
    x.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index a = 0; a < d; ++a) {
        CMatrix g(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
        }
        CMatrix h = 0.5 * (g + g.adjoint());
        h.diagonal().array() -= h.trace() / static_cast<double>(n);
        const double norm = h.norm();
        CMatrix xa = CMatrix::Zero(n, n);
        if (std_dev(a) > 0.0 && norm > 0.0) {
            xa = h * (std_dev(a) * std::sqrt(static_cast<double>(n)) / norm);
        }
        xa.diagonal().array() += mean(a);
        x.push_back(std::move(xa));
    }
    return make_configuration(x);
}

AdamOptimizer::AdamOptimizer(std::size_t count, Eigen::Index n, double lr, double beta1,
                             double beta2, double epsilon)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(epsilon) {
    m_.assign(count, Eigen::ArrayXd::Zero(2 * n * n));
    v_.assign(count, Eigen::ArrayXd::Zero(2 * n * n));
}

void AdamOptimizer::step(std::vector<CMatrix>& params, const std::vector<HermitianMatrix>& grads) {
    if (params.size() != m_.size() || grads.size() != m_.size()) {
        throw ValidationError("AdamOptimizer::step: parameter count mismatch");
    }
    ++t_;
    const double bias1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bias2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t a = 0; a < params.size(); ++a) {
        const Eigen::Index len = m_[a].size();
        Eigen::Map<Eigen::ArrayXd> p(reinterpret_cast<double*>(params[a].data()), len);
        Eigen::Map<const Eigen::ArrayXd> g(reinterpret_cast<const double*>(grads[a].matrix().data()),
                                           len);
        m_[a] = beta1_ * m_[a] + (1.0 - beta1_) * g;
        v_[a] = beta2_ * v_[a] + (1.0 - beta2_) * g.square();
        p -= lr_ * (m_[a] / bias1) / ((v_[a] / bias2).sqrt() + eps_);
    }
}

TrainingResult train(const RMatrix& data, const TrainingConfig& tc,
                     const TrainingCallbacks& callbacks) {
    tc.validate();
    if (data.rows() < 1) throw ValidationError("train: empty dataset");
    const MatrixConfiguration start = initialize(tc.hilbert_dim, data.cols(), data, tc.seed);
    return train_from(start, data, tc, callbacks);
}

TrainingResult train_from(const MatrixConfiguration& start, const RMatrix& data,
                          const TrainingConfig& tc, const TrainingCallbacks& callbacks) {
    tc.validate();
    if (data.rows() < 1) throw ValidationError("train: empty dataset");
    if (data.cols() != start.feature_dim()) {
        throw ValidationError("train: data width does not match the configuration");
    }
    const auto clock_start = std::chrono::steady_clock::now();
    const Eigen::Index n = start.hilbert_dim();
    const auto t_rows = static_cast<std::size_t>(data.rows());
    const std::size_t batch = std::min(tc.batch_size, t_rows);
    const double w = tc.fluctuation_weight;

    std::vector<CMatrix> params;
    for (const auto& x : start.observables()) params.push_back(x.matrix());
    AdamOptimizer adam(params.size(), n, tc.learning_rate, tc.adam_beta1, tc.adam_beta2,
                       tc.adam_epsilon);
    MatrixConfiguration cfg = start;

    std::mt19937_64 shuffle_rng(tc.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Eigen::Index> order(t_rows);
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    TrainingReport report;
    report.epoch_loss.reserve(tc.epochs);
    RMatrix rows(static_cast<Eigen::Index>(batch), data.cols());
    for (std::size_t epoch = 0; epoch < tc.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double epoch_sum = 0.0;
        std::size_t epoch_used = 0;
        for (std::size_t begin = 0; begin < t_rows; begin += batch) {
            const std::size_t count = std::min(batch, t_rows - begin);
            rows.resize(static_cast<Eigen::Index>(count), data.cols());
            for (std::size_t r = 0; r < count; ++r) {
                rows.row(static_cast<Eigen::Index>(r)) = data.row(order[begin + r]);
            }
            LossGradient lg = loss_gradient(cfg, rows, w);
            report.degenerate_skips += lg.skipped;
            if (!std::isfinite(lg.loss)) {
                throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch) +
                                   ", batch starting at " + std::to_string(begin));
            }
            const std::size_t used = count - lg.skipped;
            if (used == 0) continue;
            std::vector<HermitianMatrix> scaled;
            scaled.reserve(lg.gradient.size());
            for (const auto& g : lg.gradient) {
                scaled.push_back(HermitianMatrix::hermitian_part(g.matrix() / static_cast<double>(used)));
            }
            adam.step(params, scaled);
            cfg = make_configuration(params);
            epoch_sum += lg.loss;
            epoch_used += used;
        }
        const double mean = epoch_used ? epoch_sum / static_cast<double>(epoch_used)
                                       : std::numeric_limits<double>::quiet_NaN();
        if (!std::isfinite(mean)) {
            throw NumericError("train: non-finite epoch loss at epoch " + std::to_string(epoch));
        }
        report.epoch_loss.push_back(mean);
        if (callbacks.on_epoch) callbacks.on_epoch(epoch, mean);
        if (callbacks.on_checkpoint && callbacks.checkpoint_every > 0 &&
            (epoch + 1) % callbacks.checkpoint_every == 0) {
            callbacks.on_checkpoint(epoch + 1, cfg);
        }
    }

    const LossValue final_loss = loss(cfg, data, w);
    const std::size_t used = t_rows - final_loss.skipped;
    report.final_loss = used ? final_loss.value / static_cast<double>(used) : 0.0;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return {std::move(cfg), std::move(report)};
}

}  // namespace qgeom
