#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qgeom/configuration.hpp"

namespace qgeom {

struct TrainingConfig {
    Eigen::Index hilbert_dim = 8;
    double fluctuation_weight = 0.1;  // w
    double learning_rate = 1e-2;
    std::size_t epochs = 20000;
    std::size_t batch_size = 100;
    std::uint64_t seed = 0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    bool deterministic_reduction = true;

    /// Throws ValidationError unless w > 0, learning_rate > 0, batch_size >= 1, N >= 1.
    void validate() const;
};

struct TrainingReport {
    std::vector<double> epoch_loss;  // mean per-point loss of each epoch
    double final_loss = 0.0;         // mean per-point loss of the returned configuration
    std::size_t degenerate_skips = 0;
    double wall_seconds = 0.0;
};

/// Loss value with the number of rows left out.
struct LossValue {
    double value = 0.0;
    std::size_t skipped = 0;
};

struct LossGradient {
    std::vector<HermitianMatrix> gradient;  // G_b with dL = sum_b Tr(G_b dX_b)
    double loss = 0.0;
    std::size_t skipped = 0;
};

/// sum_x d^2(x) + w sigma^2(x) over the rows of `batch`; degenerate rows are skipped.
LossValue loss(const MatrixConfiguration& cfg, const RMatrix& batch, double w);

/// Gradient of `loss` by first-order perturbation theory. Rows whose gap is
/// at most 1e-6 * max(1, lambda_max) are skipped and counted.
LossGradient loss_gradient(const MatrixConfiguration& cfg, const RMatrix& batch, double w);

/// Gradient with respect to the independent real parameters of each X_b, in the
/// order (diag re; for i < j: re, im) per observable. d L / d Re X_ij etc.
RVector parameter_gradient(const std::vector<HermitianMatrix>& gradient);

/// Random Hermitian start: a traceless GUE draw scaled to ||.||_2 / sqrt(N) =
/// std of feature a, shifted by mean(feature a) * 1.
MatrixConfiguration initialize(Eigen::Index n, Eigen::Index d, const RMatrix& data,
                               std::uint64_t seed);

/// Elementwise Adam on the real and imaginary parts of every observable. The
/// update is symmetric under Hermitian conjugation, so iterates stay Hermitian.
class AdamOptimizer {
public:
    AdamOptimizer(std::size_t count, Eigen::Index n, double lr, double beta1, double beta2,
                  double epsilon);

    void step(std::vector<CMatrix>& params, const std::vector<HermitianMatrix>& grads);
    std::size_t iterations() const noexcept { return t_; }

private:
    double lr_, beta1_, beta2_, eps_;
    std::size_t t_ = 0;
    std::vector<Eigen::ArrayXd> m_;
    std::vector<Eigen::ArrayXd> v_;
};

struct TrainingCallbacks {
    /// Called after every epoch with (epoch index, mean loss).
    std::function<void(std::size_t, double)> on_epoch;
    /// Called every `checkpoint_every` epochs with the current configuration.
    std::function<void(std::size_t, const MatrixConfiguration&)> on_checkpoint;
    std::size_t checkpoint_every = 0;
};

struct TrainingResult {
    MatrixConfiguration configuration;
    TrainingReport report;
};

/// Mini-batch Adam on the loss: per batch, recompute quasi-coherent states,
/// evaluate loss and gradient, update every X_a. Throws NumericError on a
/// non-finite loss.
TrainingResult train(const RMatrix& data, const TrainingConfig& tc,
                     const TrainingCallbacks& callbacks = {});

/// Same loop starting from a given configuration.
TrainingResult train_from(const MatrixConfiguration& start, const RMatrix& data,
                          const TrainingConfig& tc, const TrainingCallbacks& callbacks = {});

}  // namespace qgeom
