#include <doctest.h>

#include <cmath>

#include "qgeom/errors.hpp"
#include "qgeom/reference.hpp"
#include "qgeom/states.hpp"
#include "qgeom/training.hpp"
#include "test_support.hpp"

using namespace qgeom;

namespace {

/// Loss recomputed from scratch: ground state, <X>, <X^2>, then d^2 + w sigma^2.
double direct_loss(const std::vector<CMatrix>& x, const RMatrix& batch, double w) {
    const Eigen::Index n = x.front().rows();
    double total = 0.0;
    for (Eigen::Index t = 0; t < batch.rows(); ++t) {
        CMatrix h = CMatrix::Zero(n, n);
        for (std::size_t a = 0; a < x.size(); ++a) {
            CMatrix s = x[a];
            s.diagonal().array() -= batch(t, static_cast<Eigen::Index>(a));
            h += 0.5 * s * s;
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
        const CVector psi = es.eigenvectors().col(0);
        for (std::size_t a = 0; a < x.size(); ++a) {
            const double mean = psi.dot(x[a] * psi).real();
            const double sq = psi.dot(x[a] * (x[a] * psi)).real();
            const double d = mean - batch(t, static_cast<Eigen::Index>(a));
            total += d * d + w * (sq - mean * mean);
        }
    }
    return total;
}

/// Central differences over the independent real parameters, same ordering as
/// parameter_gradient.
RVector finite_difference(const MatrixConfiguration& cfg, const RMatrix& batch, double w,
                          double h) {
    std::vector<CMatrix> x;
    for (const auto& m : cfg.observables()) x.push_back(m.matrix());
    const Eigen::Index n = cfg.hilbert_dim();
    RVector out(n * n * cfg.feature_dim());
    Eigen::Index k = 0;
    const auto probe = [&](std::size_t a, Eigen::Index i, Eigen::Index j, Complex dir) {
        auto plus = x, minus = x;
        plus[a](i, j) += h * dir;
        minus[a](i, j) -= h * dir;
        if (i != j) {
            plus[a](j, i) += h * std::conj(dir);
            minus[a](j, i) -= h * std::conj(dir);
        }
        return (direct_loss(plus, batch, w) - direct_loss(minus, batch, w)) / (2.0 * h);
    };
    for (std::size_t a = 0; a < x.size(); ++a) {
        for (Eigen::Index i = 0; i < n; ++i) out(k++) = probe(a, i, i, 1.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                out(k++) = probe(a, i, j, 1.0);
                out(k++) = probe(a, i, j, Complex(0.0, 1.0));
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("loss of the spin-1/2 sphere at the north pole") {
    const auto cfg = fuzzy_sphere(SpinLabel(1), 1.0);
    RMatrix batch(1, 3);
    batch << 0, 0, 1;
    CHECK(loss(cfg, batch, 0.1).value == doctest::Approx(0.30).epsilon(1e-12));
}

TEST_CASE("loss with w = 1 is twice the summed ground energy") {
    std::mt19937_64 rng(31);
    const auto cfg = test::random_configuration(rng, 4, 3);
    RMatrix batch(12, 3);
    for (Eigen::Index t = 0; t < 12; ++t) batch.row(t) = test::random_point(rng, 3).transpose();
    double energies = 0.0;
    for (Eigen::Index t = 0; t < 12; ++t) energies += quasi_coherent_state(cfg, batch.row(t).transpose()).energy;
    const double l = loss(cfg, batch, 1.0).value;
    CHECK(std::abs(l - 2.0 * energies) <= 1e-8 * std::abs(l));
}

TEST_CASE("analytic gradient matches central differences") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + trial % 5;
        const Eigen::Index d = 1 + trial % 4;
        const double w = trial % 2 ? 0.1 : 0.7;
        const auto cfg = test::random_configuration(rng, n, d);
        RMatrix batch(3, d);
        for (Eigen::Index t = 0; t < 3; ++t) batch.row(t) = test::random_point(rng, d).transpose();
        const LossGradient g = loss_gradient(cfg, batch, w);
        REQUIRE(g.skipped == 0);
        const RVector analytic = parameter_gradient(g.gradient);
        const RVector numeric = finite_difference(cfg, batch, w, 1e-5);
        const double rel = (analytic - numeric).norm() / std::max(1e-12, numeric.norm());
        CHECK_MESSAGE(rel <= 1e-5, "trial " << trial << " N=" << n << " D=" << d << " rel=" << rel);
        CHECK(g.loss == doctest::Approx(direct_loss([&] {
                  std::vector<CMatrix> x;
                  for (const auto& m : cfg.observables()) x.push_back(m.matrix());
                  return x;
              }(), batch, w)).epsilon(1e-10));
    }
}

TEST_CASE("commuting configuration at its points is a stationary zero of the loss") {
    RMatrix pts(3, 2);
    pts << 0.0, 0.0, 1.0, 0.0, 0.0, 1.0;
    const auto cfg = commuting_config(pts);
    const LossGradient g = loss_gradient(cfg, pts, 0.3);
    CHECK(std::abs(g.loss) < 1e-14);
    for (const auto& gb : g.gradient) CHECK(gb.matrix().norm() < 1e-12);
}

TEST_CASE("optimal fuzzy-sphere scale is stationary along J") {
    std::mt19937_64 rng(4);
    const RMatrix pts = test::unit_sphere_points(rng, 50);
    for (int two_j : {1, 2, 3}) {
        for (double w : {0.1, 0.5}) {
            const SpinLabel s(two_j);
            const double alpha = 1.0 / (s.j() + w);
            const LossGradient g = loss_gradient(fuzzy_sphere(s, alpha), pts, w);
            const auto j = angular_momentum(s);
            double directional = 0.0;
            for (std::size_t a = 0; a < 3; ++a) directional += frobenius_inner(g.gradient[a], j[a]).real();
            CHECK(std::abs(directional) / 50.0 < 1e-6);
        }
    }
}

TEST_CASE("initialization scales each observable to the feature spread") {
    std::mt19937_64 rng(9);
    RMatrix data(400, 3);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index t = 0; t < 400; ++t) data.row(t) << normal(rng), 5.0, 2.0 * normal(rng);
    const auto cfg = initialize(8, 3, data, 42);
    const auto again = initialize(8, 3, data, 42);
    for (std::size_t a = 0; a < 3; ++a) CHECK(cfg[a] == again[a]);
    CHECK((cfg[1].matrix() - 5.0 * CMatrix::Identity(8, 8)).norm() == 0.0);

    // standardized columns: ||X_a||^2 close to N
    RMatrix z = data;
    for (Eigen::Index c : {0, 2}) {
        z.col(c).array() -= z.col(c).mean();
        z.col(c) /= std::sqrt(z.col(c).squaredNorm() / 400.0);
    }
    const auto std_cfg = initialize(8, 3, z, 1);
    CHECK(std_cfg[0].matrix().squaredNorm() == doctest::Approx(8.0).epsilon(0.1));
    CHECK(std_cfg[2].matrix().squaredNorm() == doctest::Approx(8.0).epsilon(0.1));
}

TEST_CASE("Adam keeps iterates Hermitian and training is reproducible") {
    std::mt19937_64 rng(12);
    const RMatrix pts = test::unit_sphere_points(rng, 120);
    TrainingConfig tc;
    tc.hilbert_dim = 3;
    tc.epochs = 15;
    tc.batch_size = 32;
    tc.seed = 5;
    const TrainingResult a = train(pts, tc);
    const TrainingResult b = train(pts, tc);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(a.configuration[k] == b.configuration[k]);
        CHECK(is_hermitian(a.configuration[k].matrix(), 0.0));
    }
    CHECK(a.report.epoch_loss == b.report.epoch_loss);
    CHECK(a.report.epoch_loss.size() == 15);
}

TEST_CASE("training lowers the loss on a sphere") {
    std::mt19937_64 rng(13);
    const RMatrix pts = test::unit_sphere_points(rng, 200);
    TrainingConfig tc;
    tc.hilbert_dim = 2;
    tc.epochs = 300;
    tc.batch_size = 50;
    const TrainingResult r = train(pts, tc);
    const auto& l = r.report.epoch_loss;
    CHECK(l.front() > 1.5 * r.report.final_loss);
    CHECK(r.report.final_loss >= 0.0);
    for (double v : l) CHECK(std::isfinite(v));
    // best scalar fit for spin 1/2 with w = 0.1: w / (j + w) per point
    CHECK(r.report.final_loss == doctest::Approx(0.1 / 0.6).epsilon(0.05));
}

TEST_CASE("single point with N = 1 is fitted exactly") {
    RMatrix pt(1, 2);
    pt << 0.3, -1.2;
    TrainingConfig tc;
    tc.hilbert_dim = 1;
    tc.epochs = 3000;
    tc.batch_size = 1;
    tc.learning_rate = 1e-2;
    const TrainingResult r = train_from(make_configuration(std::vector<CMatrix>{
                                            CMatrix::Constant(1, 1, 2.0), CMatrix::Constant(1, 1, 1.0)}),
                                        pt, tc);
    CHECK(r.configuration[0](0, 0).real() == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(r.configuration[1](0, 0).real() == doctest::Approx(-1.2).epsilon(1e-3));
    CHECK(r.report.final_loss < 1e-6);
}

TEST_CASE("larger fluctuation weight shrinks the commutators") {
    // a learned spin-1/2 sphere is X = J / (j + w), so ||[X_a, X_b]|| scales as (j + w)^-2
    std::mt19937_64 rng(17);
    const RMatrix pts = test::unit_sphere_points(rng, 200);
    const auto commutator_size = [&](double w) {
        TrainingConfig tc;
        tc.hilbert_dim = 2;
        tc.fluctuation_weight = w;
        tc.epochs = 200;
        tc.batch_size = 50;
        tc.seed = 3;
        const auto cfg = train(pts, tc).configuration;
        double total = 0.0;
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = a + 1; b < 3; ++b) total += commutator(cfg[a], cfg[b]).norm();
        }
        return total;
    };
    const double expected = std::pow((0.5 + 0.1) / (0.5 + 0.5), 2);
    CHECK(commutator_size(0.5) / commutator_size(0.1) == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("invalid training settings are rejected") {
    TrainingConfig tc;
    tc.fluctuation_weight = 0.0;
    CHECK_THROWS_AS(tc.validate(), ValidationError);
    tc = {};
    tc.batch_size = 0;
    CHECK_THROWS_AS(tc.validate(), ValidationError);
    tc = {};
    tc.learning_rate = -1.0;
    CHECK_THROWS_AS(tc.validate(), ValidationError);
    CHECK_THROWS_AS(train(RMatrix(0, 3), TrainingConfig{}), ValidationError);
}

TEST_CASE("non-finite data aborts training") {
    RMatrix pts(2, 3);
    pts << 1, 0, 0, std::nan(""), 0, 0;
    TrainingConfig tc;
    tc.hilbert_dim = 2;
    tc.epochs = 2;
    CHECK_THROWS(train(pts, tc));
}
