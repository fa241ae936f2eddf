#include <benchmark/benchmark.h>

#include <random>

#include "qgeom/qgeom.hpp"

using namespace qgeom;

namespace {

MatrixConfiguration random_config(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<CMatrix> x;
    for (Eigen::Index a = 0; a < d; ++a) {
        CMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {normal(rng), normal(rng)};
        }
        x.push_back(0.5 * (m + m.adjoint()));
    }
    return make_configuration(x);
}

RMatrix random_rows(Eigen::Index rows, Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    RMatrix out(rows, d);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index a = 0; a < d; ++a) out(i, a) = normal(rng);
    }
    return out;
}

void BM_QuasiCoherentState(benchmark::State& state) {
    const auto n = state.range(0), d = state.range(1);
    const auto cfg = random_config(n, d, 1);
    const RVector x = random_rows(1, d, 2).row(0).transpose();
    for (auto _ : state) benchmark::DoNotOptimize(quasi_coherent_state(cfg, x));
}
BENCHMARK(BM_QuasiCoherentState)->Args({4, 3})->Args({8, 3})->Args({8, 30})->Args({16, 200});

void BM_LossGradientBatch(benchmark::State& state) {
    const auto n = state.range(0), d = state.range(1);
    const auto cfg = random_config(n, d, 3);
    const RMatrix batch = random_rows(100, d, 4);
    for (auto _ : state) benchmark::DoNotOptimize(loss_gradient(cfg, batch, 0.1));
}
BENCHMARK(BM_LossGradientBatch)->Args({4, 3})->Args({8, 3})->Args({8, 30})->Args({8, 200});

void BM_LaplacianSpectrum(benchmark::State& state) {
    const auto cfg = random_config(state.range(0), 3, 5);
    for (auto _ : state) benchmark::DoNotOptimize(laplacian_spectrum(cfg));
}
BENCHMARK(BM_LaplacianSpectrum)->Arg(4)->Arg(8)->Arg(16);

void BM_QuantumGeometricTensor(benchmark::State& state) {
    const auto cfg = random_config(8, state.range(0), 6);
    const RVector x = random_rows(1, state.range(0), 7).row(0).transpose();
    for (auto _ : state) benchmark::DoNotOptimize(qgt(cfg, x));
}
BENCHMARK(BM_QuantumGeometricTensor)->Arg(3)->Arg(30)->Arg(200);

void BM_ChernNumber(benchmark::State& state) {
    const auto cfg = fuzzy_sphere(SpinLabel(3), 1.0);
    const AffineSlice slice = default_slice(3);
    const auto g = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(chern_number(cfg, slice, {0, 0, 0}, 0.5, {g, g}));
}
BENCHMARK(BM_ChernNumber)->Arg(24)->Arg(48);

}  // namespace
BENCHMARK_MAIN();
