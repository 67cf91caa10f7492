#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "formalframes/forms.hpp"
#include "formalframes/jetgroup.hpp"

namespace {

/// Deterministic group element with a diagonally dominant first tensor.
ff::JetGroupElement make_jet(int n, int r, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<ff::LowerTensor> ts;
    for (int k = 1; k <= r; ++k) {
        ff::LowerTensor t(n, k);
        for (auto& e : t.entries()) e = u(rng);
        if (k == 1) {
            for (int i = 0; i < n; ++i) t(i, i) += 3.0;
        }
        ts.push_back(std::move(t));
    }
    return ff::JetGroupElement(n, r, std::move(ts));
}

ff::FrameCoords make_frame(int n, int r, unsigned seed)
{
    return ff::FrameCoords{n, r, "", std::vector<double>(static_cast<std::size_t>(n), 0.1), make_jet(n, r, seed).tensors()};
}

void BM_JetCompose(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const int r = static_cast<int>(state.range(1));
    const ff::JetGroupElement a = make_jet(n, r, 1);
    const ff::JetGroupElement b = make_jet(n, r, 2);
    for (auto _ : state) benchmark::DoNotOptimize(ff::jet_compose(a, b));
}

void BM_JetInverse(benchmark::State& state)
{
    const ff::JetGroupElement a = make_jet(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(ff::jet_inverse(a));
}

void BM_CanonicalForm(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const int r = static_cast<int>(state.range(1));
    const ff::FrameCoords u = make_frame(n, r, 4);
    const ff::BundleTangent x = ff::coordinate_directions(n, r).back();
    for (auto _ : state) benchmark::DoNotOptimize(ff::canonical_form(u, x));
}

void BM_TorsionSweep(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const int r = static_cast<int>(state.range(1));
    const ff::FrameCoords u = make_frame(n, r, 5);
    const auto dirs = ff::symmetric_coordinate_directions(n, r);
    for (auto _ : state) benchmark::DoNotOptimize(ff::torsion_sweep(u, dirs));
}

void cells(benchmark::internal::Benchmark* b)
{
    for (int n = 1; n <= 3; ++n) {
        for (int r = 2; r <= 4; ++r) b->Args({n, r});
    }
}

}  // namespace

BENCHMARK(BM_JetCompose)->Apply(cells);
BENCHMARK(BM_JetInverse)->Apply(cells);
BENCHMARK(BM_CanonicalForm)->Apply(cells);
BENCHMARK(BM_TorsionSweep)->Apply(cells)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
