// SPDX-License-Identifier: Apache-2.0
// Serial reference kernel against the OpenMP kernel on the same workload.
#include <benchmark/benchmark.h>

#include "lamperti/montecarlo.hpp"

using namespace lamperti;

namespace {

SimConfig workload(Regime regime) {
    SimConfig c;
    c.spec.regime = regime;
    if (regime == Regime::LineIn) {
        c.spec.tail.alpha = 3.0;
        c.spec.tail.beta = 1.3;
        c.spec.drift.gamma = 1.0;
    }
    if (regime == Regime::Plane) c.spec.plane = PlaneParams{0.9, 1.0, 1.0, 2.0};
    c.horizon = 10000;
    c.n_traj = 256;
    return c;
}

void args(benchmark::internal::Benchmark* b) {
    for (int r : {static_cast<int>(Regime::HalfLine), static_cast<int>(Regime::LineIn), static_cast<int>(Regime::Plane)})
        b->Arg(r);
    b->Unit(benchmark::kMillisecond);
}

void BM_Serial(benchmark::State& state) {
    const SimConfig cfg = workload(static_cast<Regime>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_trajectories_serial(cfg));
    state.SetLabel(std::string(to_string(cfg.spec.regime)));
    state.SetItemsProcessed(state.iterations() * cfg.n_traj);
}
BENCHMARK(BM_Serial)->Apply(args);

void BM_Parallel(benchmark::State& state) {
    SimConfig cfg = workload(static_cast<Regime>(state.range(0)));
    cfg.workers = 4;
    for (auto _ : state) benchmark::DoNotOptimize(run_trajectories(cfg));
    state.SetLabel(std::string(to_string(cfg.spec.regime)));
    state.SetItemsProcessed(state.iterations() * cfg.n_traj);
}
BENCHMARK(BM_Parallel)->Apply(args);

}  // namespace

BENCHMARK_MAIN();
