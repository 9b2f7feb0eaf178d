// Hot-path timings: the closed-form point evaluation against the dense
// boundary solve it replaces, plus the entropy layer and full sweeps.

#include <benchmark/benchmark.h>

#include <cmath>

#include "diracstep/entanglement.hpp"
#include "diracstep/kinematics.hpp"
#include "diracstep/scattering.hpp"
#include "diracstep/spinors.hpp"
#include "diracstep/sweep.hpp"

using namespace diracstep;

namespace {

const double kNuD = nu_from_critical(0.5, 0.5, ZoneSide::Diffusion);
const IncidentAmplitudes kInc = IncidentAmplitudes::from_phase(0.8, 0.6, 0.5);

// sweep the incidence so no iteration hits a cached angle
double next_angle(int64_t i) { return 0.001 + 0.0009 * (i % 1000); }

void BM_ClosedScatter(benchmark::State& state) {
    const MediumParams m{0.5, kNuD};
    int64_t i = 0;
    for (auto _ : state) {
        const double s = next_angle(i++);
        const AParam a = compute_A_for_medium(m, s);
        const ScatteredAmplitudes q = scatter(a, s, refract(m, s), kInc);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_ClosedScatter);

void BM_BoundarySolve(benchmark::State& state) {
    int64_t i = 0;
    for (auto _ : state) {
        const double s = next_angle(i++);
        const ScatteredAmplitudes q = boundary_solve(0.5, kNuD, s, kInc);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_BoundarySolve);

void BM_EntropyPoint(benchmark::State& state) {
    const MediumParams m{0.5, kNuD};
    const KappaFactor kr = kappa(Wave::Reflected, m.mu, m.nu);
    int64_t i = 0;
    for (auto _ : state) {
        const double s = next_angle(i++);
        const AParam a = compute_A_for_medium(m, s);
        const ScatteredAmplitudes q = scatter(a, s, refract(m, s), kInc);
        const double entropy = von_neumann_entropy(
            reduced_spectrum(kr, q.r_plus, q.r_minus));
        benchmark::DoNotOptimize(entropy);
    }
}
BENCHMARK(BM_EntropyPoint);

void BM_Sweep(benchmark::State& state) {
    StepConfig cfg;
    cfg.mu = 0.5;
    cfg.barrier = Barrier::from_critical(0.5, ZoneSide::Diffusion);
    cfg.i_plus_mag = 0.8;
    cfg.i_minus_mag = 0.6;
    cfg.theta_samples = 2000;
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto rows = run_sweep(cfg, threads);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.theta_samples);
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
