#include "xsuperint/classical.hpp"
#include "xsuperint/ladders.hpp"
#include "xsuperint/poly_core.hpp"
#include "xsuperint/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace xsuperint;

static void BM_XJacobiEigen(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(xjacobi_eigen(n, Rational(1, 2), Rational(5, 2)));
}
BENCHMARK(BM_XJacobiEigen)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_XiAction(benchmark::State& state) {
    const Params params(Rational(1), Rational(3), 1.0, 3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(xi_action(Direction::Plus, {3, 2}, params));
}
BENCHMARK(BM_XiAction)->Unit(benchmark::kMillisecond);

static void BM_ParityCheck(benchmark::State& state) {
    const Params params(Rational(1), Rational(3), 1.0, 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(parity_check(8, params));
}
BENCHMARK(BM_ParityCheck)->Unit(benchmark::kMillisecond);

static void BM_SchrodingerResidual(benchmark::State& state) {
    const Params params(Rational(1), Rational(3), 1.0, 1, 1);
    const Wavefunction wf({2, 3}, params);
    const int n = static_cast<int>(state.range(0));
    const WedgeGrid grid{n, n, 0.0, 1e-3};
    for (auto _ : state) benchmark::DoNotOptimize(schrodinger_residual(wf, grid));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SchrodingerResidual)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_AngularOrthogonality(benchmark::State& state) {
    const Params params(Rational(1), Rational(3), 1.0, 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(angular_orthogonality(4, 6, params));
}
BENCHMARK(BM_AngularOrthogonality)->Unit(benchmark::kMicrosecond);

static void BM_Integrate(benchmark::State& state) {
    const ClassicalParams cp{1.0, 1.0, 3.0, 3, 2};
    const double tr = cp.radial_period();
    const PhaseState s0 = default_initial_state(cp);
    const double periods = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(s0, cp, tr / 200.0, periods * tr));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(200 * periods));
}
BENCHMARK(BM_Integrate)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
