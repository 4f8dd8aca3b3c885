#include <vector>

#include <benchmark/benchmark.h>

#include "dickecat/cat_fit.hpp"
#include "dickecat/clebsch_gordan.hpp"
#include "dickecat/dicke.hpp"
#include "dickecat/herald.hpp"
#include "dickecat/thermo.hpp"
#include "dickecat/wigner.hpp"

using namespace dickecat;

namespace {

void BM_BuildHamiltonian(benchmark::State& state) {
  const auto basis = DickeBasis::build(DickeParams::at_ratio(static_cast<int>(state.range(0)), 1.0), Parity::kEven);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(basis));
  state.counters["states"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_BuildHamiltonian)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Multiply(benchmark::State& state) {
  const SparseHamiltonian h =
      build_hamiltonian(DickeBasis::build(DickeParams::at_ratio(static_cast<int>(state.range(0)), 1.0), Parity::kEven));
  std::vector<double> x(h.rows(), 1.0), y(h.rows());
  for (auto _ : state) {
    h.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * h.nonzeros()));
}
BENCHMARK(BM_Multiply)->Arg(200)->Arg(1000);

void BM_GroundState(benchmark::State& state) {
  const auto params = DickeParams::at_ratio(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_ground_state(params));
}
BENCHMARK(BM_GroundState)->Arg(30)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_HeraldAndFit(benchmark::State& state) {
  const GroundState g = solve_ground_state(DickeParams::at_ratio(200, 1.0));
  for (auto _ : state) {
    for (int n = 1; n <= 6; ++n) benchmark::DoNotOptimize(fit_cat(herald(g, n).state, parity_of(n)));
  }
}
BENCHMARK(BM_HeraldAndFit)->Unit(benchmark::kMillisecond);

void BM_WignerTransform(benchmark::State& state) {
  const CollectiveSpin spin(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SpinWignerTransform{spin});
}
BENCHMARK(BM_WignerTransform)->Arg(30)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_WignerPatch(benchmark::State& state) {
  const GroundState g = solve_ground_state(DickeParams::at_ratio(30, 1.0));
  const SpinWignerTransform transform{g.basis.spin()};
  const SpinDensityMatrix rho = reduced_spin_density(g);
  const auto [thetas, phis] = patch_axes(1.0, 201, 201);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform.evaluate(rho, thetas, phis, SphereFrame::kGroundStatePole));
  }
}
BENCHMARK(BM_WignerPatch)->Unit(benchmark::kMillisecond);

void BM_ClebschGordan(benchmark::State& state) {
  const auto j = HalfInteger::from_twice(static_cast<int>(2 * state.range(0)));
  const auto h = HalfInteger::from_twice;
  for (auto _ : state) {
    double acc = 0.0;
    for (int tm = -2; tm <= 2; tm += 2) acc += clebsch_gordan(j, h(tm), j, h(-tm), h(4), h(0));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ClebschGordan)->Arg(15)->Arg(500);

void BM_ThermodynamicHerald(benchmark::State& state) {
  const GaussianGroundState gs = gaussian_ground_near_critical(1.0, 1e-6);
  for (auto _ : state) {
    for (int n = 1; n <= 6; ++n) benchmark::DoNotOptimize(herald_thermodynamic(gs, n));
  }
}
BENCHMARK(BM_ThermodynamicHerald)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
