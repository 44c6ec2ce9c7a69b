#include <benchmark/benchmark.h>

#include "imcf/classifier.hpp"
#include "imcf/resample.hpp"
#include "imcf/verifier.hpp"

namespace {

const imcf::Parameters& p21() {
  static const imcf::Parameters p = imcf::validate_parameters(2, 1, 1, 1);
  return p;
}

void BM_IntegrateBlowUp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(imcf::integrate_psi({0.0, 0.0}, imcf::Direction::Forward, p21(), {}));
  }
}
BENCHMARK(BM_IntegrateBlowUp);

// The band start runs all the way into the pole along the stiff slow manifold.
void BM_IntegrateToPole(benchmark::State& state) {
  const imcf::Band band = imcf::band_bounds(p21());
  const double r0 = (band.b + 1) / 2;
  const imcf::ProfileState ic{r0, imcf::eta_midpoint(r0, p21())};
  for (auto _ : state) {
    benchmark::DoNotOptimize(imcf::integrate_psi(ic, imcf::Direction::Forward, p21(), {}));
  }
}
BENCHMARK(BM_IntegrateToPole);

void BM_Classify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(imcf::classify({0.3, -0.5}, p21(), {}));
}
BENCHMARK(BM_Classify);

void BM_Separatrix(benchmark::State& state) {
  const double probe = imcf::default_probe(p21(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(imcf::find_separatrix(p21(), 1, probe, {}));
}
BENCHMARK(BM_Separatrix)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rg = imcf::uniform_grid(-0.98, 0.98, n);
  const auto pg = imcf::uniform_grid(-5.0, 5.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(imcf::sweep(p21(), rg, pg, {}, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * n));
}
BENCHMARK(BM_Sweep)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ReductionResidual(benchmark::State& state) {
  const imcf::Trace t = imcf::integrate_profile({0.1, -0.2}, imcf::Direction::Forward, p21(), {});
  for (auto _ : state) benchmark::DoNotOptimize(imcf::reduction_residual(t, p21()));
}
BENCHMARK(BM_ReductionResidual);

}  // namespace

// The packaged benchmark_main archive is LTO bytecode from another compiler
// build, so the entry point is defined here.
BENCHMARK_MAIN();
