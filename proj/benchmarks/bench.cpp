#include <benchmark/benchmark.h>

#include "stovex/airy.hpp"
#include "stovex/lattice.hpp"
#include "stovex/observables.hpp"
#include "stovex/particles.hpp"
#include "stovex/tracy_widom.hpp"

namespace {

const stovex::ModelParams kP = stovex::ModelParams::validate(0.6, 0.2);

void BM_ParticleRun(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(stovex::run(kP, L, L, seed++));
  state.SetComplexityN(L);
}
BENCHMARK(BM_ParticleRun)->Arg(125)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LatticeSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(stovex::sample_configuration(kP, n, n, seed++));
}
BENCHMARK(BM_LatticeSample)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_QLaplaceFredholm(benchmark::State& state) {
  const stovex::MomentSpec spec{1, 4, 4, {-1.0, 0.0}};
  stovex::FredholmOptions o;
  o.circle_nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stovex::qlaplace_fredholm(spec, kP, o));
}
BENCHMARK(BM_QLaplaceFredholm)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Airy(benchmark::State& state) {
  double x = -15.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stovex::airy(x));
    x = x > 14.9 ? -15.0 : x + 0.37;
  }
}
BENCHMARK(BM_Airy);

void BM_FGue(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stovex::f_gue_fixed(-1.8, nodes));
}
BENCHMARK(BM_FGue)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
