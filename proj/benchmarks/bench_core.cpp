#include <benchmark/benchmark.h>

#include "qsym/cone.hpp"
#include "qsym/special.hpp"
#include "qsym/torsion.hpp"

namespace {

void BM_EulerBeta(benchmark::State& state) {
  double x = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsym::euler_beta(x, 3.5));
    x = x < 10.0 ? x + 0.125 : 0.25;
  }
}
BENCHMARK(BM_EulerBeta);

void BM_RieszPotential(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  qsym::VecN origin = qsym::VecN::Zero(N), axis = qsym::VecN::Zero(N);
  axis(0) = 1.0;
  const qsym::Cone cone{origin, axis, qsym::ConeSpec{qsym::kPi / 4, 1.0}};
  const auto fields = qsym::field_catalog(N, origin, axis);
  for (auto _ : state) {
    for (const auto& f : fields) benchmark::DoNotOptimize(qsym::riesz_potential(cone, f, true));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(fields.size()));
}
BENCHMARK(BM_RieszPotential)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_TorsionSolve(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto domain = qsym::StarDomain2D::ellipse(1.2, 1.0 / 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(qsym::solve_torsion(domain, h).first.values.data());
}
BENCHMARK(BM_TorsionSolve)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
