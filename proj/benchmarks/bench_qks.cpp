#include <benchmark/benchmark.h>

#include "qks/catalog.hpp"
#include "qks/fiber.hpp"
#include "qks/series.hpp"
#include "qks/skewring.hpp"
#include "qks/workbench.hpp"

using namespace qks;

static void BM_CyclotomicMultiply(benchmark::State& state) {
  long n = state.range(0);
  auto a = Cyclotomic::root_of_unity(1, n) + Cyclotomic(Rational(2, 3));
  auto b = Cyclotomic::root_of_unity(2, n) - Cyclotomic(5);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicMultiply)->Arg(4)->Arg(12)->Arg(60);

static void BM_QuantumPlaneProduct(benchmark::State& state) {
  auto A = AlgebraSpec::quantum_plane(Cyclotomic::root_of_unity(1, 5));
  NCPoly x = NCPoly::u(A) + NCPoly::v(A);
  auto p = x.pow(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(p * p);
}
BENCHMARK(BM_QuantumPlaneProduct)->Arg(4)->Arg(8);

static void BM_CenterBasis(benchmark::State& state) {
  auto M = AlgebraSpec::quantum_plane(Cyclotomic(-1));
  auto T = SkewRing::make(M, GroupSpec::dihedral(4, Cyclotomic::root_of_unity(1, 4)));
  for (auto _ : state) benchmark::DoNotOptimize(center_basis(T, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CenterBasis)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_MolienDihedral(benchmark::State& state) {
  auto rep = dihedral_representation(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(molien_series(rep));
}
BENCHMARK(BM_MolienDihedral)->Arg(2)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_FiberCertificate(benchmark::State& state) {
  auto params = catalog_cases()[static_cast<std::size_t>(state.range(0))];
  auto c = make_case(params);
  ValuePool pool(c.conductor, 1);
  auto p = sample_point(c, pool);
  for (auto _ : state) {
    auto f = build_fiber(c.ring, c.presentation, p->values, c.recipe(p->values));
    benchmark::DoNotOptimize(matrix_algebra_certificate(f));
  }
  state.SetLabel(c.label);
}
// 0(denominator), i(3,2), ii(tpd), iii(n=3, tpd)
BENCHMARK(BM_FiberCertificate)->Arg(0)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_TruncatedHom(benchmark::State& state) {
  auto c = make_case({"iv", 0, 0, std::nullopt, Localization::none});
  int top = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_hom_dimension(c.algebra, c.group, 2, top, 4));
}
BENCHMARK(BM_TruncatedHom)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
