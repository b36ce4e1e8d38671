#include <benchmark/benchmark.h>

#include "cexpde/characteristics.hpp"
#include "cexpde/equation.hpp"
#include "cexpde/expr.hpp"
#include "cexpde/monge_ampere.hpp"
#include "cexpde/symbol.hpp"

namespace {

using namespace cexpde;

const char* const kDet3 =
    "u11*u22*u33 + 2*u12*u23*u13 - u11*u23^2 - u22*u13^2 - u33*u12^2 + exp(x1)*u - 1";

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kDet3, 3));
}
BENCHMARK(BM_Parse);

void BM_DifferentiateAll(benchmark::State& state) {
  const Equation eq(parse(kDet3, 3), 3);
  for (auto _ : state)
    for (int k = 0; k < eq.hessian_size(); ++k)
      for (int l = 0; l < eq.hessian_size(); ++l) {
        const auto [i, j] = unpack_index(3, l);
        benchmark::DoNotOptimize(differentiate(eq.hessian_partial(k), Var::h(i, j)));
      }
}
BENCHMARK(BM_DifferentiateAll);

void BM_SampleLocus(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Equation eq(parse(n == 2 ? "u11*u22 - u12^2 + 1" : kDet3, n), n);
  SamplingOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(sample_zero_locus(eq, opt));
}
BENCHMARK(BM_SampleLocus)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Exceptionality(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Equation eq(parse(n == 2 ? "u11*u22 - u12^2 + 1" : kDet3, n), n);
  SamplingOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(is_completely_exceptional(eq, opt));
}
BENCHMARK(BM_Exceptionality)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MinorExpansion(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const char* f = n == 2 ? "u11*u22 - u12^2 + u1*u11" : n == 3 ? kDet3 : "u11*u22*u33*u44 - u12^2 + u34";
  const Equation eq(parse(f, n), n);
  BasePoint base;
  base.x.assign(static_cast<std::size_t>(n), 0.3);
  base.p.assign(static_cast<std::size_t>(n), -0.2);
  base.u = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(fit_minor_expansion(eq, base, 1e-8, 7));
}
BENCHMARK(BM_MinorExpansion)->Arg(2)->Arg(3)->Arg(4);

void BM_EquivalenceReport(benchmark::State& state) {
  const PlanarEquation eq(parse("u11*u22 - u12^2 + 1", 2));
  SamplingOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(equivalence_report(eq, opt));
}
BENCHMARK(BM_EquivalenceReport)->Unit(benchmark::kMillisecond);

}  // namespace

// libbenchmark_main.a from the distro carries LTO bytecode from another gcc.
BENCHMARK_MAIN();
