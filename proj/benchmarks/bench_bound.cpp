#include <benchmark/benchmark.h>

#include "sosbound/bound.hpp"
#include "sosbound/sampler.hpp"
#include "sosbound/testfns.hpp"

using namespace sosbound;

static void BM_MomentTable(benchmark::State& state) {
  const Domain dom = Domain::simplex(2);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    MomentTable table(dom, degree);
    benchmark::DoNotOptimize(table.size());
  }
}
BENCHMARK(BM_MomentTable)->Arg(16)->Arg(32)->Arg(46);

static void BM_Assemble(benchmark::State& state) {
  const auto tc = testfns::get("motzkin");
  const Polynomial f = tc.polynomial();
  const int r = static_cast<int>(state.range(0));
  auto table = moment_table(tc.domain, 2 * r + f.degree());
  for (auto _ : state) {
    MomentMatrices m = assemble_AB(f, *table, r);
    benchmark::DoNotOptimize(m.A.size());
  }
}
BENCHMARK(BM_Assemble)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_ComputeBound(benchmark::State& state) {
  const auto tc = testfns::get("motzkin");
  const Polynomial f = tc.polynomial();
  const int r = static_cast<int>(state.range(0));
  const Precision precision = state.range(1) ? Precision::extended : Precision::standard;
  moment_table(tc.domain, 2 * r + f.degree());
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_bound(f, tc.domain, r, {.precision = precision}).value);
  }
}
BENCHMARK(BM_ComputeBound)
    ->Args({6, 0})
    ->Args({6, 1})
    ->Args({12, 0})
    ->Args({12, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_StyblinskiTang10(benchmark::State& state) {
  const auto tc = testfns::get("styblinski-tang", 10);
  const Polynomial f = tc.polynomial();
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_bound(f, tc.domain, r).value);
}
BENCHMARK(BM_StyblinskiTang10)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State& state) {
  const auto tc = testfns::get("three-hump-camel");
  const Polynomial f = tc.polynomial();
  const BoundResult res = compute_bound(f, tc.domain, 8);
  const ConditionalChain chain = build_chain(res.density, tc.domain);
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample(chain, count, 1, f).values.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
