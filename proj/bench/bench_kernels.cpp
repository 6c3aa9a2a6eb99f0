#include <benchmark/benchmark.h>

#include "wc/batch.hpp"

using namespace wc;

namespace {

Execution mode(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "openmp" : "serial"); }

void BM_ClassTable(benchmark::State& st) {
  auto g = make_group(CartanType::parse("F4"));
  for (auto _ : st) benchmark::DoNotOptimize(class_table(g, 0, mode(st)));
  label(st);
}

void BM_Roundtrips(benchmark::State& st) {
  CrossSectionData d(from_word(make_group(CartanType::parse("A4")), {1, 2, 3, 0, 1, 2}), MatrixGroup::SL);
  const PrimeField f(101);
  for (auto _ : st) benchmark::DoNotOptimize(roundtrip_trials(f, d, 500, 42, mode(st)));
  label(st);
}

void BM_Transversality(benchmark::State& st) {
  CrossSectionData d(from_word(make_group(CartanType::parse("A4")), {1, 2, 3, 0, 1, 2}), MatrixGroup::SL);
  for (auto _ : st) benchmark::DoNotOptimize(transversality_trials(d, 20, 7, false, mode(st)));
  label(st);
}

void BM_CollisionSearch(benchmark::State& st) {
  auto g = make_group(CartanType::parse("A5"));
  CrossSectionData d(element_from_permutation(g, parse_cycles("(1,6,4,5,2,3)", 6)), MatrixGroup::GL);
  for (auto _ : st) benchmark::DoNotOptimize(collision_search(d, 1ull << 24, 1, {2, 3}, mode(st)));
  label(st);
}

void BM_GoodPositionScan(benchmark::State& st) {
  auto g = make_group(CartanType::parse("A4"));
  for (auto _ : st) benchmark::DoNotOptimize(good_position_scan(g, 0, mode(st)));
  label(st);
}

} // namespace

BENCHMARK(BM_ClassTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Roundtrips)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Transversality)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollisionSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_GoodPositionScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
