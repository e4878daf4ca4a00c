// Microbenchmarks for the hot paths: subgroup enumeration, section building,
// group materialization, classification round trips, and the power operation.
// Sizes match the largest instances the acceptance gate exercises, so these
// numbers predict gate wall time directly.

#include <benchmark/benchmark.h>

#include "charpow/classfn.hpp"
#include "charpow/classify.hpp"
#include "charpow/oracle.hpp"

using namespace charpow;

namespace {

void bm_enumerate_subgroups(benchmark::State &state) {
  Context ctx(2, 2, 4);
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgroups(ctx, k));
}
BENCHMARK(bm_enumerate_subgroups)->Arg(2)->Arg(4);

void bm_build_power_section(benchmark::State &state) {
  long long p = state.range(0);
  Context ctx(p, 2, 6);
  for (auto _ : state) benchmark::DoNotOptimize(build_power_section(ctx, 3));
}
BENCHMARK(bm_build_power_section)->Arg(2)->Arg(3);

void bm_wreath_product(benchmark::State &state) {
  GroupPtr G = make_group("C2");
  int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wreath_product(G, m));
}
BENCHMARK(bm_wreath_product)->Arg(3)->Arg(4);

void bm_class_set(benchmark::State &state) {
  WreathGroup wg = wreath_product(make_group("C2"), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ClassSet(wg.W, 2, 1));
}
BENCHMARK(bm_class_set)->Arg(3)->Arg(4);

void bm_classify_round_trip(benchmark::State &state) {
  Context ctx(2, 1, 2);
  WreathGroup wg = wreath_product(make_group("C2"), 4);
  ClassSet cs(wg.W, 2, 1);
  for (auto _ : state)
    for (size_t c = 0; c < cs.count(); ++c) {
      SumDatum d = classify(wg, ctx, cs.rep(static_cast<int>(c)));
      benchmark::DoNotOptimize(standard_representative(wg, ctx, d));
    }
}
BENCHMARK(bm_classify_round_trip);

void bm_power_op(benchmark::State &state) {
  Context ctx(2, 1, 2);
  int m = static_cast<int>(state.range(0));
  GroupPtr G = make_group("C2");
  WreathGroup wg = wreath_product(G, m);
  auto cs = std::make_shared<ClassSet>(G, 2, 1);
  auto cs_w = std::make_shared<ClassSet>(wg.W, 2, 1);
  Section s = build_power_section(ctx, m >= 4 ? 2 : 1);
  ClassFunction f = cf_random(ctx, cs, 42);
  for (auto _ : state) benchmark::DoNotOptimize(power_op(f, wg, cs_w, s));
}
BENCHMARK(bm_power_op)->Arg(2)->Arg(4);

void bm_verify_bijection(benchmark::State &state) {
  GroupPtr G = make_group("C2");
  Context ctx(2, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_bijection(G, ctx, 3));
}
BENCHMARK(bm_verify_bijection);

}  // namespace

BENCHMARK_MAIN();
