#include <benchmark/benchmark.h>

#include "opbw/brownian.hpp"
#include "opbw/exploration.hpp"
#include "opbw/paths.hpp"
#include "opbw/statistics.hpp"

using namespace opbw;

static void BM_EdgeField(benchmark::State& state) {
  const EdgeField field(0.8, 42);
  int64_t x = 0, i = 0;
  uint64_t open = 0;
  for (auto _ : state) {
    open += field.is_open({x, i}, Dir::Right);
    x += 2;
    if (x > 100000) {
      x = 0;
      i += 2;
    }
  }
  benchmark::DoNotOptimize(open);
}
BENCHMARK(BM_EdgeField);

static void BM_Explore(benchmark::State& state) {
  const int64_t n = state.range(0);
  uint64_t seed = 0;
  ReachCache cache(n);
  for (auto _ : state) {
    const EdgeField field(0.8, derive_seed(7, seed++));
    cache.reset(n);
    const auto c = explore(field, {0, 0}, n, {}, cache);
    benchmark::DoNotOptimize(c.right.positions.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Explore)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_RightEdgeDirect(benchmark::State& state) {
  const int64_t n = state.range(0);
  uint64_t seed = 0;
  for (auto _ : state) {
    const EdgeField field(0.8, derive_seed(7, seed++));
    const auto path = right_edge_direct(field, {0, 0}, n);
    benchmark::DoNotOptimize(path.positions.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RightEdgeDirect)->Arg(64)->Arg(256);

static void BM_StartLabels(benchmark::State& state) {
  const int64_t n = state.range(0);
  uint64_t seed = 0;
  for (auto _ : state) {
    const EdgeField field(0.8, derive_seed(9, seed++));
    const auto labels =
        reach_start_labels(field, 0, -n, 32 + n, n, 0, 32 + 2 * n);
    benchmark::DoNotOptimize(labels.labels.data());
  }
}
BENCHMARK(BM_StartLabels)->Arg(64)->Arg(256);

static void BM_HalflinePath(benchmark::State& state) {
  const int64_t n = state.range(0);
  uint64_t seed = 0;
  ReachCache cache(n);
  for (auto _ : state) {
    const EdgeField field(0.8, derive_seed(11, seed++));
    cache.reset(n);
    const auto path = halfline_rightmost_path(field, {0, 0}, cache, 4096);
    benchmark::DoNotOptimize(path.positions.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HalflinePath)->Arg(1024)->Arg(8192);

static void BM_CoalescingBm(benchmark::State& state) {
  std::vector<double> starts;
  for (double x = -7.0; x <= 8.0 + 1e-12; x += 0.1) starts.push_back(x);
  uint64_t seed = 0;
  for (auto _ : state) {
    CoalescingBmParams params;
    params.starts = starts;
    params.t_end = 1.0;
    params.dt = 1.0 / 1024.0;
    params.seed = derive_seed(13, seed++);
    const auto pts = coalescing_bm_endpoints(params);
    benchmark::DoNotOptimize(pts.data());
  }
}
BENCHMARK(BM_CoalescingBm);

BENCHMARK_MAIN();
