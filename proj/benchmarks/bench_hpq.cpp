#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "hpq/dual_tree.hpp"
#include "hpq/interval.hpp"
#include "hpq/okey_dokey.hpp"
#include "hpq/prefix.hpp"
#include "hpq/testkit.hpp"

using namespace hpq;

namespace {

constexpr std::size_t kQueries = 4096;

double log_squared(benchmark::IterationCount n) {
  const double l = std::log2(static_cast<double>(n));
  return l * l;
}

const Instance& instance(std::size_t n) {
  static std::map<std::size_t, Instance> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gen_convex(n, 17, Shape::circle)).first;
  return it->second;
}

void BM_DualTreeInsert(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  std::size_t changes = 0;
  for (auto _ : state) {
    DualTree t(Mode::Farthest);
    for (const Point& p : inst.sites.points()) changes += t.insert_ccw(p).delta.count();
    benchmark::DoNotOptimize(t);
  }
  state.counters["changes_per_insert"] =
      benchmark::Counter(static_cast<double>(changes) / inst.sites.size(), benchmark::Counter::kAvgIterations);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DualTreeInsert)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_PrefixBuild(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    PrefixStructure s(Mode::Farthest);
    for (const Point& p : inst.sites.points()) s.push(p);
    benchmark::DoNotOptimize(s);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PrefixBuild)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_PrefixQuery(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  PrefixStructure s(Mode::Farthest);
  for (const Point& p : inst.sites.points()) s.push(p);
  const auto qs = gen_queries(inst.sites.points(), kQueries, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t t = 1 + (i * 7919) % inst.sites.size();
    benchmark::DoNotOptimize(s.query_prefix(t, qs[i % kQueries].q));
    ++i;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PrefixQuery)->RangeMultiplier(4)->Range(256, 16384)->Complexity(log_squared);

void BM_IntervalQuery(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  const IntervalStructure s(inst.sites.points(), Mode::Farthest);
  const auto qs = gen_queries(inst.sites.points(), kQueries, 5);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& h = qs[i++ % kQueries];
    benchmark::DoNotOptimize(s.query(h.q, h.l));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntervalQuery)->RangeMultiplier(4)->Range(256, 4096)->Complexity(log_squared);

void BM_OkeyDokeyQuery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto& inst = instance(n);
  const OkeyDokey s(inst.sites.points(), Mode::Farthest, k);
  const auto qs = gen_queries(inst.sites.points(), kQueries, 9);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& h = qs[i++ % kQueries];
    benchmark::DoNotOptimize(s.query(h.q, h.l));
  }
}
BENCHMARK(BM_OkeyDokeyQuery)->Args({128, 1})->Args({1024, 2})->Args({1024, 3})->Args({4096, 3});

void BM_BruteForceQuery(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  const auto qs = gen_queries(inst.sites.points(), kQueries, 5);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& h = qs[i++ % kQueries];
    benchmark::DoNotOptimize(bf_query(inst.sites.points(), h.q, h.l, Mode::Farthest));
  }
}
BENCHMARK(BM_BruteForceQuery)->RangeMultiplier(4)->Range(256, 4096);

}  // namespace

BENCHMARK_MAIN();
