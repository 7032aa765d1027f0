#include <benchmark/benchmark.h>

#include <random>

#include "secplf/adversary.hpp"
#include "secplf/amm.hpp"
#include "secplf/guard.hpp"
#include "secplf/properties.hpp"
#include "secplf/risk.hpp"

using namespace secplf;

namespace {

PriceSeries walk(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> step(0.0, 0.004);
  PriceSeries s;
  s.asset = "W";
  double price = 100;
  for (std::size_t i = 0; i < n; ++i) {
    price *= std::exp(step(rng));
    s.closes.push_back(price);
  }
  return s;
}

void BM_Swap(benchmark::State& state) {
  const AssetId a{"A"};
  Pool pool = make_pool(a, Amount{100}, AssetId("B"), Amount{1000});
  for (auto _ : state) benchmark::DoNotOptimize(swap_exact_in(pool, a, Amount{Rational(9900, 7)}));
}
BENCHMARK(BM_Swap);

void BM_GuardQuery(benchmark::State& state) {
  const PriceState start = init_state(Amount{10}, BlockRef{0});
  const Amount oracle{Rational(10201, 10)};
  for (auto _ : state) benchmark::DoNotOptimize(guarded_price(start, oracle, BlockRef{1}, Rational(5)));
}
BENCHMARK(BM_GuardQuery);

void BM_GoldenAttack(benchmark::State& state) {
  AttackSetup setup;
  setup.mode = state.range(0) ? PriceMode::SecPlfGuard : PriceMode::RawOracle;
  Scenario sc = make_attack_scenario(setup);
  const WorldState pre = begin_block(sc.state);
  for (auto _ : state) benchmark::DoNotOptimize(run_attack(pre, *sc.attack));
}
BENCHMARK(BM_GoldenAttack)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_MaxDeltaSeries(benchmark::State& state) {
  const PriceSeries s = walk(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_delta_series(s, 600, 1.25));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MaxDeltaSeries)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_ComputeTz(benchmark::State& state) {
  const PriceSeries s = walk(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_tz(s, 1.25, 1 - 1e-5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComputeTz)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
