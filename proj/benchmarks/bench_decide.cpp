#include <benchmark/benchmark.h>

#include <random>

#include "polyfn/decide.hpp"
#include "polyfn/gens.hpp"
#include "polyfn/oracle.hpp"

using namespace polyfn;

namespace {

DecideOptions fast() {
  DecideOptions o;
  o.verify_witness = false;
  o.record_timings = false;
  return o;
}

// Univariate decide on a polynomial function over Z_{2^n}; range(0) is n.
void BM_DecideAccepted(benchmark::State& state) {
  const RingCtx ctx(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(1);
  const FuncTable f = random_span_table(ctx, 1, rng);
  const DecideOptions o = fast();
  for (auto _ : state) benchmark::DoNotOptimize(decide_univariate(f, o));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ctx.q()));
  state.SetComplexityN(static_cast<std::int64_t>(ctx.q()));
}
BENCHMARK(BM_DecideAccepted)->DenseRange(10, 20, 2)->Complexity(benchmark::oN);

// A random table is almost never polynomial and fails early.
void BM_DecideRandomTable(benchmark::State& state) {
  const RingCtx ctx(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<Residue> v(0, static_cast<Residue>(ctx.q() - 1));
  std::vector<Residue> values(ctx.q());
  for (auto& x : values) x = v(rng);
  const FuncTable f(ctx, 1, std::move(values));
  const DecideOptions o = fast();
  for (auto _ : state) benchmark::DoNotOptimize(decide_univariate(f, o));
}
BENCHMARK(BM_DecideRandomTable)->DenseRange(10, 20, 5);

// Full-system strategy on the same inputs as the default.
void BM_DecideFullSystem(benchmark::State& state) {
  const RingCtx ctx(static_cast<std::uint32_t>(state.range(0)), 3);
  std::mt19937_64 rng(3);
  const FuncTable f = random_span_table(ctx, 1, rng);
  DecideOptions o = fast();
  o.strategy = Strategy::kFullSystem;
  for (auto _ : state) benchmark::DoNotOptimize(decide_univariate(f, o));
}
BENCHMARK(BM_DecideFullSystem)->Arg(2)->Arg(3)->Arg(5);

void BM_DecideMultivariate(benchmark::State& state) {
  const RingCtx ctx(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(4);
  const FuncTable f = random_span_table(ctx, 2, rng);
  const DecideOptions o = fast();
  for (auto _ : state) benchmark::DoNotOptimize(decide_multivariate(f, o));
}
BENCHMARK(BM_DecideMultivariate)->Arg(2)->Arg(4)->Arg(6);

// Membership in the enumerated set over Z_8, enumeration included.
void BM_OracleMembershipZ8(benchmark::State& state) {
  const RingCtx ctx(2, 3);
  std::mt19937_64 rng(5);
  const FuncTable f = random_span_table(ctx, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_member(f));
}
BENCHMARK(BM_OracleMembershipZ8);

void BM_DecideZ8(benchmark::State& state) {
  const RingCtx ctx(2, 3);
  std::mt19937_64 rng(5);
  const FuncTable f = random_span_table(ctx, 1, rng);
  const DecideOptions o = fast();
  for (auto _ : state) benchmark::DoNotOptimize(decide_univariate(f, o));
}
BENCHMARK(BM_DecideZ8);

}  // namespace

BENCHMARK_MAIN();
