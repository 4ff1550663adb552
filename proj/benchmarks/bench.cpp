// Microbenchmarks for the scan hot path: the per-prime cost budget is
// residue-degree detection, one exponentiation mod p^2, and the n x n kernel.

#include <benchmark/benchmark.h>

#include "thetareg/experiments.hpp"
#include "thetareg/binomial.hpp"
#include "thetareg/primes.hpp"

using namespace thetareg;

namespace {

const FieldSpec& d6q() {
  static FieldSpec F = resolve_field("d6q");
  return F;
}
const FieldSpec& c7() {
  static FieldSpec F = resolve_field("c7cubic");
  return F;
}

void BM_fermat_quotient_d6(benchmark::State& state) {
  auto eta = parse_algebraic("-1,1,-7,0,-3,1", 6);
  u64 p = 999983;
  PrimeContext ctx(d6q(), p, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.alpha(eta, 1));
}
BENCHMARK(BM_fermat_quotient_d6);

void BM_residue_degree_d6(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(residue_degree(d6q(), 999983));
}
BENCHMARK(BM_residue_degree_d6);

void BM_relation_module_d6(benchmark::State& state) {
  u64 p = 999983;
  PrimeContext ctx(d6q(), p, 1);
  auto alpha = ctx.alpha(parse_algebraic("-1,1,-7,0,-3,1", 6), 1);
  for (auto _ : state) benchmark::DoNotOptimize(relation_module(ctx, alpha));
}
BENCHMARK(BM_relation_module_d6);

void BM_prime_context_d6(benchmark::State& state) {
  for (auto _ : state) {
    PrimeContext ctx(d6q(), 999983, 1);
    benchmark::DoNotOptimize(ctx.np());
  }
}
BENCHMARK(BM_prime_context_d6);

void BM_theta_value_c7(benchmark::State& state) {
  u64 p = 60037;
  PrimeContext ctx(c7(), p, 1);
  auto theta = stats_bundles(c7(), p)[0];
  ThetaEvaluator ev(ctx, theta, 1);
  auto alpha = ctx.alpha(parse_algebraic("2,0,1", 3), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ev.value(alpha));
}
BENCHMARK(BM_theta_value_c7);

void BM_stats_element_c7(benchmark::State& state) {
  // full per-element cost in repetition stats: alpha + resolvent + scalar
  u64 p = 60037;
  PrimeContext ctx(c7(), p, 1);
  auto theta = stats_bundles(c7(), p)[0];
  ThetaEvaluator ev(ctx, theta, 1);
  auto z = ctx.ring(2).from_signed({-7, 23, 11});
  for (auto _ : state) benchmark::DoNotOptimize(ev.value(ctx.alpha_of_residue(z, 1)));
}
BENCHMARK(BM_stats_element_c7);

void BM_sieve_1e6(benchmark::State& state) {
  for (auto _ : state) {
    u64 count = 0;
    for_primes(3, 1000000, [&](u64) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_sieve_1e6);

void BM_binomial_tail_1009(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(binomial_tail(1009, 3));
}
BENCHMARK(BM_binomial_tail_1009);

}  // namespace

BENCHMARK_MAIN();
