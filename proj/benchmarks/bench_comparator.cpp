#include <benchmark/benchmark.h>

#include "factpow/catalog.hpp"
#include "factpow/certified_log.hpp"
#include "factpow/comparator.hpp"
#include "factpow/scanner.hpp"

using namespace factpow;

static void BM_Log2NatCold(benchmark::State& state) {
  const Precision p(static_cast<std::uint32_t>(state.range(0)));
  mpz_class v = 1;
  v = (v << 4000) + 12345;
  for (auto _ : state) {
    clear_log_cache();
    benchmark::DoNotOptimize(log2_nat(v, p));
  }
}
BENCHMARK(BM_Log2NatCold)->RangeMultiplier(4)->Range(32, 4096);

static void BM_Log2Factorial(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    clear_log_cache();
    benchmark::DoNotOptimize(log2_factorial(m, Precision(64)));
  }
}
BENCHMARK(BM_Log2Factorial)->Arg(20)->Arg(200)->Arg(2000);

static void BM_CompareLogTier(benchmark::State& state) {
  const EquationSpec& t1 = *get_catalog().find_equation("T1");
  const Binding b(static_cast<std::uint64_t>(state.range(0)), static_cast<std::uint64_t>(state.range(0)) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(compare_instance(t1.lhs, t1.rhs, b));
}
BENCHMARK(BM_CompareLogTier)->Arg(3)->Arg(10)->Arg(19);

static void BM_CompareExactTier(benchmark::State& state) {
  const Expr a = parse_expr("2^6000 + 3");
  const Expr b = parse_expr("2^6000 + 5");
  for (auto _ : state) benchmark::DoNotOptimize(compare(a, b));
}
BENCHMARK(BM_CompareExactTier);

static void BM_ScanEquation(benchmark::State& state) {
  const EquationSpec& eq = get_catalog().equations[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(scan_equation(eq, 20, 20, {}, {.threads = 1}));
}
BENCHMARK(BM_ScanEquation)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_ScanInequality(benchmark::State& state) {
  const InequalitySpec& spec = *get_catalog().find_inequality("I18");
  for (auto _ : state) benchmark::DoNotOptimize(scan_inequality(spec, spec.default_bounds, {}, {.threads = 1}));
}
BENCHMARK(BM_ScanInequality)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
