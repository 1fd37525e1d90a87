// Microbenchmarks for the hot paths: form enumeration, composition,
// factorization and whole verdict points.
#include <benchmark/benchmark.h>

#include "quadclass/arith.hpp"
#include "quadclass/quadfield.hpp"
#include "quadclass/theorems.hpp"

using namespace quadclass;
namespace mp = boost::multiprecision;

static void BM_ReducedForms(benchmark::State& state) {
  // fundamental discriminants near the requested magnitude
  std::int64_t target = state.range(0);
  std::int64_t D = -target;
  while (((D % 4) + 4) % 4 != 1) --D;
  for (auto _ : state) {
    auto forms = quadfield::reduced_forms(Int(D), Int("10000000000"));
    benchmark::DoNotOptimize(forms);
  }
  state.SetLabel("D = " + std::to_string(D));
}
BENCHMARK(BM_ReducedForms)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Arg(10'000'000);

static void BM_Compose(benchmark::State& state) {
  auto forms = quadfield::reduced_forms(Int(-3299));  // h(-3299) = 27
  std::size_t i = 0;
  for (auto _ : state) {
    auto f = quadfield::compose(forms[i % forms.size()], forms[(i * 7 + 3) % forms.size()]);
    benchmark::DoNotOptimize(f);
    ++i;
  }
}
BENCHMARK(BM_Compose);

static void BM_FormOrder(benchmark::State& state) {
  auto forms = quadfield::reduced_forms(Int(-82735));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadfield::form_order(forms.back()));
  }
}
BENCHMARK(BM_FormOrder);

static void BM_Factorize(benchmark::State& state) {
  Int n = Int("999962000357");  // 999979 * 999983
  for (auto _ : state) {
    benchmark::DoNotOptimize(arith::factorize(n));
  }
}
BENCHMARK(BM_Factorize);

static void BM_Thm5Point(benchmark::State& state) {
  std::int64_t k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorems::verify_thm5(Int(k), Int(6)));
  }
}
BENCHMARK(BM_Thm5Point)->Arg(7)->Arg(23);

BENCHMARK_MAIN();
