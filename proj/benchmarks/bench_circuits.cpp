#include <benchmark/benchmark.h>

#include "kernhe/boolcircuits.hpp"
#include "kernhe/mlbool.hpp"

using namespace kernhe;

namespace {

void BM_Mult(benchmark::State& state) {
  const FixedPointLayout f(static_cast<int>(state.range(0)));
  GateLedger ledger;
  const WordCipher a = encrypt_raw(ledger, 77, f), b = encrypt_raw(ledger, -45, f);
  for (auto _ : state) benchmark::DoNotOptimize(mult(a, b));
  state.counters["gates/s"] = benchmark::Counter(
      static_cast<double>(gate_cost::mult(f.l())) * state.iterations(), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Mult)->Arg(8)->Arg(16)->Arg(32);

void BM_Divide(benchmark::State& state) {
  const FixedPointLayout f(static_cast<int>(state.range(0)));
  GateLedger ledger;
  const WordCipher a = encrypt_raw(ledger, 1000, f), b = encrypt_raw(ledger, 37, f);
  for (auto _ : state) benchmark::DoNotOptimize(divide(a, b));
}
BENCHMARK(BM_Divide)->Arg(8)->Arg(16)->Arg(32);

void BM_BubbleSort(benchmark::State& state) {
  const FixedPointLayout f(16);
  GateLedger ledger;
  std::vector<WordCipher> v, lab;
  for (int64_t i = 0; i < state.range(0); ++i) {
    v.push_back(encrypt_raw(ledger, (i * 7919) % 101, f));
    lab.push_back(encrypt_raw(ledger, i, f));
  }
  for (auto _ : state) benchmark::DoNotOptimize(bubble_sort(v, lab));
}
BENCHMARK(BM_BubbleSort)->Arg(4)->Arg(8)->Arg(16);

void BM_KmeansKernelBool(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const Dataset data = synthetic_dataset(n, 4, 1);
  Dataset scaled = data;
  for (auto& v : scaled.x) v *= 0.5;
  const BoolKernel k = build_kernel_bool(quantize_dataset(scaled, FixedPointLayout(16)));
  for (auto _ : state) benchmark::DoNotOptimize(kmeans_kernel_bool(k.kernel, 3, 1));
}
BENCHMARK(BM_KmeansKernelBool)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
