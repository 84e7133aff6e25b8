#include <benchmark/benchmark.h>

#include "kernhe/kernelengine.hpp"
#include "kernhe/mlarith.hpp"

using namespace kernhe;

namespace {

// Args: n, d, workers.
void BM_BuildKernel(benchmark::State& state) {
  const Dataset data = synthetic_dataset(static_cast<size_t>(state.range(0)),
                                         static_cast<size_t>(state.range(1)), 3);
  const unsigned workers = static_cast<unsigned>(state.range(2));
  for (auto _ : state) {
    OpLedger ledger;
    benchmark::DoNotOptimize(build_kernel(data, ledger, workers));
  }
}
BENCHMARK(BM_BuildKernel)
    ->Args({10, 784, 1})
    ->Args({100, 784, 1})
    ->Args({100, 784, 4})
    ->Unit(benchmark::kMillisecond);

void BM_Svm(benchmark::State& state) {
  const bool kernel = state.range(0) != 0;
  const Dataset data = synthetic_dataset(10, 784, 4);
  std::vector<int> y(10);
  for (size_t i = 0; i < 10; ++i) y[i] = i % 2 ? 1 : -1;
  OpLedger ledger;
  const KernelMatrix km = build_kernel(data, ledger, 1);
  const TrackedMatrix x(ledger, 10, 784, data.x);
  const TrackedMatrix kt = km.tracked(ledger);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel ? svm_kernel(kt, y, 0.01, 10) : svm_general(x, y, 0.01, 10));
}
BENCHMARK(BM_Svm)->Arg(0)->Arg(1);

}  // namespace
