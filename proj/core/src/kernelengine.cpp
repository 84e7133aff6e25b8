#include "kernhe/kernelengine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "kernhe/errors.hpp"

namespace kernhe {

TrackedMatrix KernelMatrix::tracked(OpLedger& ledger) const {
  return TrackedMatrix(ledger, n, n, entries);
}

unsigned default_workers() {
  if (const char* env = std::getenv("KERNHE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

KernelMatrix build_kernel(const Dataset& data, OpLedger& ledger, unsigned workers) {
  data.validate();
  const size_t n = data.n;
  std::vector<std::pair<size_t, size_t>> items;
  items.reserve(n * (n + 1) / 2);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) items.emplace_back(i, j);

  std::vector<TrackedVector> rows;
  rows.reserve(n);
  for (size_t i = 0; i < n; ++i) rows.emplace_back(ledger, data.row(i));

  KernelMatrix k;
  k.n = n;
  k.entries.assign(n * n, 0.0);
  k.provenance = content_hash(data);

  const OpCounts before = ledger.snapshot();
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t idx = next.fetch_add(1); idx < items.size(); idx = next.fetch_add(1)) {
      const auto [i, j] = items[idx];
      const double v = dot(rows[i], rows[j]).value();
      k.entries[i * n + j] = v;
      k.entries[j * n + i] = v;
    }
  };
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<size_t>(workers, items.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  k.build_cost = diff(before, ledger.snapshot());
  return k;
}

std::vector<double> masked_cluster_kernel(const KernelMatrix& k,
                                          const std::vector<std::vector<uint8_t>>& labels_onehot,
                                          size_t j) {
  if (labels_onehot.size() != k.n) throw ShapeError("label grid has wrong number of rows");
  for (const auto& row : labels_onehot) {
    if (j >= row.size()) throw ShapeError("cluster index out of range for label grid");
  }
  std::vector<double> out(k.n * k.n, 0.0);
  for (size_t a = 0; a < k.n; ++a)
    for (size_t b = 0; b < k.n; ++b)
      if (labels_onehot[a][j] && labels_onehot[b][j]) out[a * k.n + b] = k.at(a, b);
  return out;
}

std::shared_ptr<const KernelMatrix> KernelCache::get_or_build(const Dataset& data,
                                                              OpLedger& ledger,
                                                              unsigned workers) {
  const uint64_t key = content_hash(data);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = store_.find(key);
    if (it != store_.end()) {
      for (const auto& e : it->second) {
        if (e.data.n == data.n && e.data.d == data.d && e.data.x == data.x) {
          ++hits_;
          return e.kernel;
        }
      }
    }
  }
  auto built = std::make_shared<const KernelMatrix>(build_kernel(data, ledger, workers));
  std::lock_guard<std::mutex> lock(mu_);
  // Another thread may have stored the same data meanwhile; keep the first.
  for (const auto& e : store_[key]) {
    if (e.data.n == data.n && e.data.d == data.d && e.data.x == data.x) return e.kernel;
  }
  ++misses_;
  store_[key].push_back({data, built});
  return built;
}

size_t KernelCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  size_t total = 0;
  for (const auto& [key, entries] : store_) total += entries.size();
  return total;
}

uint64_t KernelCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

uint64_t KernelCache::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

namespace op_cost {
OpCounts build_kernel(size_t n, size_t d) { return dot(d) * (n * (n + 1) / 2); }
}  // namespace op_cost

}  // namespace kernhe
