#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "kernhe/arithsim.hpp"
#include "kernhe/dataset.hpp"

namespace kernhe {

// Linear-kernel matrix K[i][j] = x_i . x_j. Immutable once built.
struct KernelMatrix {
  size_t n = 0;
  std::vector<double> entries;  // row-major n x n
  uint64_t provenance = 0;      // content_hash of the source dataset
  OpCounts build_cost;

  double at(size_t i, size_t j) const { return entries[i * n + j]; }
  TrackedMatrix tracked(OpLedger& ledger) const;
};

// Worker count used when a caller passes 0: KERNHE_WORKERS if set, otherwise
// the hardware concurrency.
unsigned default_workers();

// n(n+1)/2 dot products, one per upper-triangle entry, mirrored. Entries are
// independent work items spread over `workers` threads; the result does not
// depend on the schedule.
KernelMatrix build_kernel(const Dataset& data, OpLedger& ledger, unsigned workers = 0);

// Entry (a, b) keeps K[a][b] when both points carry label j, else 0.
std::vector<double> masked_cluster_kernel(const KernelMatrix& k,
                                          const std::vector<std::vector<uint8_t>>& labels_onehot,
                                          size_t j);

class KernelCache {
 public:
  // Returns the cached matrix for identical data at no ledger cost, otherwise
  // builds and stores it.
  std::shared_ptr<const KernelMatrix> get_or_build(const Dataset& data, OpLedger& ledger,
                                                   unsigned workers = 0);
  size_t size() const;
  uint64_t hits() const;
  uint64_t misses() const;

 private:
  struct Entry {
    Dataset data;
    std::shared_ptr<const KernelMatrix> kernel;
  };
  mutable std::mutex mu_;
  std::unordered_map<uint64_t, std::vector<Entry>> store_;
  uint64_t hits_ = 0;
  uint64_t misses_ = 0;
};

namespace op_cost {
OpCounts build_kernel(size_t n, size_t d);
}

}  // namespace kernhe
