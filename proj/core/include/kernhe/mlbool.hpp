#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kernhe/boolcircuits.hpp"
#include "kernhe/dataset.hpp"
#include "kernhe/fixedpoint.hpp"
#include "kernhe/gatesim.hpp"

namespace kernhe {

// Row-major grid of raw fixed-point values.
struct FixedMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<int64_t> raw;
  FixedPointLayout layout;

  int64_t at(size_t i, size_t j) const { return raw[i * cols + j]; }
  std::vector<int64_t> row(size_t i) const;

  // Throws RangeError if any value does not fit the layout.
  static FixedMatrix quantize(const std::vector<double>& values, size_t rows, size_t cols,
                              const FixedPointLayout& layout);
};

FixedMatrix quantize_dataset(const Dataset& data, const FixedPointLayout& layout);

struct PhaseCost {
  std::string name;
  GateCounts gates;
};

struct BoolRunReport {
  std::vector<size_t> labels;  // k-means: cluster index per point, 0-based
  int predicted_class = 0;     // k-NN: 1..s
  int iterations = 0;
  GateCounts total;
  std::vector<PhaseCost> phases;  // first-seen order; totals sum to `total`

  GateCounts phase(std::string_view name) const;
  uint64_t phase_units(std::string_view name) const { return phase(name).binary_gate_units(); }
};

// Point i starts in cluster i mod k, or in a seeded uniform cluster.
std::vector<size_t> initial_labels(size_t n, size_t k, std::optional<uint64_t> seed = {});

struct BoolKernel {
  FixedMatrix kernel;
  GateCounts cost;
};

// K[i][j] = x_i . x_j from mult and add circuits, upper triangle mirrored.
BoolKernel build_kernel_bool(const FixedMatrix& data);

// Word (a, b) keeps K[a][b] when point b carries the label. n^2 l gates.
std::vector<WordCipher> column_masked_kernel_bool(const std::vector<WordCipher>& kernel,
                                                  const std::vector<SimBit>& label_column);
// Row-masks a column-masked kernel: word (a, b) keeps K[a][b] when both points
// carry the label. n^2 l gates.
std::vector<WordCipher> masked_cluster_kernel_bool(const std::vector<WordCipher>& column_masked,
                                                   const std::vector<SimBit>& label_column);

// An empty `init` means initial_labels(n, k).
// Phases: extract, mean, distance, argmin, tiebreak.
BoolRunReport kmeans_general_bool(const FixedMatrix& data, size_t k, int t,
                                  const std::vector<size_t>& init = {});
// Scores p_j - 2 n_j sum_{a in j} K(i, a), masks hoisted per (iteration, j).
// The row sum uses the column-masked kernel so that points outside cluster j
// still see their affinity to it.
// Phases: mask, count, score, scale, argmin, tiebreak.
BoolRunReport kmeans_kernel_bool(const FixedMatrix& kernel, size_t k, int t,
                                 const std::vector<size_t>& init = {});
// Labels are classes 1..s. Phases: distance, sort, count, majority, tiebreak.
BoolRunReport knn_general_bool(const FixedMatrix& data, const std::vector<int>& y,
                               const std::vector<int64_t>& query, size_t k, int s);
// Distances -2 K(x, x_i) + K(x_i, x_i) from the query row and the diagonal.
BoolRunReport knn_kernel_bool(const std::vector<int64_t>& kx, const std::vector<int64_t>& kdiag,
                              const std::vector<int>& y, size_t k, int s,
                              const FixedPointLayout& layout);

// The same algorithms on raw integers through fxref.
namespace plainref {
std::vector<size_t> kmeans_general(const FixedMatrix& data, size_t k, int t,
                                   const std::vector<size_t>& init = {});
std::vector<size_t> kmeans_kernel(const FixedMatrix& kernel, size_t k, int t,
                                  const std::vector<size_t>& init = {});
int knn_general(const FixedMatrix& data, const std::vector<int>& y,
                const std::vector<int64_t>& query, size_t k, int s);
int knn_kernel(const std::vector<int64_t>& kx, const std::vector<int64_t>& kdiag,
               const std::vector<int>& y, size_t k, int s, const FixedPointLayout& layout);
// Stable ascending order produced by the fixed bubble-sort schedule.
std::vector<size_t> sort_order(const std::vector<int64_t>& values);
}  // namespace plainref

struct PhaseUnits {
  std::string name;
  uint64_t units = 0;
};

uint64_t total_units(const std::vector<PhaseUnits>& phases);

namespace gate_cost {
uint64_t build_kernel(size_t n, size_t d, int l);
uint64_t dot(size_t d, int l);
std::vector<PhaseUnits> kmeans_general(size_t n, size_t d, size_t k, int t, int l);
std::vector<PhaseUnits> kmeans_kernel(size_t n, size_t k, int t, int l);
std::vector<PhaseUnits> knn_general(size_t n, size_t d, size_t k, int s, int l);
std::vector<PhaseUnits> knn_kernel(size_t n, size_t k, int s, int l);
// Sort, count and majority phases common to both k-NN paths.
uint64_t knn_shared(size_t n, size_t k, int s, int l);
}  // namespace gate_cost

}  // namespace kernhe
