#pragma once

#include <cstddef>
#include <vector>

#include "kernhe/arithsim.hpp"

namespace kernhe {

struct SvmModel {
  std::vector<double> alpha;
  double eta = 0.01;
  int t = 10;
  std::vector<int> y;
};

// t sweeps of alpha_k += eta (1 - y_k sum_i alpha_i y_i <x_i, x_k>), k in
// order, alpha starting at zero.
SvmModel svm_general(const TrackedMatrix& data, const std::vector<int>& y, double eta, int t);
// Same recurrence reading K[i][k] instead of the dot product.
SvmModel svm_kernel(const TrackedMatrix& kernel, const std::vector<int>& y, double eta, int t);

struct PcaResult {
  std::vector<std::vector<double>> components;
  std::vector<double> eigenvalues;
  int r = 0;
};

// Covariance (1/n) D^T D of caller-centred data, then r power iterations with
// Hotelling deflation.
PcaResult pca_general(const TrackedMatrix& data, int r, const IterationBudgets& budgets);
// Power iteration on K gives (n lambda, c); the direction sum_j c_j x_j is
// scaled by 1 / sqrt(n lambda c^T c).
PcaResult pca_kernel(const TrackedMatrix& kernel, const TrackedMatrix& data, int r,
                     const IterationBudgets& budgets);

Tracked total_variance_general(const TrackedMatrix& data);
Tracked total_variance_kernel(const TrackedMatrix& kernel);

// Squared Euclidean distance.
Tracked distance_general(const TrackedVector& x, const TrackedVector& y);
// (K_ii - K_ij) + (K_jj - K_ij): additions only.
Tracked distance_kernel(const TrackedMatrix& kernel, size_t i, size_t j);

Tracked norm_general(const TrackedVector& x, int t_sqrt);
Tracked norm_kernel(const TrackedMatrix& kernel, size_t i, int t_sqrt);

Tracked similarity_general(const TrackedVector& x, const TrackedVector& y,
                           const IterationBudgets& budgets);
Tracked similarity_kernel(const TrackedMatrix& kernel, size_t i, size_t j,
                          const IterationBudgets& budgets);

// k-means under the arithmetic counting model. Cluster assignment compares
// plaintext scores and is not charged; only adds and mults are counted.
// Initial labels are i mod k; each iteration updates means, then reassigns.
std::vector<size_t> kmeans_general_arith(const TrackedMatrix& data, size_t k, int t);
// Scores p_j - 2 n_j sum_a K_ia over cluster j, which is n_j^2 times the
// squared distance minus a per-point constant.
std::vector<size_t> kmeans_kernel_arith(const TrackedMatrix& kernel, size_t k, int t);

namespace op_cost {

OpCounts svm_general(size_t n, size_t d, int t);
OpCounts svm_kernel(size_t n, int t);
OpCounts pca_general(size_t n, size_t d, int r, const IterationBudgets& b);
OpCounts pca_kernel(size_t n, size_t d, int r, const IterationBudgets& b);
OpCounts total_variance_general(size_t n, size_t d);
OpCounts total_variance_kernel(size_t n);
OpCounts distance_general(size_t d);
OpCounts distance_kernel();
OpCounts norm_general(size_t d, int t_sqrt);
OpCounts norm_kernel(int t_sqrt);
OpCounts similarity_general(size_t d, const IterationBudgets& b);
OpCounts similarity_kernel(const IterationBudgets& b);
OpCounts kmeans_general(size_t n, size_t d, size_t k, int t);
OpCounts kmeans_kernel(size_t n, size_t k, int t);

}  // namespace op_cost

}  // namespace kernhe
