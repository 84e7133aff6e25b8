#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "kernhe/costmodel.hpp"
#include "kernhe/dataset.hpp"
#include "kernhe/gatesim.hpp"
#include "kernhe/kernelengine.hpp"
#include "kernhe/mlbool.hpp"

namespace kernhe {

struct Query {
  std::string algorithm;
  Backend backend = Backend::arith;
  EstimateParams params;
  std::string dataset;  // name in the Phizer store
  size_t i = 0;         // distance, norm, similarity
  size_t j = 1;         // distance, similarity
  double eta = 0.01;    // svm
  std::vector<double> point;  // knn query point
};

struct CircuitChoice {
  Query query;
  double t_gen = 0.0;
  double t_ker = 0.0;
  double build_share = 1.0;  // share of the kernel build inside t_ker
  int decision = 0;          // 1 kernel, 0 general
};

double general_perf(const Query& q, const CostProfile& profile);
double kernel_perf(const Query& q, const CostProfile& profile, double build_share = 1.0);
// 1 iff t_ker < t_gen; ties go to the general circuit.
int kernel_decision(double t_gen, double t_ker);

// Decides every query. A dataset with m >= 2 kernel decisions charges each of
// them 1/m of its build; m is the fixed point of deciding under that share.
std::vector<CircuitChoice> decide_batch(const std::vector<Query>& queries,
                                        const CostProfile& profile);

struct EvalResult {
  CircuitChoice choice;
  Variant variant = Variant::general;
  OpCounts eval_ops;
  OpCounts build_ops;  // measured when the kernel was built
  uint64_t eval_gate_units = 0;
  uint64_t build_gate_units = 0;
  bool cache_hit = false;
  double measured_seconds = 0.0;  // eval + build * share under the profile
  std::vector<double> values;
  std::vector<size_t> labels;
  int predicted_class = 0;
};

class Phizer {
 public:
  explicit Phizer(CostProfile profile, unsigned workers = 0);

  void add_dataset(const std::string& name, Dataset data);
  const Dataset& dataset(const std::string& name) const;
  const CostProfile& profile() const { return profile_; }

  // n and d of every query are taken from its dataset.
  std::vector<CircuitChoice> decide(std::vector<Query> queries) const;
  EvalResult evaluate(const CircuitChoice& choice);
  // Runs one variant regardless of the decision; the build is charged at
  // `build_share`.
  EvalResult measure(const Query& q, Variant variant, double build_share = 1.0);
  std::vector<EvalResult> run(const std::vector<Query>& queries);

  const KernelCache& cache() const { return cache_; }
  size_t bool_cache_size() const { return bool_cache_.size(); }

 private:
  Query bind(Query q) const;
  std::shared_ptr<const BoolKernel> bool_kernel(const std::string& name, int l, bool& hit);

  CostProfile profile_;
  unsigned workers_;
  std::map<std::string, Dataset> datasets_;
  KernelCache cache_;
  std::map<std::pair<std::string, int>, std::shared_ptr<const BoolKernel>> bool_cache_;
};

// SVM labels: {-1, +1} as given, or classes {1, 2} mapped to +1 and -1.
std::vector<int> svm_labels(const Dataset& data);
// k-NN labels: positive integer classes.
std::vector<int> class_labels(const Dataset& data);

}  // namespace kernhe
