#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kernhe/arithsim.hpp"

namespace kernhe {

// Per-operation times of one scheme, in seconds.
struct CostProfile {
  std::string scheme;
  double t_add = 0.0;
  double t_mult = 0.0;
  std::optional<double> t_gate;  // per binary-gate unit
  std::string annotation;

  void validate() const;
  double ratio() const { return t_mult / t_add; }
  double seconds(const OpCounts& ops) const;
  // Throws ValidationError when the profile has no gate time.
  double gate_seconds(uint64_t units) const;
};

// plain, TFHE, CKKS, BFV.
std::vector<CostProfile> builtin_profiles();
// Case-insensitive; "b/fv" is accepted for BFV.
CostProfile find_profile(const std::string& name);

// TFHE per-gate time implied by the mult and by the add time at word width l.
double tfhe_gate_time_from_mult(int l = 16);
double tfhe_gate_time_from_add(int l = 16);

// Records of "key = value" lines separated by blank lines; '#' starts a comment.
// Keys: scheme, t_add, t_mult, t_gate (optional), annotation (optional).
std::vector<CostProfile> read_profiles(std::istream& in, const std::string& source = "<stream>");
void write_profiles(std::ostream& out, const std::vector<CostProfile>& profiles);
std::vector<CostProfile> load_profiles(const std::string& path);
void store_profiles(const std::string& path, const std::vector<CostProfile>& profiles);

enum class Variant { general, kernel };
enum class Backend { arith, boolean };

std::string to_string(Variant v);
std::string to_string(Backend b);
Variant parse_variant(const std::string& s);
Backend parse_backend(const std::string& s);

struct EstimateParams {
  size_t n = 10;
  size_t d = 10;
  size_t k = 3;
  int t = 10;
  int l = 16;
  int s = 2;
  int r = 1;
  IterationBudgets budgets;
  // Share of the kernel build charged to this estimate; 1 means the full
  // build, 1/m when m kernel queries share one dataset.
  double build_share = 1.0;
};

// Counts for one algorithm and variant. Arithmetic estimates use `ops` and
// `build_ops`; Boolean estimates use `gate_units` and `build_gate_units`.
struct ComplexityEstimate {
  std::string algorithm;
  Variant variant = Variant::general;
  Backend backend = Backend::arith;
  OpCounts ops;
  OpCounts build_ops;
  uint64_t gate_units = 0;
  uint64_t build_gate_units = 0;
  double eval_seconds = 0.0;
  double build_seconds = 0.0;  // already scaled by build_share
  double seconds = 0.0;        // eval_seconds + build_seconds
};

// Names accepted by estimate(): svm, pca, total_variance, distance, norm,
// similarity, kmeans (both backends), knn (Boolean only).
const std::vector<std::string>& supported_algorithms();
// Canonical name; throws UnsupportedAlgorithm for anything else.
std::string check_algorithm(const std::string& algorithm);
bool has_backend(const std::string& algorithm, Backend backend);

ComplexityEstimate estimate(const std::string& algorithm, Variant variant,
                            const EstimateParams& params, const CostProfile& profile,
                            Backend backend = Backend::arith);

// t_gen / t_ker. Throws ValidationError for non-positive times.
double eff(double t_gen, double t_ker);

struct KmeansSimulation {
  OpCounts general_ops;
  OpCounts kernel_ops;  // evaluation only
  OpCounts build_ops;
  double t_gen = 0.0;
  double t_ker = 0.0;  // includes the build
  double t_build = 0.0;
  double eff = 0.0;
  double eff_eval_only = 0.0;
};

KmeansSimulation simulate_kmeans_ratio(size_t n, size_t d, size_t k, int t,
                                       const CostProfile& profile);

struct SvmHeadline {
  double t_gen = 0.0;
  double t_ker = 0.0;  // includes the build
  double t_build = 0.0;
  double eff = 0.0;
  double kernelization_fraction = 0.0;  // t_build / t_ker
};

SvmHeadline svm_headline_estimate(const CostProfile& profile, size_t n, size_t d, int t);

}  // namespace kernhe
