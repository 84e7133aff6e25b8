#include "kernhe/costmodel.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "kernhe/boolcircuits.hpp"
#include "kernhe/errors.hpp"
#include "kernhe/kernelengine.hpp"
#include "kernhe/mlarith.hpp"
#include "kernhe/mlbool.hpp"

namespace kernhe {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string canonical_algorithm(const std::string& name) {
  const std::string a = lower(name);
  if (a == "tv" || a == "variance" || a == "total-variance") return "total_variance";
  if (a == "k-means") return "kmeans";
  if (a == "k-nn") return "knn";
  if (a == "cosine") return "similarity";
  return a;
}

void reject_unsupported(const std::string& algorithm) {
  if (algorithm == "lda" || algorithm == "linear_regression" || algorithm == "linear-regression") {
    throw UnsupportedAlgorithm(algorithm +
                               ": no kernel form without matrix inversion; not supported");
  }
  const auto& known = supported_algorithms();
  if (std::find(known.begin(), known.end(), algorithm) == known.end()) {
    throw UnsupportedAlgorithm("unknown algorithm '" + algorithm + "'");
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("estimate: " + what);
}

OpCounts arith_eval(const std::string& a, Variant v, const EstimateParams& p) {
  const bool ker = v == Variant::kernel;
  if (a == "svm") return ker ? op_cost::svm_kernel(p.n, p.t) : op_cost::svm_general(p.n, p.d, p.t);
  if (a == "pca") {
    return ker ? op_cost::pca_kernel(p.n, p.d, p.r, p.budgets)
               : op_cost::pca_general(p.n, p.d, p.r, p.budgets);
  }
  if (a == "total_variance") {
    return ker ? op_cost::total_variance_kernel(p.n) : op_cost::total_variance_general(p.n, p.d);
  }
  if (a == "distance") return ker ? op_cost::distance_kernel() : op_cost::distance_general(p.d);
  if (a == "norm") {
    return ker ? op_cost::norm_kernel(p.budgets.t_sqrt)
               : op_cost::norm_general(p.d, p.budgets.t_sqrt);
  }
  if (a == "similarity") {
    return ker ? op_cost::similarity_kernel(p.budgets)
               : op_cost::similarity_general(p.d, p.budgets);
  }
  if (a == "kmeans") {
    return ker ? op_cost::kmeans_kernel(p.n, p.k, p.t) : op_cost::kmeans_general(p.n, p.d, p.k, p.t);
  }
  throw UnsupportedAlgorithm(a + " has no arithmetic model; use the Boolean backend");
}

uint64_t bool_eval(const std::string& a, Variant v, const EstimateParams& p) {
  const bool ker = v == Variant::kernel;
  if (a == "kmeans") {
    return total_units(ker ? gate_cost::kmeans_kernel(p.n, p.k, p.t, p.l)
                           : gate_cost::kmeans_general(p.n, p.d, p.k, p.t, p.l));
  }
  if (a == "knn") {
    if (!ker) return total_units(gate_cost::knn_general(p.n, p.d, p.k, p.s, p.l));
    // The query's kernel row is computed per query.
    return total_units(gate_cost::knn_kernel(p.n, p.k, p.s, p.l)) + p.n * gate_cost::dot(p.d, p.l);
  }
  throw UnsupportedAlgorithm(a + " has no Boolean model; use the arithmetic backend");
}

void validate_params(const std::string& a, const EstimateParams& p, Backend backend) {
  require(p.n >= 1 && p.d >= 1, "n and d must be >= 1");
  require(p.build_share > 0.0 && p.build_share <= 1.0, "build_share must lie in (0, 1]");
  if (a == "svm" || a == "kmeans") require(p.t >= 1, "t must be >= 1");
  if (a == "pca") {
    require(p.r >= 1 && static_cast<size_t>(p.r) <= std::min(p.n, p.d), "r must lie in [1, min(n, d)]");
  }
  if (a == "pca" || a == "norm" || a == "similarity") p.budgets.validate();
  if (a == "kmeans") require(p.k >= 2 && p.k <= p.n, "k must lie in [2, n]");
  if (a == "knn") {
    require(p.k >= 1 && p.k <= p.n, "k must lie in [1, n]");
    require(p.s >= 2, "s must be >= 2");
  }
  if (backend == Backend::boolean) (void)FixedPointLayout(p.l);
}

}  // namespace

void CostProfile::validate() const {
  if (scheme.empty()) throw ValidationError("cost profile without a scheme name");
  auto positive = [&](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("profile " + scheme + ": " + field + " must be > 0");
    }
  };
  positive(t_add, "t_add");
  positive(t_mult, "t_mult");
  if (t_gate) positive(*t_gate, "t_gate");
}

double CostProfile::seconds(const OpCounts& ops) const {
  return static_cast<double>(ops.adds) * t_add + static_cast<double>(ops.mults) * t_mult;
}

double CostProfile::gate_seconds(uint64_t units) const {
  if (!t_gate) throw ValidationError("profile " + scheme + " has no gate time");
  return static_cast<double>(units) * *t_gate;
}

double tfhe_gate_time_from_mult(int l) { return 22.95 / static_cast<double>(gate_cost::mult(l)); }
double tfhe_gate_time_from_add(int l) { return 1.06 / static_cast<double>(gate_cost::add(l)); }

std::vector<CostProfile> builtin_profiles() {
  return {
      {"plain", 3.39e-9, 3.56e-9, std::nullopt, "native double arithmetic"},
      {"TFHE", 1.06, 22.95, tfhe_gate_time_from_mult(16), "lambda=128 l=16"},
      {"CKKS", 24.85e-3, 920.75e-3, std::nullopt, "lambda=128 N=2^16 Delta=2^50 L=50"},
      {"BFV", 1.81e-3, 284.62e-3, std::nullopt, "lambda=128 L=20 n=2^15 log2(q)=780"},
  };
}

CostProfile find_profile(const std::string& name) {
  std::string key = lower(name);
  if (key == "b/fv") key = "bfv";
  for (auto& p : builtin_profiles())
    if (lower(p.scheme) == key) return p;
  throw ValidationError("unknown profile '" + name + "' (expected plain, tfhe, ckks or bfv)");
}

std::vector<CostProfile> read_profiles(std::istream& in, const std::string& source) {
  std::vector<CostProfile> out;
  CostProfile cur;
  bool open = false;
  bool has_add = false;
  bool has_mult = false;
  int line_no = 0;
  int record_line = 0;
  auto fail = [&](int line, const std::string& msg) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + msg);
  };
  auto flush = [&] {
    if (!open) return;
    if (cur.scheme.empty()) fail(record_line, "record without scheme");
    if (!has_add || !has_mult) fail(record_line, "record '" + cur.scheme + "' needs t_add and t_mult");
    try {
      cur.validate();
    } catch (const ValidationError& e) {
      fail(record_line, e.what());
    }
    out.push_back(cur);
    cur = CostProfile{};
    open = has_add = has_mult = false;
  };
  auto number = [&](const std::string& v) {
    size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      fail(line_no, "not a number: '" + v + "'");
    }
    if (used != v.size()) fail(line_no, "not a number: '" + v + "'");
    return x;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) {
      flush();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!open) record_line = line_no;
    open = true;
    if (key == "scheme") {
      cur.scheme = value;
    } else if (key == "t_add") {
      cur.t_add = number(value);
      has_add = true;
    } else if (key == "t_mult") {
      cur.t_mult = number(value);
      has_mult = true;
    } else if (key == "t_gate") {
      cur.t_gate = number(value);
    } else if (key == "annotation") {
      cur.annotation = value;
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  flush();
  if (out.empty()) throw ParseError(source + ": no profiles");
  return out;
}

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_profiles(std::ostream& out, const std::vector<CostProfile>& profiles) {
  for (size_t i = 0; i < profiles.size(); ++i) {
    const CostProfile& p = profiles[i];
    p.validate();
    if (i) out << '\n';
    out << "scheme = " << p.scheme << '\n';
    out << "t_add = " << shortest(p.t_add) << '\n';
    out << "t_mult = " << shortest(p.t_mult) << '\n';
    if (p.t_gate) out << "t_gate = " << shortest(*p.t_gate) << '\n';
    if (!p.annotation.empty()) out << "annotation = " << p.annotation << '\n';
  }
}

std::vector<CostProfile> load_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open profile file " + path);
  return read_profiles(in, path);
}

void store_profiles(const std::string& path, const std::vector<CostProfile>& profiles) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write profile file " + path);
  write_profiles(out, profiles);
}

std::string to_string(Variant v) { return v == Variant::kernel ? "kernel" : "general"; }
std::string to_string(Backend b) { return b == Backend::boolean ? "bool" : "arith"; }

Variant parse_variant(const std::string& s) {
  const std::string v = lower(s);
  if (v == "general") return Variant::general;
  if (v == "kernel") return Variant::kernel;
  throw ValidationError("unknown variant '" + s + "'");
}

Backend parse_backend(const std::string& s) {
  const std::string v = lower(s);
  if (v == "arith") return Backend::arith;
  if (v == "bool") return Backend::boolean;
  throw ValidationError("unknown backend '" + s + "'");
}

const std::vector<std::string>& supported_algorithms() {
  static const std::vector<std::string> names{"svm",  "pca",        "total_variance", "distance",
                                              "norm", "similarity", "kmeans",         "knn"};
  return names;
}

std::string check_algorithm(const std::string& algorithm) {
  const std::string a = canonical_algorithm(algorithm);
  reject_unsupported(a);
  return a;
}

bool has_backend(const std::string& algorithm, Backend backend) {
  const std::string a = check_algorithm(algorithm);
  if (backend == Backend::boolean) return a == "kmeans" || a == "knn";
  return a != "knn";
}

ComplexityEstimate estimate(const std::string& algorithm, Variant variant,
                            const EstimateParams& params, const CostProfile& profile,
                            Backend backend) {
  const std::string a = check_algorithm(algorithm);
  profile.validate();
  validate_params(a, params, backend);

  ComplexityEstimate e;
  e.algorithm = a;
  e.variant = variant;
  e.backend = backend;
  const bool ker = variant == Variant::kernel;
  if (backend == Backend::arith) {
    e.ops = arith_eval(a, variant, params);
    if (ker) e.build_ops = op_cost::build_kernel(params.n, params.d);
    e.eval_seconds = profile.seconds(e.ops);
    e.build_seconds = profile.seconds(e.build_ops) * params.build_share;
  } else {
    e.gate_units = bool_eval(a, variant, params);
    if (ker) e.build_gate_units = gate_cost::build_kernel(params.n, params.d, params.l);
    e.eval_seconds = profile.gate_seconds(e.gate_units);
    e.build_seconds = profile.gate_seconds(e.build_gate_units) * params.build_share;
  }
  e.seconds = e.eval_seconds + e.build_seconds;
  return e;
}

double eff(double t_gen, double t_ker) {
  if (!(t_gen > 0.0) || !(t_ker > 0.0)) throw ValidationError("eff: times must be positive");
  return t_gen / t_ker;
}

KmeansSimulation simulate_kmeans_ratio(size_t n, size_t d, size_t k, int t,
                                       const CostProfile& profile) {
  profile.validate();
  if (n < 1 || d < 1 || k < 1 || t < 1) throw ValidationError("simulate_kmeans_ratio: bad sizes");
  KmeansSimulation s;
  s.general_ops = op_cost::kmeans_general(n, d, k, t);
  s.kernel_ops = op_cost::kmeans_kernel(n, k, t);
  s.build_ops = op_cost::build_kernel(n, d);
  s.t_gen = profile.seconds(s.general_ops);
  s.t_build = profile.seconds(s.build_ops);
  s.t_ker = profile.seconds(s.kernel_ops) + s.t_build;
  s.eff = eff(s.t_gen, s.t_ker);
  s.eff_eval_only = eff(s.t_gen, profile.seconds(s.kernel_ops));
  return s;
}

SvmHeadline svm_headline_estimate(const CostProfile& profile, size_t n, size_t d, int t) {
  profile.validate();
  if (n < 1 || d < 1 || t < 1) throw ValidationError("svm_headline_estimate: bad sizes");
  SvmHeadline h;
  h.t_gen = profile.seconds(op_cost::svm_general(n, d, t));
  h.t_build = profile.seconds(op_cost::build_kernel(n, d));
  h.t_ker = profile.seconds(op_cost::svm_kernel(n, t)) + h.t_build;
  h.eff = eff(h.t_gen, h.t_ker);
  h.kernelization_fraction = h.t_build / h.t_ker;
  return h;
}

}  // namespace kernhe
