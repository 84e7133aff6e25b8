// kernhe command-line front end.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kernhe/costmodel.hpp"
#include "kernhe/dataset.hpp"
#include "kernhe/errors.hpp"
#include "kernhe/mlbool.hpp"
#include "kernhe/phizer.hpp"

using namespace kernhe;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& v, std::string (*f)(T)) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f(v[i]);
  return out;
}

std::string size_str(size_t v) { return std::to_string(v); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw ValidationError("bad number '" + item + "' in --point");
    out.push_back(v);
  }
  return out;
}

// "5:15" or "5,6,9".
std::vector<size_t> parse_grid(const std::string& s) {
  std::vector<size_t> out;
  const auto colon = s.find(':');
  try {
    if (colon != std::string::npos) {
      const size_t lo = std::stoul(s.substr(0, colon));
      const size_t hi = std::stoul(s.substr(colon + 1));
      if (lo > hi) throw ValidationError("empty grid '" + s + "'");
      for (size_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      for (const auto& item : split(s, ',')) out.push_back(std::stoul(item));
    }
  } catch (const std::logic_error&) {
    throw ValidationError("bad grid '" + s + "'");
  }
  if (out.empty()) throw ValidationError("empty grid '" + s + "'");
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct Common {
  EstimateParams params;
  std::string profile;
  std::string profile_file;
  std::string backend = "arith";
  std::string output;
};

void add_params(CLI::App* app, Common& c) {
  app->add_option("-n,--n", c.params.n, "number of points")->check(CLI::PositiveNumber);
  app->add_option("-d,--d", c.params.d, "dimension")->check(CLI::PositiveNumber);
  app->add_option("-k,--k", c.params.k, "clusters or neighbours");
  app->add_option("-t,--t", c.params.t, "iterations or sweeps");
  app->add_option("-l,--l", c.params.l, "fixed-point word width (bool backend)");
  app->add_option("-s,--s", c.params.s, "number of classes (k-NN)");
  app->add_option("-r,--r", c.params.r, "principal components");
  app->add_option("--t-pow", c.params.budgets.t_pow, "power-iteration steps");
  app->add_option("--t-sqrt", c.params.budgets.t_sqrt, "square-root iterations");
  app->add_option("--t-sinv", c.params.budgets.t_sinv, "inverse iterations");
  app->add_option("--backend", c.backend, "arith, bool or plainref");
  app->add_option("--profile-file", c.profile_file, "cost profile file");
  app->add_option("-o,--output", c.output, "output path (default stdout)");
}

std::vector<CostProfile> available_profiles(const Common& c) {
  return c.profile_file.empty() ? builtin_profiles() : load_profiles(c.profile_file);
}

CostProfile resolve_profile(const Common& c, const std::string& name) {
  if (c.profile_file.empty()) return find_profile(name);
  for (auto& p : load_profiles(c.profile_file)) {
    std::string a = p.scheme;
    std::string b = name;
    for (auto* s : {&a, &b})
      for (auto& ch : *s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (a == b) return p;
  }
  throw ValidationError("profile '" + name + "' not found in " + c.profile_file);
}

std::vector<CostProfile> resolve_profiles(const Common& c, const std::string& list) {
  if (list.empty() || list == "all") return available_profiles(c);
  std::vector<CostProfile> out;
  for (const auto& name : split(list, ',')) out.push_back(resolve_profile(c, name));
  return out;
}

// ---- run -------------------------------------------------------------------

struct RunConfig {
  Common common;
  std::string algorithm;
  std::string variant = "general";
  std::string data;
  bool labels = false;
  int classes = 0;
  uint64_t seed = 1;
  double eta = 0.01;
  size_t i = 0;
  size_t j = 1;
  std::string point;
  std::string values_out;
  unsigned workers = 0;
};

Dataset load_run_dataset(const RunConfig& c, const std::string& alg) {
  if (!c.data.empty()) return ingest_dataset(c.data, c.labels);
  int classes = c.classes;
  if (classes == 0 && alg == "svm") classes = 2;
  if (classes == 0 && alg == "knn") classes = c.common.params.s;
  return synthetic_dataset(c.common.params.n, c.common.params.d, c.seed, classes);
}

int cmd_run(const RunConfig& c) {
  const std::string alg = check_algorithm(c.algorithm);
  if (c.variant != "general" && c.variant != "kernel" && c.variant != "auto") {
    throw ValidationError("--variant must be general, kernel or auto");
  }
  const bool plainref = c.common.backend == "plainref";
  const Backend backend = plainref ? Backend::boolean : parse_backend(c.common.backend);
  if (c.variant == "auto" && c.common.profile.empty()) {
    throw ValidationError("--variant auto requires --profile");
  }
  if (backend == Backend::boolean) (void)FixedPointLayout(c.common.params.l);
  if (!has_backend(alg, backend)) {
    throw UnsupportedAlgorithm(alg + " is not available on the " + c.common.backend + " backend");
  }

  Dataset data = load_run_dataset(c, alg);
  std::optional<CostProfile> profile;
  if (!c.common.profile.empty()) profile = resolve_profile(c.common, c.common.profile);

  Query q;
  q.algorithm = alg;
  q.backend = backend;
  q.params = c.common.params;
  q.params.n = data.n;
  q.params.d = data.d;
  q.dataset = "input";
  q.i = c.i;
  q.j = c.j;
  q.eta = c.eta;
  if (!c.point.empty()) q.point = parse_point(c.point);
  if (alg == "knn" && q.point.empty()) throw ValidationError("knn needs --point");

  Output out(c.common.output);
  std::ostream& os = out.stream();
  os << "command=run\nalgorithm=" << alg << "\nbackend=" << c.common.backend << "\nn=" << data.n
     << "\nd=" << data.d << "\n";

  if (plainref) {
    if (c.variant == "auto") throw ValidationError("plainref backend needs an explicit variant");
    const FixedPointLayout layout(q.params.l);
    const FixedMatrix fx = quantize_dataset(data, layout);
    const bool ker = c.variant == "kernel";
    os << "variant=" << c.variant << "\n";
    if (alg == "kmeans") {
      const std::vector<size_t> labels =
          ker ? plainref::kmeans_kernel(build_kernel_bool(fx).kernel, q.params.k, q.params.t)
              : plainref::kmeans_general(fx, q.params.k, q.params.t);
      os << "labels=" << join(labels, size_str) << "\n";
    } else {
      std::vector<int64_t> point;
      for (double v : q.point) point.push_back(quantize(v, layout));
      const std::vector<int> y = class_labels(data);
      int cls = 0;
      if (ker) {
        const FixedMatrix gram = build_kernel_bool(fx).kernel;
        FixedMatrix qm{1, data.d, point, layout};
        std::vector<int64_t> kx, diag;
        for (size_t i = 0; i < data.n; ++i) {
          int64_t acc = 0;
          for (size_t m = 0; m < data.d; ++m) {
            const int64_t p = fxref::mult(point[m], fx.at(i, m), layout);
            acc = m == 0 ? p : fxref::add(acc, p, layout);
          }
          kx.push_back(acc);
          diag.push_back(gram.at(i, i));
        }
        cls = plainref::knn_kernel(kx, diag, y, q.params.k, q.params.s, layout);
      } else {
        cls = plainref::knn_general(fx, y, point, q.params.k, q.params.s);
      }
      os << "predicted_class=" << cls << "\n";
    }
    return 0;
  }

  Phizer ph(profile.value_or(find_profile(backend == Backend::boolean ? "tfhe" : "plain")),
            c.workers);
  ph.add_dataset("input", data);
  EvalResult r;
  if (c.variant == "auto") {
    r = ph.evaluate(ph.decide({q}).front());
    os << "variant=" << to_string(r.variant) << "\nprofile=" << profile->scheme
       << "\nt_gen=" << num(r.choice.t_gen) << "\nt_ker=" << num(r.choice.t_ker)
       << "\neff=" << num(eff(r.choice.t_gen, r.choice.t_ker)) << "\ndecision=" << r.choice.decision
       << "\n";
  } else {
    r = ph.measure(q, parse_variant(c.variant));
    os << "variant=" << c.variant << "\n";
  }
  if (backend == Backend::arith) {
    os << "adds=" << r.eval_ops.adds << "\nmults=" << r.eval_ops.mults
       << "\nsqrt_ops=" << r.eval_ops.sqrt_ops << "\ninv_ops=" << r.eval_ops.inv_ops
       << "\nbuild_adds=" << r.build_ops.adds << "\nbuild_mults=" << r.build_ops.mults << "\n";
  } else {
    os << "gate_units=" << r.eval_gate_units << "\nbuild_gate_units=" << r.build_gate_units << "\n";
  }
  if (profile) {
    os << "measured_seconds=" << num(r.measured_seconds) << "\n";
    if (c.variant != "auto") {
      const ComplexityEstimate e =
          estimate(alg, r.variant, q.params, *profile, backend);
      os << "profile=" << profile->scheme << "\nestimated_seconds=" << num(e.seconds) << "\n";
    }
  }
  if (!r.values.empty()) os << "values=" << join(r.values, exact) << "\n";
  if (!r.labels.empty()) os << "labels=" << join(r.labels, size_str) << "\n";
  if (r.predicted_class) os << "predicted_class=" << r.predicted_class << "\n";

  if (!c.values_out.empty()) {
    std::ofstream vf(c.values_out);
    if (!vf) throw Error("cannot write " + c.values_out);
    for (double v : r.values) vf << exact(v) << "\n";
  }
  return 0;
}

// ---- estimate and sweep ----------------------------------------------------

const char* kCsvHeader =
    "figure,scheme,algorithm,backend,n,d,k,t,t_gen,t_ker_eval,t_build,t_ker,eff,eff_eval_only";

void csv_row(std::ostream& os, const std::string& figure, const CostProfile& p,
             const std::string& alg, Backend backend, const EstimateParams& params) {
  const ComplexityEstimate g = estimate(alg, Variant::general, params, p, backend);
  const ComplexityEstimate k = estimate(alg, Variant::kernel, params, p, backend);
  os << figure << ',' << p.scheme << ',' << g.algorithm << ',' << to_string(backend) << ','
     << params.n << ',' << params.d << ',' << params.k << ',' << params.t << ',' << num(g.seconds)
     << ',' << num(k.eval_seconds) << ',' << num(k.build_seconds) << ',' << num(k.seconds) << ','
     << num(eff(g.seconds, k.seconds)) << ',' << num(eff(g.seconds, k.eval_seconds)) << '\n';
}

struct EstimateConfig {
  Common common;
  std::string algorithm;
  std::string profiles;
  std::string d_grid;
};

int cmd_estimate(const EstimateConfig& c) {
  const Backend backend = parse_backend(c.common.backend);
  std::vector<CostProfile> profiles = resolve_profiles(c.common, c.profiles);
  const std::vector<size_t> dims = c.d_grid.empty() ? std::vector<size_t>{c.common.params.d}
                                                     : parse_grid(c.d_grid);
  Output out(c.common.output);
  std::ostream& os = out.stream();
  os << kCsvHeader << '\n';
  for (const auto& p : profiles) {
    if (backend == Backend::boolean && !p.t_gate) {
      if (c.profiles.empty() || c.profiles == "all") continue;
      throw ValidationError("profile " + p.scheme + " has no gate time for the bool backend");
    }
    for (size_t d : dims) {
      EstimateParams params = c.common.params;
      params.d = d;
      csv_row(os, "estimate", p, c.algorithm, backend, params);
    }
  }
  return 0;
}

struct SweepConfig {
  Common common;
  std::string figure;
  std::string profiles;
};

int cmd_sweep(const SweepConfig& c) {
  const std::vector<CostProfile> profiles = resolve_profiles(c.common, c.profiles);
  const std::string& fig = c.figure;
  if (fig != "fig4a" && fig != "fig4b" && fig != "fig6-style" && fig != "fig7-style") {
    throw ValidationError("unknown figure '" + fig + "' (fig4a, fig4b, fig6-style, fig7-style)");
  }
  Output out(c.common.output);
  std::ostream& os = out.stream();
  os << kCsvHeader << '\n';

  if (fig == "fig4a" || fig == "fig4b") {
    for (const auto& p : profiles) {
      for (int t = 1; t <= 10; ++t) {
        EstimateParams params;
        params.n = fig == "fig4a" ? 10 : 100;
        params.d = 784;
        params.k = 3;
        params.t = t;
        csv_row(os, fig, p, "kmeans", Backend::arith, params);
      }
    }
    return 0;
  }

  const bool ml = fig == "fig6-style";
  const std::vector<std::string> algs =
      ml ? std::vector<std::string>{"svm", "pca", "kmeans", "knn"}
         : std::vector<std::string>{"total_variance", "distance", "norm", "similarity"};
  for (const auto& alg : algs) {
    const Backend backend = alg == "knn" ? Backend::boolean : Backend::arith;
    for (const auto& p : profiles) {
      if (backend == Backend::boolean && !p.t_gate) continue;
      for (size_t d = 5; d <= 15; ++d) {
        EstimateParams params = c.common.params;
        params.n = 10;
        params.d = d;
        csv_row(os, fig, p, alg, backend, params);
      }
    }
  }
  return 0;
}

// ---- profiles --------------------------------------------------------------

int cmd_profiles(const Common& c, const std::string& write_path) {
  const std::vector<CostProfile> profiles = available_profiles(c);
  if (!write_path.empty()) store_profiles(write_path, profiles);
  Output out(c.output);
  std::ostream& os = out.stream();
  write_profiles(os, profiles);
  os << "\n# t_mult / t_add:";
  for (const auto& p : profiles) os << ' ' << p.scheme << '=' << num(p.ratio());
  os << "\n# TFHE gate time from mult: " << num(tfhe_gate_time_from_mult())
     << " s, from add: " << num(tfhe_gate_time_from_add()) << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel-method cost simulation for homomorphic ML"};
  app.require_subcommand(1);

  RunConfig run;
  auto* run_cmd = app.add_subcommand("run", "run an algorithm and report ledgers");
  run_cmd->add_option("algorithm", run.algorithm, "svm, pca, total_variance, distance, norm, "
                                                  "similarity, kmeans, knn")
      ->required();
  run_cmd->add_option("--variant", run.variant, "general, kernel or auto");
  run_cmd->add_option("--profile", run.common.profile, "plain, tfhe, ckks or bfv");
  run_cmd->add_option("--data", run.data, "CSV dataset (default: synthetic)");
  run_cmd->add_flag("--labels", run.labels, "last CSV column holds labels");
  run_cmd->add_option("--classes", run.classes, "synthetic label classes");
  run_cmd->add_option("--seed", run.seed, "synthetic data seed");
  run_cmd->add_option("--eta", run.eta, "SVM learning rate");
  run_cmd->add_option("-i,--i", run.i, "first point index");
  run_cmd->add_option("-j,--j", run.j, "second point index");
  run_cmd->add_option("--point", run.point, "k-NN query point, comma separated");
  run_cmd->add_option("--values-out", run.values_out, "write result values one per line");
  run_cmd->add_option("--workers", run.workers, "kernel build threads (0: KERNHE_WORKERS or all)");
  add_params(run_cmd, run.common);

  EstimateConfig est;
  auto* est_cmd = app.add_subcommand("estimate", "estimate t_gen, t_ker and EFF");
  est_cmd->add_option("algorithm", est.algorithm)->required();
  est_cmd->add_option("--profile", est.profiles, "comma-separated profiles (default all)");
  est_cmd->add_option("--d-grid", est.d_grid, "dimensions, e.g. 5:15 or 5,10,15");
  add_params(est_cmd, est.common);

  SweepConfig sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "emit a figure-style CSV");
  sweep_cmd->add_option("figure", sweep.figure, "fig4a, fig4b, fig6-style or fig7-style")
      ->required();
  sweep_cmd->add_option("--profile", sweep.profiles, "comma-separated profiles (default all)");
  add_params(sweep_cmd, sweep.common);

  Common prof;
  std::string write_path;
  auto* prof_cmd = app.add_subcommand("profiles", "print cost profiles");
  prof_cmd->add_option("--file", prof.profile_file, "read profiles from a file");
  prof_cmd->add_option("--write", write_path, "store the profiles to a file");
  prof_cmd->add_option("-o,--output", prof.output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*est_cmd) return cmd_estimate(est);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*prof_cmd) return cmd_profiles(prof, write_path);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
