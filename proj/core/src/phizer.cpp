#include "kernhe/phizer.hpp"

#include <cmath>

#include "kernhe/boolcircuits.hpp"
#include "kernhe/errors.hpp"
#include "kernhe/mlarith.hpp"

namespace kernhe {

namespace {

std::string group_key(const Query& q) {
  std::string key = q.dataset + "|" + to_string(q.backend);
  if (q.backend == Backend::boolean) key += "|" + std::to_string(q.params.l);
  return key;
}

std::vector<double> flatten(const PcaResult& r) {
  std::vector<double> out = r.eigenvalues;
  for (const auto& c : r.components) out.insert(out.end(), c.begin(), c.end());
  return out;
}

void check_pair(const Query& q, size_t n, bool needs_j) {
  if (q.i >= n || (needs_j && q.j >= n)) {
    throw ShapeError(q.algorithm + ": point index out of range for n = " + std::to_string(n));
  }
}

// Query row K(x, x_i) from mult and add circuits.
std::vector<int64_t> kernel_row_bool(const FixedMatrix& data, const std::vector<int64_t>& point,
                                     GateLedger& ledger) {
  std::vector<WordCipher> q;
  for (int64_t v : point) q.push_back(encrypt_raw(ledger, v, data.layout));
  std::vector<int64_t> row;
  for (size_t i = 0; i < data.rows; ++i) {
    WordCipher acc;
    for (size_t m = 0; m < data.cols; ++m) {
      const WordCipher p = mult(q[m], encrypt_raw(ledger, data.at(i, m), data.layout));
      acc = m == 0 ? p : add(acc, p);
    }
    row.push_back(decrypt_raw(acc));
  }
  return row;
}

}  // namespace

double general_perf(const Query& q, const CostProfile& profile) {
  return estimate(q.algorithm, Variant::general, q.params, profile, q.backend).seconds;
}

double kernel_perf(const Query& q, const CostProfile& profile, double build_share) {
  EstimateParams p = q.params;
  p.build_share = build_share;
  return estimate(q.algorithm, Variant::kernel, p, profile, q.backend).seconds;
}

int kernel_decision(double t_gen, double t_ker) { return t_ker < t_gen ? 1 : 0; }

std::vector<CircuitChoice> decide_batch(const std::vector<Query>& queries,
                                        const CostProfile& profile) {
  std::vector<CircuitChoice> out(queries.size());
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < queries.size(); ++i) {
    out[i].query = queries[i];
    out[i].t_gen = general_perf(queries[i], profile);
    groups[group_key(queries[i])].push_back(i);
  }

  for (const auto& [key, idx] : groups) {
    // Each query's decision is monotone in its share, so shrinking m from the
    // group size reaches the largest self-consistent set of kernel decisions.
    size_t m = idx.size();
    while (true) {
      const double share = m >= 2 ? 1.0 / static_cast<double>(m) : 1.0;
      size_t c = 0;
      for (size_t i : idx) c += kernel_decision(out[i].t_gen, kernel_perf(queries[i], profile, share));
      if (c >= m) break;
      m = c;
    }
    for (size_t i : idx) {
      const double if_kernel = 1.0 / static_cast<double>(std::max<size_t>(m, 1));
      const double if_joined = 1.0 / static_cast<double>(m + 1);
      double share = if_kernel;
      double t_ker = kernel_perf(queries[i], profile, share);
      if (!kernel_decision(out[i].t_gen, t_ker) || m == 0) {
        share = if_joined;
        t_ker = kernel_perf(queries[i], profile, share);
      }
      out[i].build_share = share;
      out[i].t_ker = t_ker;
      out[i].decision = kernel_decision(out[i].t_gen, t_ker);
    }
  }
  return out;
}

std::vector<int> svm_labels(const Dataset& data) {
  if (!data.y) throw ValidationError("svm needs a labelled dataset");
  std::vector<int> y;
  bool pm = true;
  bool classes = true;
  for (double v : *data.y) {
    pm = pm && (v == 1.0 || v == -1.0);
    classes = classes && (v == 1.0 || v == 2.0);
  }
  if (!pm && !classes) throw ValidationError("svm labels must be -1/+1 or classes 1/2");
  for (double v : *data.y) y.push_back(pm ? static_cast<int>(v) : (v == 1.0 ? 1 : -1));
  return y;
}

std::vector<int> class_labels(const Dataset& data) {
  if (!data.y) throw ValidationError("k-NN needs a labelled dataset");
  std::vector<int> y;
  for (double v : *data.y) {
    if (v < 1.0 || v != std::floor(v)) throw ValidationError("k-NN labels must be classes 1..s");
    y.push_back(static_cast<int>(v));
  }
  return y;
}

Phizer::Phizer(CostProfile profile, unsigned workers)
    : profile_(std::move(profile)), workers_(workers ? workers : default_workers()) {
  profile_.validate();
}

void Phizer::add_dataset(const std::string& name, Dataset data) {
  data.validate();
  datasets_[name] = std::move(data);
}

const Dataset& Phizer::dataset(const std::string& name) const {
  const auto it = datasets_.find(name);
  if (it == datasets_.end()) throw ValidationError("unknown dataset '" + name + "'");
  return it->second;
}

Query Phizer::bind(Query q) const {
  const Dataset& data = dataset(q.dataset);
  q.params.n = data.n;
  q.params.d = data.d;
  return q;
}

std::vector<CircuitChoice> Phizer::decide(std::vector<Query> queries) const {
  for (auto& q : queries) q = bind(std::move(q));
  return decide_batch(queries, profile_);
}

std::shared_ptr<const BoolKernel> Phizer::bool_kernel(const std::string& name, int l, bool& hit) {
  const auto key = std::make_pair(name, l);
  const auto it = bool_cache_.find(key);
  hit = it != bool_cache_.end();
  if (hit) return it->second;
  auto k = std::make_shared<const BoolKernel>(
      build_kernel_bool(quantize_dataset(dataset(name), FixedPointLayout(l))));
  bool_cache_[key] = k;
  return k;
}

EvalResult Phizer::measure(const Query& query, Variant variant, double build_share) {
  const Query q = bind(query);
  const std::string alg = estimate(q.algorithm, variant, q.params, profile_, q.backend).algorithm;
  const Dataset& data = dataset(q.dataset);
  const EstimateParams& p = q.params;
  const bool ker = variant == Variant::kernel;

  EvalResult r;
  r.variant = variant;

  if (q.backend == Backend::boolean) {
    const FixedPointLayout layout(p.l);
    const FixedMatrix fx = quantize_dataset(data, layout);
    std::shared_ptr<const BoolKernel> bk;
    if (ker) {
      bk = bool_kernel(q.dataset, p.l, r.cache_hit);
      r.build_gate_units = bk->cost.binary_gate_units();
    }
    if (alg == "kmeans") {
      const BoolRunReport rep =
          ker ? kmeans_kernel_bool(bk->kernel, p.k, p.t) : kmeans_general_bool(fx, p.k, p.t);
      r.labels = rep.labels;
      r.eval_gate_units = rep.total.binary_gate_units();
    } else {
      const std::vector<int> y = class_labels(data);
      if (q.point.size() != data.d) throw ShapeError("knn: query point length does not match d");
      std::vector<int64_t> point;
      for (double v : q.point) point.push_back(quantize(v, layout));
      BoolRunReport rep;
      if (ker) {
        GateLedger row_ledger;
        const std::vector<int64_t> kx = kernel_row_bool(fx, point, row_ledger);
        std::vector<int64_t> diag;
        for (size_t i = 0; i < data.n; ++i) diag.push_back(bk->kernel.at(i, i));
        rep = knn_kernel_bool(kx, diag, y, p.k, p.s, layout);
        r.eval_gate_units = row_ledger.binary_gate_units();
      } else {
        rep = knn_general_bool(fx, y, point, p.k, p.s);
      }
      r.predicted_class = rep.predicted_class;
      r.eval_gate_units += rep.total.binary_gate_units();
    }
    r.measured_seconds = profile_.gate_seconds(r.eval_gate_units) +
                         profile_.gate_seconds(r.build_gate_units) * build_share;
    return r;
  }

  OpLedger build_ledger;
  OpLedger ledger;
  std::shared_ptr<const KernelMatrix> km;
  if (ker) {
    const uint64_t before = cache_.hits();
    km = cache_.get_or_build(data, build_ledger, workers_);
    r.cache_hit = cache_.hits() > before;
    r.build_ops = km->build_cost;
  }
  const TrackedMatrix x(ledger, data.n, data.d, data.x);
  const TrackedMatrix kt = ker ? km->tracked(ledger) : TrackedMatrix{};
  const OpCounts start = ledger.snapshot();

  if (alg == "svm") {
    const std::vector<int> y = svm_labels(data);
    r.values = (ker ? svm_kernel(kt, y, q.eta, p.t) : svm_general(x, y, q.eta, p.t)).alpha;
  } else if (alg == "pca") {
    r.values = flatten(ker ? pca_kernel(kt, x, p.r, p.budgets) : pca_general(x, p.r, p.budgets));
  } else if (alg == "total_variance") {
    r.values = {(ker ? total_variance_kernel(kt) : total_variance_general(x)).value()};
  } else if (alg == "distance") {
    check_pair(q, data.n, true);
    r.values = {(ker ? distance_kernel(kt, q.i, q.j) : distance_general(x.row(q.i), x.row(q.j)))
                    .value()};
  } else if (alg == "norm") {
    check_pair(q, data.n, false);
    r.values = {(ker ? norm_kernel(kt, q.i, p.budgets.t_sqrt)
                     : norm_general(x.row(q.i), p.budgets.t_sqrt))
                    .value()};
  } else if (alg == "similarity") {
    check_pair(q, data.n, true);
    r.values = {(ker ? similarity_kernel(kt, q.i, q.j, p.budgets)
                     : similarity_general(x.row(q.i), x.row(q.j), p.budgets))
                    .value()};
  } else if (alg == "kmeans") {
    r.labels = ker ? kmeans_kernel_arith(kt, p.k, p.t) : kmeans_general_arith(x, p.k, p.t);
  } else {
    throw UnsupportedAlgorithm(alg + " has no arithmetic evaluation");
  }
  r.eval_ops = diff(start, ledger.snapshot());
  r.measured_seconds = profile_.seconds(r.eval_ops) + profile_.seconds(r.build_ops) * build_share;
  return r;
}

EvalResult Phizer::evaluate(const CircuitChoice& choice) {
  EvalResult r = measure(choice.query, choice.decision ? Variant::kernel : Variant::general,
                         choice.build_share);
  r.choice = choice;
  return r;
}

std::vector<EvalResult> Phizer::run(const std::vector<Query>& queries) {
  std::vector<EvalResult> out;
  for (const auto& c : decide(queries)) out.push_back(evaluate(c));
  return out;
}

}  // namespace kernhe
