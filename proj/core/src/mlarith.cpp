#include "kernhe/mlarith.hpp"

#include <limits>
#include <string>

#include "kernhe/errors.hpp"

namespace kernhe {

namespace {

void check_svm_inputs(size_t n, const std::vector<int>& y, int t) {
  if (n == 0) throw ShapeError("svm: empty dataset");
  if (y.size() != n) throw ShapeError("svm: label count does not match n");
  for (int v : y) {
    if (v != 1 && v != -1) throw ValidationError("svm: labels must be -1 or +1");
  }
  if (t < 1) throw ValidationError("svm: sweep count must be >= 1");
}

void check_square(const TrackedMatrix& k, const char* what) {
  if (k.rows() == 0 || k.rows() != k.cols()) {
    throw ShapeError(std::string(what) + ": kernel matrix must be n x n");
  }
}

void check_index(const TrackedMatrix& k, size_t i) {
  if (i >= k.rows()) throw ShapeError("kernel index " + std::to_string(i) + " out of range");
}

template <typename Entry>
SvmModel svm_loop(OpLedger& ledger, size_t n, const std::vector<int>& y, double eta, int t,
                  Entry entry) {
  TrackedVector alpha(ledger, n);
  for (int sweep = 0; sweep < t; ++sweep) {
    for (size_t k = 0; k < n; ++k) {
      Tracked s = (alpha.at(0) * y[0]) * entry(0, k);
      for (size_t i = 1; i < n; ++i) s = s + (alpha.at(i) * y[i]) * entry(i, k);
      const Tracked g = 1.0 - s * y[k];
      alpha.set(k, alpha.at(k) + g * eta);
    }
  }
  return {alpha.values(), eta, t, y};
}

TrackedMatrix deflate(const TrackedMatrix& m, const EigenPair& ep) {
  const size_t n = m.rows();
  TrackedVector lv(m.ledger(), n);
  for (size_t i = 0; i < n; ++i) lv.set(i, ep.eigenvector.at(i) * ep.eigenvalue);
  TrackedMatrix out(m.ledger(), n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) out.set(a, b, m.at(a, b) - lv.at(a) * ep.eigenvector.at(b));
  return out;
}

void check_rank(int r, size_t limit) {
  if (r < 1 || static_cast<size_t>(r) > limit) {
    throw ValidationError("pca: r must be in [1, " + std::to_string(limit) + "], got " +
                          std::to_string(r));
  }
}

Tracked cosine(const Tracked& kxy, const Tracked& kxx, const Tracked& kyy,
               const IterationBudgets& b) {
  if (!(kxx.value() > 0.0) || !(kyy.value() > 0.0)) {
    throw DomainError("similarity of a zero-norm vector");
  }
  const Tracked den = sqrt_scaled(kxx, b.t_sqrt) * sqrt_scaled(kyy, b.t_sqrt);
  return kxy * inverse_scaled(den, b.t_sinv);
}

void check_kmeans(size_t n, size_t k, int t) {
  if (k < 2) throw ValidationError("k-means needs k >= 2");
  if (k > n) throw ValidationError("k-means needs k <= n");
  if (t < 1) throw ValidationError("k-means needs t >= 1");
}

size_t argmin_index(const std::vector<double>& scores) {
  size_t best = 0;
  for (size_t j = 1; j < scores.size(); ++j)
    if (scores[j] < scores[best]) best = j;
  return best;
}

}  // namespace

SvmModel svm_general(const TrackedMatrix& data, const std::vector<int>& y, double eta, int t) {
  check_svm_inputs(data.rows(), y, t);
  std::vector<TrackedVector> rows;
  for (size_t i = 0; i < data.rows(); ++i) rows.push_back(data.row(i));
  return svm_loop(data.ledger(), data.rows(), y, eta, t,
                  [&](size_t i, size_t k) { return dot(rows[i], rows[k]); });
}

SvmModel svm_kernel(const TrackedMatrix& kernel, const std::vector<int>& y, double eta, int t) {
  check_square(kernel, "svm_kernel");
  check_svm_inputs(kernel.rows(), y, t);
  return svm_loop(kernel.ledger(), kernel.rows(), y, eta, t,
                  [&](size_t i, size_t k) { return kernel.at(i, k); });
}

PcaResult pca_general(const TrackedMatrix& data, int r, const IterationBudgets& budgets) {
  budgets.validate();
  const size_t n = data.rows();
  const size_t d = data.cols();
  if (n == 0 || d == 0) throw ShapeError("pca: empty dataset");
  check_rank(r, std::min(n, d));

  const TrackedMatrix gram = matmul(data.transpose(), data);
  TrackedMatrix cov(data.ledger(), d, d);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) cov.set(a, b, gram.at(a, b) * inv_n);

  PcaResult out;
  out.r = r;
  for (int c = 0; c < r; ++c) {
    const EigenPair ep = power_iteration(cov, budgets);
    out.eigenvalues.push_back(ep.eigenvalue.value());
    out.components.push_back(ep.eigenvector.values());
    if (c + 1 < r) cov = deflate(cov, ep);
  }
  return out;
}

PcaResult pca_kernel(const TrackedMatrix& kernel, const TrackedMatrix& data, int r,
                     const IterationBudgets& budgets) {
  budgets.validate();
  check_square(kernel, "pca_kernel");
  const size_t n = kernel.rows();
  if (data.rows() != n) throw ShapeError("pca_kernel: data rows do not match kernel size");
  const size_t d = data.cols();
  check_rank(r, std::min(n, d));

  const TrackedMatrix columns = data.transpose();
  const double inv_n = 1.0 / static_cast<double>(n);
  TrackedMatrix km = kernel;
  PcaResult out;
  out.r = r;
  for (int c = 0; c < r; ++c) {
    const EigenPair ep = power_iteration(km, budgets);
    if (c + 1 < r) km = deflate(km, ep);

    const TrackedVector& coef = ep.eigenvector;
    const TrackedVector u = matvec(columns, coef);
    const Tracked scale = ep.eigenvalue * dot(coef, coef);
    const Tracked inv = inverse_scaled(sqrt_scaled(scale, budgets.t_sqrt), budgets.t_sinv);
    std::vector<double> direction(d);
    for (size_t j = 0; j < d; ++j) direction[j] = (u.at(j) * inv).value();
    out.components.push_back(std::move(direction));
    out.eigenvalues.push_back((ep.eigenvalue * inv_n).value());
  }
  return out;
}

Tracked total_variance_general(const TrackedMatrix& data) {
  const size_t n = data.rows();
  const size_t d = data.cols();
  if (n == 0 || d == 0) throw ShapeError("total variance: empty dataset");
  const double inv_n = 1.0 / static_cast<double>(n);

  TrackedVector mean(data.ledger(), d);
  for (size_t j = 0; j < d; ++j) {
    Tracked s = data.at(0, j);
    for (size_t i = 1; i < n; ++i) s = s + data.at(i, j);
    mean.set(j, s * inv_n);
  }
  Tracked total;
  for (size_t i = 0; i < n; ++i) {
    TrackedVector dev(data.ledger(), d);
    for (size_t j = 0; j < d; ++j) dev.set(j, data.at(i, j) - mean.at(j));
    const Tracked sq = dot(dev, dev);
    total = i == 0 ? sq : total + sq;
  }
  return total * inv_n;
}

Tracked total_variance_kernel(const TrackedMatrix& kernel) {
  check_square(kernel, "total_variance_kernel");
  const size_t n = kernel.rows();
  const double nn = static_cast<double>(n);
  Tracked diag = kernel.at(0, 0);
  for (size_t i = 1; i < n; ++i) diag = diag + kernel.at(i, i);
  Tracked all;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) all = (i == 0 && j == 0) ? kernel.at(0, 0) : all + kernel.at(i, j);
  return diag * (1.0 / nn) - all * (1.0 / (nn * nn));
}

Tracked distance_general(const TrackedVector& x, const TrackedVector& y) {
  if (x.size() != y.size()) throw ShapeError("distance: length mismatch");
  if (x.size() == 0) throw ShapeError("distance: empty vectors");
  TrackedVector dev(x.ledger(), x.size());
  for (size_t j = 0; j < x.size(); ++j) dev.set(j, x.at(j) - y.at(j));
  return dot(dev, dev);
}

Tracked distance_kernel(const TrackedMatrix& kernel, size_t i, size_t j) {
  check_square(kernel, "distance_kernel");
  check_index(kernel, i);
  check_index(kernel, j);
  return (kernel.at(i, i) - kernel.at(i, j)) + (kernel.at(j, j) - kernel.at(i, j));
}

Tracked norm_general(const TrackedVector& x, int t_sqrt) {
  return sqrt_scaled(dot(x, x), t_sqrt);
}

Tracked norm_kernel(const TrackedMatrix& kernel, size_t i, int t_sqrt) {
  check_square(kernel, "norm_kernel");
  check_index(kernel, i);
  return sqrt_scaled(kernel.at(i, i), t_sqrt);
}

Tracked similarity_general(const TrackedVector& x, const TrackedVector& y,
                           const IterationBudgets& budgets) {
  const Tracked kxy = dot(x, y);
  const Tracked kxx = dot(x, x);
  const Tracked kyy = dot(y, y);
  return cosine(kxy, kxx, kyy, budgets);
}

Tracked similarity_kernel(const TrackedMatrix& kernel, size_t i, size_t j,
                          const IterationBudgets& budgets) {
  check_square(kernel, "similarity_kernel");
  check_index(kernel, i);
  check_index(kernel, j);
  return cosine(kernel.at(i, j), kernel.at(i, i), kernel.at(j, j), budgets);
}

std::vector<size_t> kmeans_general_arith(const TrackedMatrix& data, size_t k, int t) {
  const size_t n = data.rows();
  const size_t d = data.cols();
  check_kmeans(n, k, t);
  OpLedger& ledger = data.ledger();
  std::vector<size_t> labels(n);
  for (size_t i = 0; i < n; ++i) labels[i] = i % k;

  for (int it = 0; it < t; ++it) {
    std::vector<TrackedVector> sums(k, TrackedVector(ledger, d));
    std::vector<size_t> counts(k, 0);
    for (size_t i = 0; i < n; ++i) {
      const size_t j = labels[i];
      ++counts[j];
      for (size_t m = 0; m < d; ++m) sums[j].set(m, sums[j].at(m) + data.at(i, m));
    }
    std::vector<TrackedVector> means(k, TrackedVector(ledger, d));
    for (size_t j = 0; j < k; ++j) {
      const double scale = counts[j] ? 1.0 / static_cast<double>(counts[j]) : 0.0;
      for (size_t m = 0; m < d; ++m) means[j].set(m, sums[j].at(m) * scale);
    }
    for (size_t i = 0; i < n; ++i) {
      const TrackedVector x = data.row(i);
      std::vector<double> scores(k);
      for (size_t j = 0; j < k; ++j) scores[j] = distance_general(x, means[j]).value();
      labels[i] = argmin_index(scores);
    }
  }
  return labels;
}

std::vector<size_t> kmeans_kernel_arith(const TrackedMatrix& kernel, size_t k, int t) {
  check_square(kernel, "kmeans_kernel");
  const size_t n = kernel.rows();
  check_kmeans(n, k, t);
  OpLedger& ledger = kernel.ledger();
  std::vector<size_t> labels(n);
  for (size_t i = 0; i < n; ++i) labels[i] = i % k;

  for (int it = 0; it < t; ++it) {
    std::vector<std::vector<double>> scores(n, std::vector<double>(k));
    for (size_t j = 0; j < k; ++j) {
      size_t nj = 0;
      for (size_t i = 0; i < n; ++i) nj += labels[i] == j;
      auto column = [&](size_t a, size_t b) {
        return labels[b] == j ? kernel.at(a, b) : Tracked(ledger, 0.0);
      };
      auto masked = [&](size_t a, size_t b) {
        return labels[a] == j ? column(a, b) : Tracked(ledger, 0.0);
      };
      Tracked p = masked(0, 0);
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
          if (a || b) p = p + masked(a, b);
      for (size_t i = 0; i < n; ++i) {
        Tracked s = column(i, 0);
        for (size_t a = 1; a < n; ++a) s = s + column(i, a);
        const Tracked m = s * static_cast<double>(nj);
        scores[i][j] = (p - (m + m)).value();
      }
    }
    for (size_t i = 0; i < n; ++i) labels[i] = argmin_index(scores[i]);
  }
  return labels;
}

namespace op_cost {

OpCounts svm_general(size_t n, size_t d, int t) {
  return OpCounts{n * d + 1, n * (d + 2) + 2, 0, 0} * (n * static_cast<uint64_t>(t));
}

OpCounts svm_kernel(size_t n, int t) {
  return OpCounts{n + 1, 2 * n + 2, 0, 0} * (n * static_cast<uint64_t>(t));
}

namespace {
OpCounts deflation(size_t m) { return {m * m, m + m * m, 0, 0}; }
}  // namespace

OpCounts pca_general(size_t n, size_t d, int r, const IterationBudgets& b) {
  OpCounts c = matmul(d, n, d) + OpCounts{0, d * d, 0, 0};
  c += power_iteration(d, b) * static_cast<uint64_t>(r);
  c += deflation(d) * static_cast<uint64_t>(r - 1);
  return c;
}

OpCounts pca_kernel(size_t n, size_t d, int r, const IterationBudgets& b) {
  OpCounts per_component = power_iteration(n, b) + matvec(d, n) + dot(n) + OpCounts{0, 1, 0, 0} +
                           sqrt_scaled(b.t_sqrt) + inverse_scaled(b.t_sinv) +
                           OpCounts{0, d + 1, 0, 0};
  return per_component * static_cast<uint64_t>(r) + deflation(n) * static_cast<uint64_t>(r - 1);
}

OpCounts total_variance_general(size_t n, size_t d) {
  return {d * (n - 1) + n * (2 * d - 1) + (n - 1), d + n * d + 1, 0, 0};
}

OpCounts total_variance_kernel(size_t n) { return {(n - 1) + (n * n - 1) + 1, 2, 0, 0}; }

OpCounts distance_general(size_t d) { return {2 * d - 1, d, 0, 0}; }
OpCounts distance_kernel() { return {3, 0, 0, 0}; }
OpCounts norm_general(size_t d, int t_sqrt) { return dot(d) + sqrt_scaled(t_sqrt); }
OpCounts norm_kernel(int t_sqrt) { return sqrt_scaled(t_sqrt); }

OpCounts similarity_general(size_t d, const IterationBudgets& b) {
  return dot(d) * 3 + similarity_kernel(b);
}

OpCounts similarity_kernel(const IterationBudgets& b) {
  return sqrt_scaled(b.t_sqrt) * 2 + inverse_scaled(b.t_sinv) + OpCounts{0, 2, 0, 0};
}

OpCounts kmeans_general(size_t n, size_t d, size_t k, int t) {
  return OpCounts{n * d + n * k * (2 * d - 1), n * k * d + k * d, 0, 0} * static_cast<uint64_t>(t);
}

OpCounts kmeans_kernel(size_t n, size_t k, int t) {
  return OpCounts{k * (n * n - 1) + n * k * (n + 1), n * k, 0, 0} * static_cast<uint64_t>(t);
}

}  // namespace op_cost

}  // namespace kernhe
