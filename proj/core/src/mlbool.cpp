#include "kernhe/mlbool.hpp"

#include <random>
#include <string>

#include "kernhe/errors.hpp"

namespace kernhe {

namespace {

using Grid = std::vector<std::vector<SimBit>>;

// Charges ledger growth since the previous close to a named phase.
class PhaseMeter {
 public:
  PhaseMeter(const GateLedger& ledger, BoolRunReport& report)
      : ledger_(ledger), report_(report), start_(ledger.snapshot()), last_(start_) {}

  void close(const std::string& name) {
    const GateCounts now = ledger_.snapshot();
    const GateCounts delta = diff(last_, now);
    last_ = now;
    for (auto& p : report_.phases) {
      if (p.name == name) {
        p.gates += delta;
        return;
      }
    }
    report_.phases.push_back({name, delta});
  }

  void finish() { report_.total = diff(start_, ledger_.snapshot()); }

 private:
  const GateLedger& ledger_;
  BoolRunReport& report_;
  GateCounts start_;
  GateCounts last_;
};

int64_t max_integer(const FixedPointLayout& layout) {
  return (int64_t{1} << layout.int_bits()) - 1;
}

void check_kmeans(size_t n, size_t k, int t, const FixedPointLayout& layout) {
  if (n == 0) throw ShapeError("k-means: empty dataset");
  if (k < 2) throw ValidationError("k-means needs k >= 2");
  if (k > n) throw ValidationError("k-means needs k <= n");
  if (t < 1) throw ValidationError("k-means needs t >= 1");
  if (static_cast<int64_t>(n) > max_integer(layout)) {
    throw RangeError("k-means: n = " + std::to_string(n) + " does not fit the integer part of l = " +
                     std::to_string(layout.l()));
  }
}

std::vector<size_t> resolve_init(size_t n, size_t k, const std::vector<size_t>& init) {
  if (init.empty()) return initial_labels(n, k);
  if (init.size() != n) throw ShapeError("k-means: initial labels must have length n");
  for (size_t c : init)
    if (c >= k) throw ValidationError("k-means: initial label out of range");
  return init;
}

void check_knn(size_t n, const std::vector<int>& y, size_t k, int s,
               const FixedPointLayout& layout) {
  if (n == 0) throw ShapeError("k-NN: empty dataset");
  if (y.size() != n) throw ShapeError("k-NN: label count does not match n");
  if (s < 2) throw ValidationError("k-NN needs s >= 2");
  if (k < 1 || k > n) throw ValidationError("k-NN needs 1 <= k <= n");
  for (int c : y)
    if (c < 1 || c > s) throw ValidationError("k-NN: labels must lie in 1..s");
  if (s > max_integer(layout) || static_cast<int64_t>(k) > max_integer(layout)) {
    throw RangeError("k-NN: s and k must fit the integer part of l = " +
                     std::to_string(layout.l()));
  }
}

WordCipher and_word(const SimBit& bit, const WordCipher& w) {
  WordCipher out{std::vector<SimBit>(w.bits.size()), w.layout};
  for (size_t i = 0; i < w.bits.size(); ++i) out.bits[i] = gate_and(bit, w.bits[i]);
  return out;
}

WordCipher squared_distance(const std::vector<WordCipher>& a, const std::vector<WordCipher>& b) {
  WordCipher acc;
  for (size_t m = 0; m < a.size(); ++m) {
    const WordCipher diff = sub(a[m], b[m]);
    const WordCipher sq = mult(diff, diff);
    acc = m == 0 ? sq : add(acc, sq);
  }
  return acc;
}

Grid onehot(GateLedger& ledger, const std::vector<size_t>& labels, size_t k) {
  Grid g(labels.size(), std::vector<SimBit>(k));
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = 0; j < k; ++j) g[i][j] = SimBit::constant(ledger, labels[i] == j);
  return g;
}

size_t first_set(const std::vector<SimBit>& bits) {
  for (size_t j = 0; j < bits.size(); ++j)
    if (bits[j].value()) return j;
  throw Error("selection produced no set bit");
}

std::vector<WordCipher> encrypt_all(GateLedger& ledger, const std::vector<int64_t>& raw,
                                    const FixedPointLayout& layout) {
  std::vector<WordCipher> out;
  out.reserve(raw.size());
  for (int64_t v : raw) out.push_back(encrypt_raw(ledger, v, layout));
  return out;
}

std::vector<WordCipher> encrypt_labels(GateLedger& ledger, const std::vector<int>& y,
                                       const FixedPointLayout& layout) {
  std::vector<WordCipher> out;
  for (int c : y) out.push_back(encrypt_raw(ledger, int64_t{c} << layout.frac_bits(), layout));
  return out;
}

// Assign every point from its score row: Algorithm-1 selection, then the first
// set bit wins.
void assign(const std::vector<std::vector<WordCipher>>& scores, Grid& labels, PhaseMeter& meter) {
  for (size_t i = 0; i < scores.size(); ++i) {
    const std::vector<SimBit> sel = argmin(scores[i]);
    meter.close("argmin");
    labels[i] = first_set_wins(sel);
    meter.close("tiebreak");
  }
}

BoolRunReport finish_kmeans(const Grid& labels, int t, PhaseMeter& meter, BoolRunReport& report) {
  meter.finish();
  report.iterations = t;
  for (const auto& row : labels) report.labels.push_back(first_set(row));
  return report;
}

BoolRunReport knn_shared(GateLedger& ledger, const std::vector<WordCipher>& distances,
                         const std::vector<int>& y, size_t k, int s,
                         const FixedPointLayout& layout, PhaseMeter& meter,
                         BoolRunReport& report) {
  const std::vector<Keyed> sorted = bubble_sort(distances, encrypt_labels(ledger, y, layout));
  meter.close("sort");
  std::vector<WordCipher> nearest;
  for (size_t i = 0; i < k; ++i) nearest.push_back(sorted[i].label);
  const std::vector<WordCipher> tally = count_class(nearest, s);
  meter.close("count");
  const std::vector<SimBit> sel = argmax(tally);
  meter.close("majority");
  const std::vector<SimBit> win = first_set_wins(sel);
  meter.close("tiebreak");
  meter.finish();
  report.iterations = 1;
  report.predicted_class = static_cast<int>(first_set(win)) + 1;
  return report;
}

// Plaintext helpers mirroring the circuits.
namespace ref {

size_t argmin_first(const std::vector<int64_t>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    bool bit = true;
    for (size_t j = 0; j < v.size(); ++j)
      if (j != i) bit = bit && fxref::leq(v[i], v[j]);
    if (bit) return i;
  }
  throw Error("selection produced no set bit");
}

size_t argmax_first(const std::vector<int64_t>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    bool bit = true;
    for (size_t j = 0; j < v.size(); ++j)
      if (j != i) bit = bit && fxref::leq(v[j], v[i]);
    if (bit) return i;
  }
  throw Error("selection produced no set bit");
}

int64_t squared_distance(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                         const FixedPointLayout& layout) {
  int64_t acc = 0;
  for (size_t m = 0; m < a.size(); ++m) {
    const int64_t diff = fxref::sub(a[m], b[m], layout);
    const int64_t sq = fxref::mult(diff, diff, layout);
    acc = m == 0 ? sq : fxref::add(acc, sq, layout);
  }
  return acc;
}

int knn_shared(const std::vector<int64_t>& distances, const std::vector<int>& y, size_t k, int s,
               const FixedPointLayout& layout) {
  const std::vector<size_t> order = plainref::sort_order(distances);
  const int64_t one = int64_t{1} << layout.frac_bits();
  std::vector<int64_t> tally(s, 0);
  for (int c = 1; c <= s; ++c)
    for (size_t i = 0; i < k; ++i)
      if (y[order[i]] == c) tally[c - 1] = fxref::add(tally[c - 1], one, layout);
  return static_cast<int>(argmax_first(tally)) + 1;
}

}  // namespace ref

}  // namespace

std::vector<int64_t> FixedMatrix::row(size_t i) const {
  return {raw.begin() + static_cast<std::ptrdiff_t>(i * cols),
          raw.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols)};
}

FixedMatrix FixedMatrix::quantize(const std::vector<double>& values, size_t rows, size_t cols,
                                  const FixedPointLayout& layout) {
  if (values.size() != rows * cols) throw ShapeError("quantize: value count does not match shape");
  FixedMatrix m{rows, cols, {}, layout};
  m.raw.reserve(values.size());
  for (double v : values) m.raw.push_back(kernhe::quantize(v, layout));
  return m;
}

FixedMatrix quantize_dataset(const Dataset& data, const FixedPointLayout& layout) {
  return FixedMatrix::quantize(data.x, data.n, data.d, layout);
}

GateCounts BoolRunReport::phase(std::string_view name) const {
  for (const auto& p : phases)
    if (p.name == name) return p.gates;
  return {};
}

std::vector<size_t> initial_labels(size_t n, size_t k, std::optional<uint64_t> seed) {
  if (k == 0) throw ValidationError("initial labels need k >= 1");
  std::vector<size_t> labels(n);
  if (!seed) {
    for (size_t i = 0; i < n; ++i) labels[i] = i % k;
    return labels;
  }
  std::mt19937_64 rng(*seed);
  std::uniform_int_distribution<size_t> pick(0, k - 1);
  for (auto& c : labels) c = pick(rng);
  return labels;
}

BoolKernel build_kernel_bool(const FixedMatrix& data) {
  if (data.rows == 0 || data.cols == 0) throw ShapeError("build_kernel_bool: empty dataset");
  GateLedger ledger;
  const GateCounts before = ledger.snapshot();
  const std::vector<WordCipher> x = encrypt_all(ledger, data.raw, data.layout);
  const size_t n = data.rows;
  const size_t d = data.cols;
  std::vector<int64_t> out(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      WordCipher acc;
      for (size_t m = 0; m < d; ++m) {
        const WordCipher p = mult(x[i * d + m], x[j * d + m]);
        acc = m == 0 ? p : add(acc, p);
      }
      out[i * n + j] = out[j * n + i] = decrypt_raw(acc);
    }
  }
  return {FixedMatrix{n, n, std::move(out), data.layout}, diff(before, ledger.snapshot())};
}

std::vector<WordCipher> column_masked_kernel_bool(const std::vector<WordCipher>& kernel,
                                                  const std::vector<SimBit>& label_column) {
  const size_t n = label_column.size();
  if (kernel.size() != n * n) throw ShapeError("masked kernel: kernel is not n x n");
  std::vector<WordCipher> out;
  out.reserve(n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) out.push_back(and_word(label_column[b], kernel[a * n + b]));
  return out;
}

std::vector<WordCipher> masked_cluster_kernel_bool(const std::vector<WordCipher>& column_masked,
                                                   const std::vector<SimBit>& label_column) {
  const size_t n = label_column.size();
  if (column_masked.size() != n * n) throw ShapeError("masked kernel: kernel is not n x n");
  std::vector<WordCipher> out;
  out.reserve(n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) out.push_back(and_word(label_column[a], column_masked[a * n + b]));
  return out;
}

BoolRunReport kmeans_general_bool(const FixedMatrix& data, size_t k, int t,
                                  const std::vector<size_t>& init) {
  const size_t n = data.rows;
  const size_t d = data.cols;
  const FixedPointLayout& layout = data.layout;
  check_kmeans(n, k, t, layout);
  if (d == 0) throw ShapeError("k-means: zero-dimensional data");
  const std::vector<size_t> start = resolve_init(n, k, init);

  GateLedger ledger;
  BoolRunReport report;
  PhaseMeter meter(ledger, report);
  const std::vector<WordCipher> flat = encrypt_all(ledger, data.raw, layout);
  std::vector<std::vector<WordCipher>> x(n);
  for (size_t i = 0; i < n; ++i) x[i].assign(flat.begin() + i * d, flat.begin() + (i + 1) * d);
  Grid labels = onehot(ledger, start, k);
  const WordCipher zero = encrypt_raw(ledger, 0, layout);

  for (int it = 0; it < t; ++it) {
    std::vector<std::vector<std::vector<WordCipher>>> members(k);
    for (size_t j = 0; j < k; ++j) {
      members[j].resize(n);
      for (size_t i = 0; i < n; ++i)
        for (size_t m = 0; m < d; ++m) members[j][i].push_back(and_word(labels[i][j], x[i][m]));
    }
    meter.close("extract");

    std::vector<std::vector<WordCipher>> means(k);
    for (size_t j = 0; j < k; ++j) {
      WordCipher count = word_from_bit(labels[0][j], layout);
      for (size_t i = 1; i < n; ++i) count = add(count, word_from_bit(labels[i][j], layout));
      for (size_t m = 0; m < d; ++m) {
        WordCipher sum = members[j][0][m];
        for (size_t i = 1; i < n; ++i) sum = add(sum, members[j][i][m]);
        DivideResult q = divide(sum, count);
        means[j].push_back(q.div_by_zero ? zero : std::move(q.quotient));
      }
    }
    meter.close("mean");

    std::vector<std::vector<WordCipher>> scores(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < k; ++j) scores[i].push_back(squared_distance(x[i], means[j]));
    meter.close("distance");

    assign(scores, labels, meter);
  }
  return finish_kmeans(labels, t, meter, report);
}

BoolRunReport kmeans_kernel_bool(const FixedMatrix& kernel, size_t k, int t,
                                 const std::vector<size_t>& init) {
  const size_t n = kernel.rows;
  const FixedPointLayout& layout = kernel.layout;
  if (kernel.cols != n) throw ShapeError("kernel k-means: kernel is not n x n");
  check_kmeans(n, k, t, layout);
  const std::vector<size_t> start = resolve_init(n, k, init);

  GateLedger ledger;
  BoolRunReport report;
  PhaseMeter meter(ledger, report);
  const std::vector<WordCipher> kw = encrypt_all(ledger, kernel.raw, layout);
  Grid labels = onehot(ledger, start, k);

  for (int it = 0; it < t; ++it) {
    std::vector<std::vector<WordCipher>> scores(n, std::vector<WordCipher>(k));
    for (size_t j = 0; j < k; ++j) {
      std::vector<SimBit> column(n);
      for (size_t i = 0; i < n; ++i) column[i] = labels[i][j];
      const std::vector<WordCipher> mj = column_masked_kernel_bool(kw, column);
      const std::vector<WordCipher> kj = masked_cluster_kernel_bool(mj, column);
      meter.close("mask");

      WordCipher count = word_from_bit(column[0], layout);
      for (size_t i = 1; i < n; ++i) count = add(count, word_from_bit(column[i], layout));
      meter.close("count");

      WordCipher p = kj[0];
      for (size_t e = 1; e < n * n; ++e) p = add(p, kj[e]);
      meter.close("score");

      for (size_t i = 0; i < n; ++i) {
        WordCipher row = mj[i * n];
        for (size_t a = 1; a < n; ++a) row = add(row, mj[i * n + a]);
        meter.close("score");
        const WordCipher scaled = mult(count, row);
        meter.close("scale");
        scores[i][j] = sub(p, shift_left_one(scaled));
        meter.close("score");
      }
    }
    assign(scores, labels, meter);
  }
  return finish_kmeans(labels, t, meter, report);
}

BoolRunReport knn_general_bool(const FixedMatrix& data, const std::vector<int>& y,
                               const std::vector<int64_t>& query, size_t k, int s) {
  const size_t n = data.rows;
  const size_t d = data.cols;
  check_knn(n, y, k, s, data.layout);
  if (d == 0 || query.size() != d) throw ShapeError("k-NN: query length does not match d");

  GateLedger ledger;
  BoolRunReport report;
  PhaseMeter meter(ledger, report);
  const std::vector<WordCipher> q = encrypt_all(ledger, query, data.layout);
  std::vector<WordCipher> distances;
  for (size_t i = 0; i < n; ++i)
    distances.push_back(squared_distance(q, encrypt_all(ledger, data.row(i), data.layout)));
  meter.close("distance");
  return knn_shared(ledger, distances, y, k, s, data.layout, meter, report);
}

BoolRunReport knn_kernel_bool(const std::vector<int64_t>& kx, const std::vector<int64_t>& kdiag,
                              const std::vector<int>& y, size_t k, int s,
                              const FixedPointLayout& layout) {
  const size_t n = kx.size();
  if (kdiag.size() != n) throw ShapeError("k-NN: kernel row and diagonal lengths differ");
  check_knn(n, y, k, s, layout);

  GateLedger ledger;
  BoolRunReport report;
  PhaseMeter meter(ledger, report);
  const WordCipher zero = encrypt_raw(ledger, 0, layout);
  std::vector<WordCipher> distances;
  for (size_t i = 0; i < n; ++i) {
    const WordCipher c = encrypt_raw(ledger, kx[i], layout);
    distances.push_back(add(sub(sub(zero, c), c), encrypt_raw(ledger, kdiag[i], layout)));
  }
  meter.close("distance");
  return knn_shared(ledger, distances, y, k, s, layout, meter, report);
}

namespace plainref {

std::vector<size_t> kmeans_general(const FixedMatrix& data, size_t k, int t,
                                   const std::vector<size_t>& init) {
  const size_t n = data.rows;
  const size_t d = data.cols;
  const FixedPointLayout& layout = data.layout;
  check_kmeans(n, k, t, layout);
  std::vector<size_t> labels = resolve_init(n, k, init);
  const int64_t one = int64_t{1} << layout.frac_bits();

  for (int it = 0; it < t; ++it) {
    std::vector<std::vector<int64_t>> means(k, std::vector<int64_t>(d, 0));
    for (size_t j = 0; j < k; ++j) {
      int64_t count = labels[0] == j ? one : 0;
      for (size_t i = 1; i < n; ++i) count = fxref::add(count, labels[i] == j ? one : 0, layout);
      for (size_t m = 0; m < d; ++m) {
        int64_t sum = labels[0] == j ? data.at(0, m) : 0;
        for (size_t i = 1; i < n; ++i)
          sum = fxref::add(sum, labels[i] == j ? data.at(i, m) : 0, layout);
        const fxref::DivResult q = fxref::divide(sum, count, layout);
        means[j][m] = q.div_by_zero ? 0 : q.value;
      }
    }
    std::vector<size_t> next(n);
    for (size_t i = 0; i < n; ++i) {
      const std::vector<int64_t> xi = data.row(i);
      std::vector<int64_t> scores(k);
      for (size_t j = 0; j < k; ++j) scores[j] = ref::squared_distance(xi, means[j], layout);
      next[i] = ref::argmin_first(scores);
    }
    labels = std::move(next);
  }
  return labels;
}

std::vector<size_t> kmeans_kernel(const FixedMatrix& kernel, size_t k, int t,
                                  const std::vector<size_t>& init) {
  const size_t n = kernel.rows;
  const FixedPointLayout& layout = kernel.layout;
  if (kernel.cols != n) throw ShapeError("kernel k-means: kernel is not n x n");
  check_kmeans(n, k, t, layout);
  std::vector<size_t> labels = resolve_init(n, k, init);
  const int64_t one = int64_t{1} << layout.frac_bits();

  for (int it = 0; it < t; ++it) {
    std::vector<std::vector<int64_t>> scores(n, std::vector<int64_t>(k));
    for (size_t j = 0; j < k; ++j) {
      auto column = [&](size_t a, size_t b) { return labels[b] == j ? kernel.at(a, b) : 0; };
      auto masked = [&](size_t a, size_t b) { return labels[a] == j ? column(a, b) : 0; };
      int64_t count = labels[0] == j ? one : 0;
      for (size_t i = 1; i < n; ++i) count = fxref::add(count, labels[i] == j ? one : 0, layout);
      int64_t p = masked(0, 0);
      for (size_t e = 1; e < n * n; ++e) p = fxref::add(p, masked(e / n, e % n), layout);
      for (size_t i = 0; i < n; ++i) {
        int64_t row = column(i, 0);
        for (size_t a = 1; a < n; ++a) row = fxref::add(row, column(i, a), layout);
        const int64_t scaled = fxref::mult(count, row, layout);
        scores[i][j] = fxref::sub(p, fxref::wrap(int128{scaled} * 2, layout), layout);
      }
    }
    for (size_t i = 0; i < n; ++i) labels[i] = ref::argmin_first(scores[i]);
  }
  return labels;
}

int knn_general(const FixedMatrix& data, const std::vector<int>& y,
                const std::vector<int64_t>& query, size_t k, int s) {
  check_knn(data.rows, y, k, s, data.layout);
  if (data.cols == 0 || query.size() != data.cols) {
    throw ShapeError("k-NN: query length does not match d");
  }
  std::vector<int64_t> distances;
  for (size_t i = 0; i < data.rows; ++i)
    distances.push_back(ref::squared_distance(query, data.row(i), data.layout));
  return ref::knn_shared(distances, y, k, s, data.layout);
}

int knn_kernel(const std::vector<int64_t>& kx, const std::vector<int64_t>& kdiag,
               const std::vector<int>& y, size_t k, int s, const FixedPointLayout& layout) {
  if (kdiag.size() != kx.size()) throw ShapeError("k-NN: kernel row and diagonal lengths differ");
  check_knn(kx.size(), y, k, s, layout);
  std::vector<int64_t> distances;
  for (size_t i = 0; i < kx.size(); ++i) {
    const int64_t neg = fxref::sub(fxref::sub(0, kx[i], layout), kx[i], layout);
    distances.push_back(fxref::add(neg, kdiag[i], layout));
  }
  return ref::knn_shared(distances, y, k, s, layout);
}

std::vector<size_t> sort_order(const std::vector<int64_t>& values) {
  std::vector<int64_t> v = values;
  std::vector<size_t> order(values.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t pass = 0; pass + 1 < v.size(); ++pass) {
    for (size_t j = 0; j + 1 < v.size(); ++j) {
      if (!fxref::leq(v[j], v[j + 1])) {
        std::swap(v[j], v[j + 1]);
        std::swap(order[j], order[j + 1]);
      }
    }
  }
  return order;
}

}  // namespace plainref

uint64_t total_units(const std::vector<PhaseUnits>& phases) {
  uint64_t total = 0;
  for (const auto& p : phases) total += p.units;
  return total;
}

namespace gate_cost {

uint64_t dot(size_t d, int l) { return d * mult(l) + (d - 1) * add(l); }

uint64_t build_kernel(size_t n, size_t d, int l) { return n * (n + 1) / 2 * dot(d, l); }

std::vector<PhaseUnits> kmeans_general(size_t n, size_t d, size_t k, int t, int l) {
  const uint64_t a = add(l);
  const uint64_t T = static_cast<uint64_t>(t);
  return {
      {"extract", T * n * k * d * l},
      {"mean", T * k * ((n - 1) * a + d * (n - 1) * a + d * divide(l))},
      {"distance", T * n * k * (d * sub(l) + d * mult(l) + (d - 1) * a)},
      {"argmin", T * n * argminmax(static_cast<int>(k), l)},
      {"tiebreak", T * n * first_set_wins(static_cast<int>(k))},
  };
}

std::vector<PhaseUnits> kmeans_kernel(size_t n, size_t k, int t, int l) {
  const uint64_t a = add(l);
  const uint64_t T = static_cast<uint64_t>(t);
  return {
      {"mask", T * k * n * n * 2 * l},
      {"count", T * k * (n - 1) * a},
      {"score", T * k * ((n * n - 1) * a + n * ((n - 1) * a + sub(l)))},
      {"scale", T * n * k * mult(l)},
      {"argmin", T * n * argminmax(static_cast<int>(k), l)},
      {"tiebreak", T * n * first_set_wins(static_cast<int>(k))},
  };
}

std::vector<PhaseUnits> knn_general(size_t n, size_t d, size_t k, int s, int l) {
  return {
      {"distance", n * (d * sub(l) + d * mult(l) + (d - 1) * add(l))},
      {"sort", bubble_sort(static_cast<int>(n), l)},
      {"count", count_class(static_cast<int>(k), s, l)},
      {"majority", argminmax(s, l)},
      {"tiebreak", first_set_wins(s)},
  };
}

std::vector<PhaseUnits> knn_kernel(size_t n, size_t k, int s, int l) {
  std::vector<PhaseUnits> phases = knn_general(n, 1, k, s, l);
  phases[0].units = n * (2 * sub(l) + add(l));
  return phases;
}

uint64_t knn_shared(size_t n, size_t k, int s, int l) {
  return bubble_sort(static_cast<int>(n), l) + count_class(static_cast<int>(k), s, l) +
         argminmax(s, l);
}

}  // namespace gate_cost

}  // namespace kernhe
