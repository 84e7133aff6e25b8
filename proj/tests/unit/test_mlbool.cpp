#include <gtest/gtest.h>

#include <random>

#include "fixed_oracle.hpp"
#include "kernhe/errors.hpp"
#include "kernhe/mlbool.hpp"
#include "ml_oracle.hpp"

using namespace kernhe;

namespace {

const FixedPointLayout L16(16);

FixedMatrix matrix(const oracle::Grid& g) {
  FixedMatrix m{g.size(), g[0].size(), {}, L16};
  for (const auto& row : g) m.raw.insert(m.raw.end(), row.begin(), row.end());
  return m;
}

oracle::Grid grid(const FixedMatrix& m) {
  oracle::Grid g(m.rows);
  for (size_t i = 0; i < m.rows; ++i) g[i] = m.row(i);
  return g;
}

// Coordinates are multiples of 1/16 in [-0.5, 0.5].
oracle::Grid random_points(std::mt19937_64& rng, size_t n, size_t d) {
  std::uniform_int_distribution<int64_t> pick(-8, 8);
  oracle::Grid g(n, std::vector<int64_t>(d));
  for (auto& row : g)
    for (auto& v : row) v = pick(rng) * 16;
  return g;
}

void expect_phases(const BoolRunReport& r, const std::vector<PhaseUnits>& want) {
  ASSERT_EQ(r.phases.size(), want.size());
  uint64_t sum = 0;
  for (const auto& p : want) {
    EXPECT_EQ(r.phase_units(p.name), p.units) << p.name;
    sum += p.units;
  }
  EXPECT_EQ(r.total.binary_gate_units(), sum);
}

}  // namespace

TEST(KmeansBool, SeparatedClusters) {
  const FixedMatrix x = FixedMatrix::quantize({0.0, 0.25, 4.0, 4.25}, 4, 1, L16);
  const BoolRunReport g = kmeans_general_bool(x, 2, 2);
  EXPECT_EQ(g.labels[0], g.labels[1]);
  EXPECT_EQ(g.labels[2], g.labels[3]);
  EXPECT_NE(g.labels[0], g.labels[2]);
  EXPECT_EQ(g.labels, oracle::kmeans_general(grid(x), 2, 2, 16));
  expect_phases(g, gate_cost::kmeans_general(4, 1, 2, 2, 16));

  const BoolKernel k = build_kernel_bool(x);
  const BoolRunReport kk = kmeans_kernel_bool(k.kernel, 2, 2);
  EXPECT_EQ(kk.labels, g.labels);
  expect_phases(kk, gate_cost::kmeans_kernel(4, 2, 2, 16));
}

TEST(KmeansBool, ConvergedInitIsStable) {
  const FixedMatrix x = FixedMatrix::quantize({0.0, 0.25, 4.0, 4.25}, 4, 1, L16);
  const std::vector<size_t> init{1, 1, 0, 0};
  EXPECT_EQ(kmeans_general_bool(x, 2, 1, init).labels, init);
  EXPECT_EQ(kmeans_kernel_bool(build_kernel_bool(x).kernel, 2, 1, init).labels, init);
}

TEST(KmeansBool, Preconditions) {
  const FixedMatrix x = FixedMatrix::quantize({0.0, 0.25, 4.0}, 3, 1, L16);
  EXPECT_THROW(kmeans_general_bool(x, 1, 1), ValidationError);
  EXPECT_THROW(kmeans_general_bool(x, 4, 1), ValidationError);
  EXPECT_THROW(kmeans_general_bool(x, 2, 0), ValidationError);
  EXPECT_THROW(kmeans_kernel_bool(build_kernel_bool(x).kernel, 1, 1), ValidationError);
  // 200 points do not fit the 7-bit integer part of l = 16.
  const FixedMatrix big = FixedMatrix::quantize(std::vector<double>(200, 0.0), 200, 1, L16);
  EXPECT_THROW(kmeans_general_bool(big, 2, 1), RangeError);
  EXPECT_THROW(FixedMatrix::quantize({1000.0}, 1, 1, L16), RangeError);
}

TEST(KmeansBool, KernelGateUnitsIndependentOfDimension) {
  std::mt19937_64 rng(1);
  uint64_t units = 0;
  for (size_t d : {2u, 8u}) {
    const BoolKernel k = build_kernel_bool(matrix(random_points(rng, 5, d)));
    EXPECT_EQ(k.cost.binary_gate_units(), gate_cost::build_kernel(5, d, 16));
    const uint64_t u = kmeans_kernel_bool(k.kernel, 2, 2).total.binary_gate_units();
    if (units) {
      EXPECT_EQ(u, units);
    }
    units = u;
  }
}

TEST(KmeansBool, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 40; ++it) {
    const size_t n = 3 + rng() % 4, d = 1 + rng() % 4, k = 2 + rng() % 2;
    const int t = 1 + static_cast<int>(rng() % 3);
    const oracle::Grid pts = random_points(rng, n, d);
    const FixedMatrix x = matrix(pts);
    const BoolRunReport g = kmeans_general_bool(x, k, t);
    EXPECT_EQ(g.labels, oracle::kmeans_general(pts, k, t, 16));
    EXPECT_EQ(g.labels, plainref::kmeans_general(x, k, t));
    expect_phases(g, gate_cost::kmeans_general(n, d, k, t, 16));

    const BoolKernel km = build_kernel_bool(x);
    EXPECT_EQ(grid(km.kernel), oracle::gram(pts, 16));
    const BoolRunReport kk = kmeans_kernel_bool(km.kernel, k, t);
    EXPECT_EQ(kk.labels, oracle::kmeans_kernel(grid(km.kernel), k, t, 16));
    EXPECT_EQ(kk.labels, plainref::kmeans_kernel(km.kernel, k, t));
    expect_phases(kk, gate_cost::kmeans_kernel(n, k, t, 16));
  }
}

TEST(KnnBool, SpecExample) {
  const FixedMatrix x = FixedMatrix::quantize({0, 1, 10, 11}, 4, 1, L16);
  const std::vector<int> y{1, 1, 2, 2};
  const std::vector<int64_t> q{oracle::to_raw(0.5, 16)};
  const BoolRunReport g = knn_general_bool(x, y, q, 3, 2);
  EXPECT_EQ(g.predicted_class, 1);
  EXPECT_EQ(gate_cost::knn_shared(4, 3, 2, 16), 2432u);
  EXPECT_EQ(g.phase_units("sort") + g.phase_units("count") + g.phase_units("majority"), 2432u);
  expect_phases(g, gate_cost::knn_general(4, 1, 3, 2, 16));

  const oracle::Grid pts = grid(x);
  std::vector<int64_t> kq, kdiag;
  const oracle::Grid gm = oracle::gram(pts, 16);
  for (size_t i = 0; i < 4; ++i) {
    kq.push_back(oracle::mul(q[0], pts[i][0], 16));
    kdiag.push_back(gm[i][i]);
  }
  const BoolRunReport kk = knn_kernel_bool(kq, kdiag, y, 3, 2, L16);
  EXPECT_EQ(kk.predicted_class, 1);
  EXPECT_EQ(kk.phase_units("distance"), 924u);
  expect_phases(kk, gate_cost::knn_kernel(4, 3, 2, 16));
}

TEST(KnnBool, NearestNeighbourAndFullVote) {
  const FixedMatrix x = FixedMatrix::quantize({0, 1, 2, 3, 4}, 5, 1, L16);
  const std::vector<int> y{2, 1, 2, 1, 2};
  EXPECT_EQ(knn_general_bool(x, y, {x.at(3, 0)}, 1, 2).predicted_class, 1);
  EXPECT_EQ(knn_general_bool(x, y, {x.at(3, 0)}, 5, 2).predicted_class, 2);
  EXPECT_THROW(knn_general_bool(x, y, {0}, 1, 1), ValidationError);
  EXPECT_THROW(knn_general_bool(x, y, {0}, 6, 2), ValidationError);
  EXPECT_THROW(knn_general_bool(x, {1, 1, 3, 1, 1}, {0}, 1, 2), ValidationError);
}

TEST(KnnBool, MatchesOracleAndOrderIsPreserved) {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 40; ++it) {
    const size_t n = 2 + rng() % 5, d = 1 + rng() % 4;
    const int s = 2 + static_cast<int>(rng() % 2);
    const size_t k = 1 + rng() % n;
    const oracle::Grid pts = random_points(rng, n, d);
    const std::vector<int64_t> q = random_points(rng, 1, d)[0];
    std::vector<int> y(n);
    for (auto& c : y) c = 1 + static_cast<int>(rng() % s);
    const FixedMatrix x = matrix(pts);

    const BoolRunReport g = knn_general_bool(x, y, q, k, s);
    EXPECT_EQ(g.predicted_class, oracle::knn_general(pts, y, q, k, s, 16));
    expect_phases(g, gate_cost::knn_general(n, d, k, s, 16));

    const oracle::Grid gm = oracle::gram(pts, 16);
    std::vector<int64_t> kq, kdiag, dg, dk;
    for (size_t i = 0; i < n; ++i) {
      int64_t acc = 0;
      for (size_t m = 0; m < d; ++m)
        acc = m == 0 ? oracle::mul(q[m], pts[i][m], 16)
                     : oracle::add(acc, oracle::mul(q[m], pts[i][m], 16), 16);
      kq.push_back(acc);
      kdiag.push_back(gm[i][i]);
    }
    const BoolRunReport kk = knn_kernel_bool(kq, kdiag, y, k, s, L16);
    EXPECT_EQ(kk.predicted_class, oracle::knn_kernel(kq, kdiag, y, k, s, 16));
    expect_phases(kk, gate_cost::knn_kernel(n, k, s, 16));

    // Exact-arithmetic distances and their constant-shifted kernel form sort alike.
    std::vector<double> exact, shifted;
    for (size_t i = 0; i < n; ++i) {
      double e = 0, dq = 0, dd = 0;
      for (size_t m = 0; m < d; ++m) {
        const double a = oracle::to_real(q[m], 16), b = oracle::to_real(pts[i][m], 16);
        e += (a - b) * (a - b);
        dq += a * b;
        dd += b * b;
      }
      exact.push_back(e);
      shifted.push_back(dd - 2 * dq);
    }
    std::vector<size_t> oe(n), os(n);
    std::iota(oe.begin(), oe.end(), 0);
    std::iota(os.begin(), os.end(), 0);
    std::stable_sort(oe.begin(), oe.end(), [&](size_t a, size_t b) { return exact[a] < exact[b]; });
    std::stable_sort(os.begin(), os.end(), [&](size_t a, size_t b) { return shifted[a] < shifted[b]; });
    EXPECT_EQ(oe, os);
  }
}

TEST(KnnBool, SortOrderIsStable) {
  EXPECT_EQ(plainref::sort_order({3, 1, 2, 1}), (std::vector<size_t>{1, 3, 2, 0}));
}

TEST(BoolKernel, MaskHelpers) {
  GateLedger ledger;
  const FixedPointLayout f(8);
  std::vector<WordCipher> kw;
  for (int64_t v : {16, 0, 0, 16}) kw.push_back(encrypt_raw(ledger, v, f));
  const std::vector<SimBit> col{SimBit::constant(ledger, true), SimBit::constant(ledger, false)};
  const auto cm = column_masked_kernel_bool(kw, col);
  const auto mm = masked_cluster_kernel_bool(cm, col);
  std::vector<int64_t> got;
  for (const auto& w : mm) got.push_back(decrypt_raw(w));
  EXPECT_EQ(got, (std::vector<int64_t>{16, 0, 0, 0}));
}
