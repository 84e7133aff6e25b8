#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixed_oracle.hpp"
#include "kernhe/boolcircuits.hpp"
#include "kernhe/errors.hpp"

using namespace kernhe;

namespace {

uint64_t units_of(GateLedger& ledger, const std::function<void()>& body) {
  const GateCounts before = ledger.snapshot();
  body();
  return diff(before, ledger.snapshot()).binary_gate_units();
}

// Gate-unit formulas, written out independently of the library.
uint64_t f_add(uint64_t l) { return 5 * l - 3; }
uint64_t f_mult(uint64_t l) { return 6 * l * l + 15 * l - 6; }
uint64_t f_div2(uint64_t l) { return 27 * l * l - 3 * l + 2; }  // twice 13.5l^2 - 1.5l + 1

}  // namespace

class CircuitWidths : public ::testing::TestWithParam<int> {};

TEST_P(CircuitWidths, ValuesAndGateCounts) {
  const int l = GetParam();
  const uint64_t L = l;
  const FixedPointLayout f(l);
  std::mt19937_64 rng(77 + l);
  std::uniform_int_distribution<int64_t> pick(f.min_raw(), f.max_raw());
  GateLedger ledger;
  for (int it = 0; it < 60; ++it) {
    int64_t a = pick(rng);
    int64_t b = pick(rng);
    if (it == 0) b = 0;
    if (it == 1) a = f.min_raw();
    if (it == 2) b = a;
    const WordCipher ca = encrypt_raw(ledger, a, f);
    const WordCipher cb = encrypt_raw(ledger, b, f);
    WordCipher r;
    SimBit bit;
    DivideResult q;

    EXPECT_EQ(units_of(ledger, [&] { r = add(ca, cb); }), f_add(L));
    EXPECT_EQ(decrypt_raw(r), oracle::add(a, b, l));
    EXPECT_EQ(units_of(ledger, [&] { r = sub(ca, cb); }), f_add(L));
    EXPECT_EQ(decrypt_raw(r), oracle::sub(a, b, l));
    EXPECT_EQ(units_of(ledger, [&] { r = negate(ca); }), 2 * L - 1);
    EXPECT_EQ(decrypt_raw(r), oracle::neg(a, l));
    EXPECT_EQ(units_of(ledger, [&] { r = abs_value(ca); }), 4 * L - 1);
    EXPECT_EQ(decrypt_raw(r), oracle::abs(a, l));
    EXPECT_EQ(units_of(ledger, [&] { r = mult(ca, cb); }), f_mult(L));
    EXPECT_EQ(decrypt_raw(r), oracle::mul(a, b, l));
    EXPECT_EQ(2 * units_of(ledger, [&] { q = divide(ca, cb); }), f_div2(L));
    EXPECT_EQ(decrypt_raw(q.quotient), oracle::div(a, b, l)) << a << "/" << b;
    EXPECT_EQ(q.div_by_zero, b == 0);
    EXPECT_EQ(units_of(ledger, [&] { bit = leq(ca, cb); }), 3 * L);
    EXPECT_EQ(bit.value(), a <= b);
    EXPECT_EQ(units_of(ledger, [&] { bit = eq(ca, cb); }), 3 * L);
    EXPECT_EQ(bit.value(), a == b);
    EXPECT_EQ(units_of(ledger, [&] { r = mux_word(bit, ca, cb); }), 2 * L);
    EXPECT_EQ(decrypt_raw(r), a == b ? a : b);
  }
}

INSTANTIATE_TEST_SUITE_P(Widths, CircuitWidths, ::testing::Values(4, 8, 16, 32));

TEST(Circuits, DividerMatchesClosedForm) {
  for (int l : {8, 16, 32}) EXPECT_EQ(2 * gate_cost::divide(l), f_div2(l));
  EXPECT_EQ(gate_cost::divide(16), 3433u);
  EXPECT_EQ(gate_cost::mult(16), 1770u);
  EXPECT_EQ(gate_cost::add(16), 77u);
}

TEST(Circuits, WordFromBitAndShift) {
  GateLedger ledger;
  const FixedPointLayout f(16);
  EXPECT_EQ(decrypt_value(word_from_bit(SimBit::constant(ledger, true), f)), 1.0);
  EXPECT_EQ(decrypt_value(word_from_bit(SimBit::constant(ledger, false), f)), 0.0);
  const WordCipher x = encrypt_value(ledger, -1.25, f);
  EXPECT_EQ(units_of(ledger, [&] { EXPECT_EQ(decrypt_value(shift_left_one(x)), -2.5); }), 0u);
}

TEST(Circuits, LayoutMismatchRejected) {
  GateLedger ledger;
  EXPECT_THROW(add(encrypt_raw(ledger, 1, FixedPointLayout(8)),
                   encrypt_raw(ledger, 1, FixedPointLayout(16))),
               LayoutMismatch);
}

class Selection : public ::testing::TestWithParam<int> {};

TEST_P(Selection, ArgminArgmaxWithTies) {
  const int k = GetParam();
  const int l = 16;
  const FixedPointLayout f(l);
  std::mt19937_64 rng(5 + k);
  std::uniform_int_distribution<int64_t> pick(-4, 4);  // small range forces ties
  GateLedger ledger;
  for (int it = 0; it < 100; ++it) {
    std::vector<int64_t> v(k);
    std::vector<WordCipher> c;
    for (auto& x : v) {
      x = pick(rng) * 97;
      c.push_back(encrypt_raw(ledger, x, f));
    }
    std::vector<SimBit> lo, hi, first;
    EXPECT_EQ(units_of(ledger, [&] { lo = argmin(c); }), uint64_t(k) * (k - 1) * (3 * l + 1));
    EXPECT_EQ(units_of(ledger, [&] { hi = argmax(c); }), uint64_t(k) * (k - 1) * (3 * l + 1));
    const int64_t mn = *std::min_element(v.begin(), v.end());
    const int64_t mx = *std::max_element(v.begin(), v.end());
    for (int i = 0; i < k; ++i) {
      EXPECT_EQ(lo[i].value(), v[i] == mn);
      EXPECT_EQ(hi[i].value(), v[i] == mx);
    }
    EXPECT_EQ(units_of(ledger, [&] { first = first_set_wins(lo); }), uint64_t(2 * k - 3));
    const size_t want = std::find(v.begin(), v.end(), mn) - v.begin();
    for (int i = 0; i < k; ++i) EXPECT_EQ(first[i].value(), static_cast<size_t>(i) == want);
  }
}

INSTANTIATE_TEST_SUITE_P(K, Selection, ::testing::Values(2, 3, 5));

TEST(Circuits, ArgminNeedsTwoValues) {
  GateLedger ledger;
  EXPECT_THROW(argmin({encrypt_raw(ledger, 1, FixedPointLayout(8))}), ValidationError);
}

TEST(Sorting, BubbleSortIsStableAscending) {
  const FixedPointLayout f(16);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int64_t> pick(-6, 6);
  for (int n : {1, 2, 3, 5, 7}) {
    GateLedger ledger;
    std::vector<int64_t> v(n);
    std::vector<WordCipher> values, labels;
    for (int i = 0; i < n; ++i) {
      v[i] = pick(rng) << 6;
      values.push_back(encrypt_raw(ledger, v[i], f));
      labels.push_back(encrypt_raw(ledger, int64_t{i} << 8, f));
    }
    std::vector<Keyed> sorted;
    EXPECT_EQ(units_of(ledger, [&] { sorted = bubble_sort(values, labels); }),
              uint64_t(11) * (n - 1) * (n - 1) * 16);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(decrypt_raw(sorted[i].value), v[order[i]]);
      EXPECT_EQ(decrypt_raw(sorted[i].label), int64_t{order[i]} << 8);
    }
  }
}

TEST(Sorting, ShapeErrors) {
  GateLedger ledger;
  const FixedPointLayout f(8);
  EXPECT_THROW(bubble_sort({}, {}), ShapeError);
  EXPECT_THROW(bubble_sort({encrypt_raw(ledger, 1, f)}, {}), ShapeError);
}

TEST(Counting, CountClass) {
  const FixedPointLayout f(16);
  GateLedger ledger;
  const std::vector<int> labels{2, 1, 2, 3, 2};
  std::vector<WordCipher> c;
  for (int x : labels) c.push_back(encrypt_raw(ledger, int64_t{x} << 8, f));
  std::vector<WordCipher> tally;
  const int s = 3;
  EXPECT_EQ(units_of(ledger, [&] { tally = count_class(c, s); }), uint64_t(5) * s * (8 * 16 - 3));
  EXPECT_EQ(decrypt_value(tally[0]), 1.0);
  EXPECT_EQ(decrypt_value(tally[1]), 3.0);
  EXPECT_EQ(decrypt_value(tally[2]), 1.0);
}
