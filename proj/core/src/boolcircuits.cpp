#include "kernhe/boolcircuits.hpp"

#include <string>

#include "kernhe/errors.hpp"

namespace kernhe {

namespace {

using Bits = std::vector<SimBit>;

void check_layout(const WordCipher& a, const WordCipher& b) {
  if (!(a.layout == b.layout) || a.width() != b.width()) {
    throw LayoutMismatch("word layouts differ (l=" + std::to_string(a.layout.l()) + " vs l=" +
                         std::to_string(b.layout.l()) + ")");
  }
}

void check_nonempty(const WordCipher& a) {
  if (a.bits.empty() || a.width() != a.layout.l()) {
    throw LayoutMismatch("word width does not match its layout");
  }
}

SimBit xnor(const SimBit& a, const SimBit& b) { return gate_not(gate_xor(a, b)); }

// Ripple-carry adder: half adder on bit 0, full adders above. 5w - 3 gates.
std::pair<Bits, SimBit> ripple_add(const Bits& a, const Bits& b) {
  const size_t w = a.size();
  Bits sum(w);
  sum[0] = gate_xor(a[0], b[0]);
  SimBit carry = gate_and(a[0], b[0]);
  for (size_t i = 1; i < w; ++i) {
    const SimBit t = gate_xor(a[i], b[i]);
    sum[i] = gate_xor(t, carry);
    carry = gate_or(gate_and(a[i], b[i]), gate_and(t, carry));
  }
  return {std::move(sum), carry};
}

// Borrow-ripple subtractor, same shape as the adder. 5w - 3 gates.
Bits ripple_sub(const Bits& a, const Bits& b) {
  const size_t w = a.size();
  Bits diff(w);
  diff[0] = gate_xor(a[0], b[0]);
  SimBit borrow = gate_and(gate_not(a[0]), b[0]);
  for (size_t i = 1; i < w; ++i) {
    const SimBit t = gate_xor(a[i], b[i]);
    diff[i] = gate_xor(t, borrow);
    borrow = gate_or(gate_and(gate_not(a[i]), b[i]), gate_and(gate_not(t), borrow));
  }
  return diff;
}

// a <= b scanning LSB to MSB; the last differing bit decides. 3 per bit.
SimBit leq_chain(const Bits& a, const Bits& b, bool is_signed) {
  const size_t w = a.size();
  SimBit r = SimBit::constant(*a[0].ledger(), true);
  for (size_t i = 0; i < w; ++i) {
    const SimBit same = xnor(a[i], b[i]);
    const bool sign_bit = is_signed && i + 1 == w;
    r = mux(same, r, sign_bit ? a[i] : b[i]);
  }
  return r;
}

Bits mux_bits(const SimBit& sel, const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = mux(sel, a[i], b[i]);
  return out;
}

Bits zero_bits(GateLedger& ledger, size_t w) {
  Bits out(w);
  for (auto& bit : out) bit = SimBit::constant(ledger, false);
  return out;
}

}  // namespace

WordCipher encrypt_word(GateLedger& ledger, const FixedPointWord& w) {
  WordCipher c{Bits(w.bits.size()), w.layout};
  for (size_t i = 0; i < w.bits.size(); ++i) c.bits[i] = SimBit::constant(ledger, w.bits[i] != 0);
  return c;
}

WordCipher encrypt_raw(GateLedger& ledger, int64_t raw, const FixedPointLayout& layout) {
  return encrypt_word(ledger, FixedPointWord::from_raw(raw, layout));
}

WordCipher encrypt_value(GateLedger& ledger, double x, const FixedPointLayout& layout) {
  return encrypt_word(ledger, encode(x, layout));
}

FixedPointWord decrypt_word(const WordCipher& c) {
  FixedPointWord w{std::vector<uint8_t>(c.bits.size()), c.layout};
  for (size_t i = 0; i < c.bits.size(); ++i) w.bits[i] = c.bits[i].value() ? 1 : 0;
  return w;
}

int64_t decrypt_raw(const WordCipher& c) { return decrypt_word(c).raw(); }

double decrypt_value(const WordCipher& c) { return decode(decrypt_word(c)); }

WordCipher word_from_bit(const SimBit& bit, const FixedPointLayout& layout) {
  WordCipher w{zero_bits(*bit.ledger(), layout.l()), layout};
  w.bits[layout.frac_bits()] = bit;
  return w;
}

WordCipher shift_left_one(const WordCipher& a) {
  check_nonempty(a);
  WordCipher out{Bits(a.bits.size()), a.layout};
  out.bits[0] = SimBit::constant(a.ledger(), false);
  for (int i = 1; i < a.width(); ++i) out.bits[i] = a.bits[i - 1];
  return out;
}

WordCipher add(const WordCipher& a, const WordCipher& b) {
  check_layout(a, b);
  check_nonempty(a);
  return {ripple_add(a.bits, b.bits).first, a.layout};
}

WordCipher sub(const WordCipher& a, const WordCipher& b) {
  check_layout(a, b);
  check_nonempty(a);
  return {ripple_sub(a.bits, b.bits), a.layout};
}

// ~a + 1 as an incrementer: XOR per bit, carry AND on all but the top bit.
WordCipher negate(const WordCipher& a) {
  check_nonempty(a);
  const int l = a.width();
  WordCipher out{Bits(l), a.layout};
  SimBit carry = SimBit::constant(a.ledger(), true);
  for (int i = 0; i < l; ++i) {
    const SimBit inv = gate_not(a.bits[i]);
    out.bits[i] = gate_xor(inv, carry);
    if (i + 1 < l) carry = gate_and(inv, carry);
  }
  return out;
}

WordCipher abs_value(const WordCipher& a) { return mux_word(a.msb(), negate(a), a); }

WordCipher mux_word(const SimBit& sel, const WordCipher& a, const WordCipher& b) {
  check_layout(a, b);
  check_nonempty(a);
  return {mux_bits(sel, a.bits, b.bits), a.layout};
}

// Shift-and-add array over the raw patterns: row i adds (a AND b_i) into the
// running high half and retires one product bit. The unsigned product is then
// corrected to two's complement by subtracting a_msb*B and b_msb*A from the
// high half. The correction words are formed at the full 2l-bit width of the
// product; only their high halves reach the subtractors.
WordCipher mult(const WordCipher& a, const WordCipher& b) {
  check_layout(a, b);
  check_nonempty(a);
  const int l = a.width();
  GateLedger& ledger = a.ledger();

  Bits hi = zero_bits(ledger, l);
  Bits lo(l);
  for (int i = 0; i < l; ++i) {
    Bits pp(l);
    for (int j = 0; j < l; ++j) pp[j] = gate_and(a.bits[j], b.bits[i]);
    auto [sum, carry] = ripple_add(hi, pp);
    lo[i] = sum[0];
    for (int j = 0; j + 1 < l; ++j) hi[j] = sum[j + 1];
    hi[l - 1] = carry;
  }

  const Bits zeros = zero_bits(ledger, l);
  Bits shifted_b = zeros;
  shifted_b.insert(shifted_b.end(), b.bits.begin(), b.bits.end());
  Bits shifted_a = zeros;
  shifted_a.insert(shifted_a.end(), a.bits.begin(), a.bits.end());
  Bits wide_zero = zero_bits(ledger, 2 * l);
  const Bits corr_a = mux_bits(a.msb(), shifted_b, wide_zero);
  const Bits corr_b = mux_bits(b.msb(), shifted_a, wide_zero);
  hi = ripple_sub(hi, Bits(corr_a.begin() + l, corr_a.end()));
  hi = ripple_sub(hi, Bits(corr_b.begin() + l, corr_b.end()));

  Bits product = lo;
  product.insert(product.end(), hi.begin(), hi.end());
  const int h = a.layout.frac_bits();
  return {Bits(product.begin() + h, product.begin() + h + l), a.layout};
}

// Sign-magnitude restoring division. The dividend |a| << l/2 is kept to
// 3l/2 - 1 bits and each step compares, masks the divisor and subtracts.
DivideResult divide(const WordCipher& a, const WordCipher& b) {
  check_layout(a, b);
  check_nonempty(a);
  const int l = a.width();
  const int h = a.layout.frac_bits();
  GateLedger& ledger = a.ledger();

  const WordCipher ua = abs_value(a);
  const WordCipher ub = abs_value(b);
  const SimBit negative = gate_xor(a.msb(), b.msb());

  const int steps = 3 * l / 2 - 1;
  Bits dividend = zero_bits(ledger, steps);
  for (int j = h; j < steps; ++j) dividend[j] = ua.bits[j - h];

  Bits rem = zero_bits(ledger, l);
  Bits q(steps);
  for (int j = steps - 1; j >= 0; --j) {
    Bits shifted(l);
    shifted[0] = dividend[j];
    for (int i = 1; i < l; ++i) shifted[i] = rem[i - 1];
    const SimBit fits = leq_chain(ub.bits, shifted, false);
    Bits masked(l);
    for (int i = 0; i < l; ++i) masked[i] = gate_and(ub.bits[i], fits);
    rem = ripple_sub(shifted, masked);
    q[j] = fits;
  }

  const WordCipher mag{Bits(q.begin(), q.begin() + l), a.layout};
  DivideResult result{mux_word(negative, negate(mag), mag), false};
  if (decrypt_raw(b) == 0) {
    result.div_by_zero = true;
    for (auto& bit : result.quotient.bits) bit = SimBit::constant(ledger, true);
  }
  return result;
}

SimBit leq(const WordCipher& a, const WordCipher& b) {
  check_layout(a, b);
  check_nonempty(a);
  return leq_chain(a.bits, b.bits, true);
}

// Same chain as the comparator with the "differ" branch tied to 0.
SimBit eq(const WordCipher& a, const WordCipher& b) {
  check_layout(a, b);
  check_nonempty(a);
  GateLedger& ledger = a.ledger();
  SimBit r = SimBit::constant(ledger, true);
  const SimBit zero = SimBit::constant(ledger, false);
  for (int i = 0; i < a.width(); ++i) r = mux(xnor(a.bits[i], b.bits[i]), r, zero);
  return r;
}

namespace {

std::vector<SimBit> select_extreme(const std::vector<WordCipher>& values, bool want_min) {
  const size_t k = values.size();
  if (k < 2) throw ValidationError("argmin/argmax needs at least two values");
  for (const auto& v : values) check_layout(values[0], v);
  std::vector<SimBit> out(k);
  for (size_t i = 0; i < k; ++i) {
    SimBit bit = SimBit::constant(values[i].ledger(), true);
    for (size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const SimBit c = want_min ? leq(values[i], values[j]) : leq(values[j], values[i]);
      bit = gate_and(bit, c);
    }
    out[i] = bit;
  }
  return out;
}

}  // namespace

std::vector<SimBit> argmin(const std::vector<WordCipher>& values) {
  return select_extreme(values, true);
}

std::vector<SimBit> argmax(const std::vector<WordCipher>& values) {
  return select_extreme(values, false);
}

std::vector<SimBit> first_set_wins(const std::vector<SimBit>& bits) {
  std::vector<SimBit> out = bits;
  if (bits.size() < 2) return out;
  SimBit seen = bits[0];
  for (size_t i = 1; i < bits.size(); ++i) {
    out[i] = gate_and(bits[i], gate_not(seen));
    if (i + 1 < bits.size()) seen = gate_or(seen, bits[i]);
  }
  return out;
}

std::pair<Keyed, Keyed> min_max(const Keyed& first, const Keyed& second) {
  check_layout(first.value, second.value);
  check_layout(first.label, second.label);
  const SimBit t = leq(first.value, second.value);
  const SimBit nt = gate_not(t);
  Keyed lo{mux_word(t, first.value, second.value), mux_word(t, first.label, second.label)};
  Keyed hi{mux_word(nt, first.value, second.value), mux_word(nt, first.label, second.label)};
  return {std::move(lo), std::move(hi)};
}

std::vector<Keyed> bubble_sort(const std::vector<WordCipher>& values,
                               const std::vector<WordCipher>& labels) {
  if (values.size() != labels.size()) {
    throw ShapeError("bubble_sort: " + std::to_string(values.size()) + " values but " +
                     std::to_string(labels.size()) + " labels");
  }
  if (values.empty()) throw ShapeError("bubble_sort: empty input");
  std::vector<Keyed> items;
  items.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) items.push_back({values[i], labels[i]});
  const size_t n = items.size();
  for (size_t pass = 0; pass + 1 < n; ++pass) {
    for (size_t j = 0; j + 1 < n; ++j) {
      auto [lo, hi] = min_max(items[j], items[j + 1]);
      items[j] = std::move(lo);
      items[j + 1] = std::move(hi);
    }
  }
  return items;
}

std::vector<WordCipher> count_class(const std::vector<WordCipher>& labels, int s) {
  if (s < 1) throw ValidationError("count_class needs s >= 1");
  if (labels.empty()) throw ShapeError("count_class: no labels");
  const FixedPointLayout& layout = labels[0].layout;
  GateLedger& ledger = labels[0].ledger();
  std::vector<WordCipher> tally;
  tally.reserve(s);
  for (int cls = 1; cls <= s; ++cls) {
    const WordCipher id = encrypt_raw(ledger, int64_t{cls} << layout.frac_bits(), layout);
    WordCipher n = encrypt_raw(ledger, 0, layout);
    for (const auto& label : labels) n = add(n, word_from_bit(eq(id, label), layout));
    tally.push_back(std::move(n));
  }
  return tally;
}

namespace gate_cost {

uint64_t add(int l) { return 5ull * l - 3; }
uint64_t sub(int l) { return 5ull * l - 3; }
uint64_t negate(int l) { return 2ull * l - 1; }
uint64_t abs_value(int l) { return 4ull * l - 1; }
uint64_t mux_word(int l) { return 2ull * l; }
uint64_t mult(int l) {
  const uint64_t L = l;
  return 6 * L * L + 15 * L - 6;
}
uint64_t divide(int l) {
  const uint64_t L = l;  // 13.5l^2 - 1.5l + 1 is an integer for even l
  return (27 * L * L - 3 * L + 2) / 2;
}
uint64_t leq(int l) { return 3ull * l; }
uint64_t eq(int l) { return 3ull * l; }
uint64_t argminmax(int k, int l) { return uint64_t(k) * (k - 1) * (3ull * l + 1); }
uint64_t first_set_wins(int k) { return k < 2 ? 0 : 2ull * k - 3; }
uint64_t min_max(int l) { return 11ull * l; }
uint64_t bubble_sort(int n, int l) { return 11ull * (n - 1) * (n - 1) * l; }
uint64_t count_class(int k, int s, int l) { return uint64_t(k) * s * (8ull * l - 3); }

}  // namespace gate_cost

}  // namespace kernhe
