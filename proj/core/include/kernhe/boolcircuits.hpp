#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kernhe/fixedpoint.hpp"
#include "kernhe/gatesim.hpp"

namespace kernhe {

struct WordCipher {
  std::vector<SimBit> bits;  // LSB first, length l
  FixedPointLayout layout;

  int width() const { return static_cast<int>(bits.size()); }
  const SimBit& msb() const { return bits.back(); }
  GateLedger& ledger() const { return *bits.front().ledger(); }
};

// Encryption and decryption are identity transforms on the plaintext bits;
// constants cost nothing.
WordCipher encrypt_word(GateLedger& ledger, const FixedPointWord& w);
WordCipher encrypt_raw(GateLedger& ledger, int64_t raw, const FixedPointLayout& layout);
WordCipher encrypt_value(GateLedger& ledger, double x, const FixedPointLayout& layout);
FixedPointWord decrypt_word(const WordCipher& c);
int64_t decrypt_raw(const WordCipher& c);
double decrypt_value(const WordCipher& c);

// Fixed-point integer word holding `bit` at position l/2, zero elsewhere.
WordCipher word_from_bit(const SimBit& bit, const FixedPointLayout& layout);
// Multiply by two by rewiring; the top bit is dropped.
WordCipher shift_left_one(const WordCipher& a);

WordCipher add(const WordCipher& a, const WordCipher& b);       // 5l - 3
WordCipher sub(const WordCipher& a, const WordCipher& b);       // 5l - 3
WordCipher negate(const WordCipher& a);                         // 2l - 1
WordCipher abs_value(const WordCipher& a);                      // 4l - 1
WordCipher mux_word(const SimBit& sel, const WordCipher& a, const WordCipher& b);  // 2l
WordCipher mult(const WordCipher& a, const WordCipher& b);      // 6l^2 + 15l - 6

struct DivideResult {
  WordCipher quotient;
  bool div_by_zero = false;  // simulation-level flag
};
DivideResult divide(const WordCipher& a, const WordCipher& b);  // 13.5l^2 - 1.5l + 1

SimBit leq(const WordCipher& a, const WordCipher& b);  // signed, 3l
SimBit eq(const WordCipher& a, const WordCipher& b);   // 3l

// Algorithm-1 style selection: bit i set iff values[i] is minimal (maximal).
// Ties set every extreme position. k(k-1)(3l+1).
std::vector<SimBit> argmin(const std::vector<WordCipher>& values);
std::vector<SimBit> argmax(const std::vector<WordCipher>& values);

// Keep only the first set bit (prefix chain, 2k - 3 gates for k >= 2).
std::vector<SimBit> first_set_wins(const std::vector<SimBit>& bits);

struct Keyed {
  WordCipher value;
  WordCipher label;
};

// Ordered pair (min, max); equal values keep their order. 11l.
std::pair<Keyed, Keyed> min_max(const Keyed& first, const Keyed& second);

// Ascending bubble sort with a fixed (n-1)^2 compare-and-swap schedule.
std::vector<Keyed> bubble_sort(const std::vector<WordCipher>& values,
                               const std::vector<WordCipher>& labels);

// tally[i] counts labels equal to class i + 1, as fixed-point integers.
// ks(8l - 3).
std::vector<WordCipher> count_class(const std::vector<WordCipher>& labels, int s);

// Closed-form gate-unit counts of the circuits above.
namespace gate_cost {

uint64_t add(int l);
uint64_t sub(int l);
uint64_t negate(int l);
uint64_t abs_value(int l);
uint64_t mux_word(int l);
uint64_t mult(int l);
uint64_t divide(int l);
uint64_t leq(int l);
uint64_t eq(int l);
uint64_t argminmax(int k, int l);
uint64_t first_set_wins(int k);
uint64_t min_max(int l);
uint64_t bubble_sort(int n, int l);
uint64_t count_class(int k, int s, int l);

}  // namespace gate_cost

}  // namespace kernhe
