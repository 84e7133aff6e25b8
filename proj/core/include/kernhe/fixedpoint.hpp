#pragma once

#include <cstdint>
#include <vector>

namespace kernhe {

__extension__ using int128 = __int128;

// l-bit two's complement with l/2 fractional bits, l/2 - 1 integer bits and
// one sign bit. Widths are limited to 32 so every intermediate fits __int128.
class FixedPointLayout {
 public:
  static constexpr int kMaxBits = 32;

  explicit FixedPointLayout(int l = 16);

  int l() const { return l_; }
  int frac_bits() const { return l_ / 2; }
  int int_bits() const { return l_ / 2 - 1; }
  int sign_bits() const { return 1; }

  uint64_t mask() const { return (uint64_t{1} << l_) - 1; }
  int64_t max_raw() const { return (int64_t{1} << (l_ - 1)) - 1; }
  int64_t min_raw() const { return -(int64_t{1} << (l_ - 1)); }
  double scale() const { return static_cast<double>(uint64_t{1} << frac_bits()); }

  // Reinterpret the low l bits of a pattern as a signed value.
  int64_t to_signed(uint64_t pattern) const;
  uint64_t to_pattern(int64_t raw) const { return static_cast<uint64_t>(raw) & mask(); }

  friend bool operator==(const FixedPointLayout&, const FixedPointLayout&) = default;

 private:
  int l_;
};

struct FixedPointWord {
  std::vector<uint8_t> bits;  // LSB first
  FixedPointLayout layout;

  uint64_t pattern() const;
  int64_t raw() const { return layout.to_signed(pattern()); }

  static FixedPointWord from_raw(int64_t raw, const FixedPointLayout& layout);
};

// round(x * 2^(l/2)), half away from zero. Throws RangeError when
// |x| >= 2^(l/2 - 1) or the rounded value leaves the signed range.
int64_t quantize(double x, const FixedPointLayout& layout);

FixedPointWord encode(double x, const FixedPointLayout& layout);
double decode(const FixedPointWord& w);
double decode_raw(int64_t raw, const FixedPointLayout& layout);

// Plaintext arithmetic with exactly the semantics of the Boolean circuits.
// Values are signed raw integers; results wrap modulo 2^l.
namespace fxref {

int64_t wrap(int128 v, const FixedPointLayout& layout);
int64_t add(int64_t a, int64_t b, const FixedPointLayout& layout);
int64_t sub(int64_t a, int64_t b, const FixedPointLayout& layout);
int64_t negate(int64_t a, const FixedPointLayout& layout);
int64_t abs_value(int64_t a, const FixedPointLayout& layout);
// Exact 2l-bit product, arithmetic shift right by l/2, low l bits.
int64_t mult(int64_t a, int64_t b, const FixedPointLayout& layout);

struct DivResult {
  int64_t value;
  bool div_by_zero;
};
// Quotient truncated toward zero. The scaled dividend is kept to 3l/2 - 1 bits,
// so only the most negative dividend wraps. b == 0 gives all ones.
DivResult divide(int64_t a, int64_t b, const FixedPointLayout& layout);

bool leq(int64_t a, int64_t b);
bool eq(int64_t a, int64_t b);

}  // namespace fxref

}  // namespace kernhe
