#include "kernhe/fixedpoint.hpp"

#include <cmath>
#include <string>

#include "kernhe/errors.hpp"

namespace kernhe {

FixedPointLayout::FixedPointLayout(int l) : l_(l) {
  if (l < 4 || l % 2 != 0 || l > kMaxBits) {
    throw ValidationError("fixed-point width must be even and in [4, 32], got " +
                          std::to_string(l));
  }
}

int64_t FixedPointLayout::to_signed(uint64_t pattern) const {
  pattern &= mask();
  if (pattern >> (l_ - 1)) return static_cast<int64_t>(pattern) - (int64_t{1} << l_);
  return static_cast<int64_t>(pattern);
}

uint64_t FixedPointWord::pattern() const {
  uint64_t p = 0;
  for (size_t i = 0; i < bits.size(); ++i) p |= uint64_t{bits[i] & 1u} << i;
  return p;
}

FixedPointWord FixedPointWord::from_raw(int64_t raw, const FixedPointLayout& layout) {
  FixedPointWord w{std::vector<uint8_t>(layout.l()), layout};
  const uint64_t p = layout.to_pattern(raw);
  for (int i = 0; i < layout.l(); ++i) w.bits[i] = (p >> i) & 1u;
  return w;
}

int64_t quantize(double x, const FixedPointLayout& layout) {
  const double limit = std::ldexp(1.0, layout.l() / 2 - 1);
  if (!std::isfinite(x) || std::fabs(x) >= limit) {
    throw RangeError("value " + std::to_string(x) + " outside fixed-point range for l=" +
                     std::to_string(layout.l()));
  }
  // std::round rounds half away from zero.
  const double r = std::round(x * layout.scale());
  if (r > static_cast<double>(layout.max_raw()) || r < static_cast<double>(layout.min_raw())) {
    throw RangeError("value " + std::to_string(x) + " rounds outside fixed-point range");
  }
  return static_cast<int64_t>(r);
}

FixedPointWord encode(double x, const FixedPointLayout& layout) {
  return FixedPointWord::from_raw(quantize(x, layout), layout);
}

double decode_raw(int64_t raw, const FixedPointLayout& layout) {
  return static_cast<double>(raw) / layout.scale();
}

double decode(const FixedPointWord& w) { return decode_raw(w.raw(), w.layout); }

namespace fxref {

int64_t wrap(int128 v, const FixedPointLayout& layout) {
  return layout.to_signed(static_cast<uint64_t>(v));
}

int64_t add(int64_t a, int64_t b, const FixedPointLayout& layout) {
  return wrap(static_cast<int128>(a) + b, layout);
}

int64_t sub(int64_t a, int64_t b, const FixedPointLayout& layout) {
  return wrap(static_cast<int128>(a) - b, layout);
}

int64_t negate(int64_t a, const FixedPointLayout& layout) {
  return wrap(-static_cast<int128>(a), layout);
}

int64_t abs_value(int64_t a, const FixedPointLayout& layout) {
  return a < 0 ? negate(a, layout) : a;
}

int64_t mult(int64_t a, int64_t b, const FixedPointLayout& layout) {
  const int128 p = static_cast<int128>(a) * b;
  return wrap(p >> layout.frac_bits(), layout);
}

DivResult divide(int64_t a, int64_t b, const FixedPointLayout& layout) {
  if (wrap(b, layout) == 0) return {wrap(-1, layout), true};
  const int l = layout.l();
  const uint64_t ua = layout.to_pattern(abs_value(a, layout));
  const uint64_t ub = layout.to_pattern(abs_value(b, layout));
  const int dividend_bits = 3 * l / 2 - 1;
  const uint64_t n = (ua << layout.frac_bits()) & ((uint64_t{1} << dividend_bits) - 1);
  uint64_t q = (n / ub) & layout.mask();
  const bool negative = (a < 0) != (b < 0);
  if (negative) q = (~q + 1) & layout.mask();
  return {layout.to_signed(q), false};
}

bool leq(int64_t a, int64_t b) { return a <= b; }
bool eq(int64_t a, int64_t b) { return a == b; }

}  // namespace fxref

}  // namespace kernhe
