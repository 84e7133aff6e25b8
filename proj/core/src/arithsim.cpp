#include "kernhe/arithsim.hpp"

#include <cmath>
#include <string>

#include "kernhe/errors.hpp"

namespace kernhe {

OpCounts& OpCounts::operator+=(const OpCounts& o) {
  adds += o.adds;
  mults += o.mults;
  sqrt_ops += o.sqrt_ops;
  inv_ops += o.inv_ops;
  return *this;
}

OpCounts operator*(OpCounts a, uint64_t times) {
  a.adds *= times;
  a.mults *= times;
  a.sqrt_ops *= times;
  a.inv_ops *= times;
  return a;
}

OpCounts diff(const OpCounts& before, const OpCounts& after) {
  if (after.adds < before.adds || after.mults < before.mults ||
      after.sqrt_ops < before.sqrt_ops || after.inv_ops < before.inv_ops) {
    throw NegativeDiff("op ledger diff is negative");
  }
  return {after.adds - before.adds, after.mults - before.mults,
          after.sqrt_ops - before.sqrt_ops, after.inv_ops - before.inv_ops};
}

OpCounts OpLedger::snapshot() const {
  return {adds_.load(std::memory_order_relaxed), mults_.load(std::memory_order_relaxed),
          sqrt_ops_.load(std::memory_order_relaxed), inv_ops_.load(std::memory_order_relaxed)};
}

namespace {

OpLedger& common(const Tracked& a, const Tracked& b) {
  if (!a.bound() || !b.bound() || &a.ledger() != &b.ledger()) {
    throw LedgerMismatch("tracked operands are bound to different ledgers");
  }
  return a.ledger();
}

OpLedger& bound(const Tracked& a) {
  if (!a.bound()) throw LedgerMismatch("tracked operand has no ledger");
  return a.ledger();
}

}  // namespace

Tracked operator+(const Tracked& a, const Tracked& b) {
  OpLedger& l = common(a, b);
  l.add();
  return Tracked(l, a.value() + b.value());
}

Tracked operator-(const Tracked& a, const Tracked& b) {
  OpLedger& l = common(a, b);
  l.add();
  return Tracked(l, a.value() - b.value());
}

Tracked operator*(const Tracked& a, const Tracked& b) {
  OpLedger& l = common(a, b);
  l.mult();
  return Tracked(l, a.value() * b.value());
}

Tracked operator+(const Tracked& a, double c) {
  OpLedger& l = bound(a);
  l.add();
  return Tracked(l, a.value() + c);
}

Tracked operator-(const Tracked& a, double c) {
  OpLedger& l = bound(a);
  l.add();
  return Tracked(l, a.value() - c);
}

Tracked operator-(double c, const Tracked& a) {
  OpLedger& l = bound(a);
  l.add();
  return Tracked(l, c - a.value());
}

Tracked operator*(const Tracked& a, double c) {
  OpLedger& l = bound(a);
  l.mult();
  return Tracked(l, a.value() * c);
}

void TrackedVector::set(size_t i, const Tracked& v) {
  if (&v.ledger() != ledger_) throw LedgerMismatch("vector element from another ledger");
  values_.at(i) = v.value();
}

TrackedMatrix::TrackedMatrix(OpLedger& ledger, size_t rows, size_t cols,
                             std::vector<double> row_major)
    : rows_(rows), cols_(cols), values_(std::move(row_major)), ledger_(&ledger) {
  if (values_.size() != rows * cols) throw ShapeError("matrix data does not match its shape");
}

Tracked TrackedMatrix::at(size_t r, size_t c) const {
  if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
  return Tracked(*ledger_, values_[r * cols_ + c]);
}

void TrackedMatrix::set(size_t r, size_t c, const Tracked& v) {
  if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
  if (&v.ledger() != ledger_) throw LedgerMismatch("matrix element from another ledger");
  values_[r * cols_ + c] = v.value();
}

TrackedVector TrackedMatrix::row(size_t r) const {
  if (r >= rows_) throw ShapeError("matrix row out of range");
  return TrackedVector(*ledger_, std::vector<double>(values_.begin() + r * cols_,
                                                     values_.begin() + (r + 1) * cols_));
}

TrackedMatrix TrackedMatrix::transpose() const {
  TrackedMatrix t(*ledger_, cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.values_[c * rows_ + r] = values_[r * cols_ + c];
  return t;
}

void IterationBudgets::validate() const {
  if (t_pow < 1 || t_sqrt < 1 || t_sinv < 1) {
    throw ValidationError("iteration budgets must all be >= 1");
  }
}

Tracked dot(const TrackedVector& u, const TrackedVector& v) {
  if (u.size() != v.size()) {
    throw ShapeError("dot: lengths " + std::to_string(u.size()) + " and " +
                     std::to_string(v.size()));
  }
  if (u.size() == 0) throw ShapeError("dot: empty vectors");
  Tracked s = u.at(0) * v.at(0);
  for (size_t i = 1; i < u.size(); ++i) s = s + u.at(i) * v.at(i);
  return s;
}

TrackedVector matvec(const TrackedMatrix& a, const TrackedVector& x) {
  if (a.cols() != x.size()) throw ShapeError("matvec: shape mismatch");
  TrackedVector out(a.ledger(), a.rows());
  for (size_t r = 0; r < a.rows(); ++r) out.set(r, dot(a.row(r), x));
  return out;
}

TrackedMatrix matmul(const TrackedMatrix& a, const TrackedMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul: shape mismatch");
  const TrackedMatrix bt = b.transpose();
  TrackedMatrix out(a.ledger(), a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    const TrackedVector row = a.row(r);
    for (size_t c = 0; c < b.cols(); ++c) out.set(r, c, dot(row, bt.row(c)));
  }
  return out;
}

namespace {

// x_{k+1} = x_k (1 - y_k/2), y_{k+1} = y_k^2 (y_k - 3)/4, carried as
// w = y/2 so each step is w <- w^2 (w - 3/2).
Tracked wilkes(const Tracked& a, int t_sqrt) {
  bound(a).sqrt_op();
  Tracked x = a;
  Tracked w = (a - 1.0) * 0.5;
  for (int k = 0; k < t_sqrt; ++k) {
    x = x * (1.0 - w);
    w = (w * w) * (w - 1.5);
  }
  return x;
}

Tracked goldschmidt(const Tracked& a, int t_sinv) {
  bound(a).inv_op();
  Tracked x = 2.0 - a;
  Tracked e = 1.0 - a;
  for (int k = 0; k < t_sinv; ++k) {
    e = e * e;
    x = x * (e + 1.0);
  }
  return x;
}

void check_iterations(int t, const char* what) {
  if (t < 1) throw ValidationError(std::string(what) + " iteration count must be >= 1");
}

}  // namespace

Tracked sqrt_approx(const Tracked& a, int t_sqrt) {
  check_iterations(t_sqrt, "sqrt");
  if (!(a.value() > 0.0) || a.value() > 1.0) {
    throw DomainError("sqrt_approx expects a value in (0, 1], got " + std::to_string(a.value()));
  }
  return wilkes(a, t_sqrt);
}

Tracked inverse_approx(const Tracked& a, int t_sinv) {
  check_iterations(t_sinv, "inverse");
  if (!(a.value() > 0.0) || !(a.value() < 2.0)) {
    throw DomainError("inverse_approx expects a value in (0, 2), got " +
                      std::to_string(a.value()));
  }
  return goldschmidt(a, t_sinv);
}

Tracked sqrt_scaled(const Tracked& a, int t_sqrt) {
  check_iterations(t_sqrt, "sqrt");
  const double v = a.value();
  if (v < 0.0 || !std::isfinite(v)) {
    throw DomainError("square root of negative value " + std::to_string(v));
  }
  // Even exponent e with v / 2^e in (1/4, 1].
  int e = 0;
  if (v > 0.0) {
    std::frexp(v, &e);  // v = f * 2^e, f in [0.5, 1)
    if (e % 2 != 0) ++e;
  }
  const Tracked scaled = a * std::ldexp(1.0, -e);
  return wilkes(scaled, t_sqrt) * std::ldexp(1.0, e / 2);
}

Tracked inverse_scaled(const Tracked& a, int t_sinv) {
  check_iterations(t_sinv, "inverse");
  const double v = a.value();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("inverse of non-positive value " + std::to_string(v));
  }
  int e = 0;
  std::frexp(v, &e);  // v / 2^e in [0.5, 1)
  const Tracked scaled = a * std::ldexp(1.0, -e);
  return goldschmidt(scaled, t_sinv) * std::ldexp(1.0, -e);
}

namespace {

TrackedVector normalize(const TrackedVector& w, const IterationBudgets& b) {
  const Tracked n2 = dot(w, w);
  if (!(n2.value() > 0.0)) throw DomainError("power iteration reached the zero vector");
  const Tracked inv = inverse_scaled(sqrt_scaled(n2, b.t_sqrt), b.t_sinv);
  TrackedVector v(w.ledger(), w.size());
  for (size_t i = 0; i < w.size(); ++i) v.set(i, w.at(i) * inv);
  return v;
}

}  // namespace

EigenPair power_iteration(const TrackedMatrix& m, const IterationBudgets& budgets) {
  budgets.validate();
  if (m.rows() == 0) throw ShapeError("power_iteration: empty matrix");
  if (m.rows() != m.cols()) throw ShapeError("power_iteration: matrix is not square");
  const size_t n = m.rows();
  TrackedVector v(m.ledger(), std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  Tracked lambda;
  for (int it = 1; it <= budgets.t_pow; ++it) {
    const TrackedVector w = matvec(m, v);
    if (it == budgets.t_pow) lambda = dot(v, w);
    v = normalize(w, budgets);
  }
  return {lambda, v};
}

namespace op_cost {

OpCounts dot(size_t d) { return {d - 1, d, 0, 0}; }
OpCounts matvec(size_t rows, size_t cols) { return dot(cols) * rows; }
OpCounts matmul(size_t rows, size_t inner, size_t cols) { return dot(inner) * (rows * cols); }
OpCounts sqrt_approx(int t) { return {1 + 2ull * t, 1 + 3ull * t, 1, 0}; }
OpCounts inverse_approx(int t) { return {2 + 1ull * t, 2ull * t, 0, 1}; }
OpCounts sqrt_scaled(int t) { return sqrt_approx(t) + OpCounts{0, 2, 0, 0}; }
OpCounts inverse_scaled(int t) { return inverse_approx(t) + OpCounts{0, 2, 0, 0}; }
OpCounts normalize(size_t m, const IterationBudgets& b) {
  return dot(m) + sqrt_scaled(b.t_sqrt) + inverse_scaled(b.t_sinv) + OpCounts{0, m, 0, 0};
}
OpCounts power_iteration(size_t m, const IterationBudgets& b) {
  return (matvec(m, m) + normalize(m, b)) * static_cast<uint64_t>(b.t_pow) + dot(m);
}

}  // namespace op_cost

}  // namespace kernhe
