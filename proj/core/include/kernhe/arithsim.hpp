#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace kernhe {

struct OpCounts {
  uint64_t adds = 0;
  uint64_t mults = 0;
  uint64_t sqrt_ops = 0;
  uint64_t inv_ops = 0;

  OpCounts& operator+=(const OpCounts& o);
  friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
  friend OpCounts operator*(OpCounts a, uint64_t times);
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

// after - before; throws NegativeDiff if any counter went down.
OpCounts diff(const OpCounts& before, const OpCounts& after);

class OpLedger {
 public:
  OpLedger() = default;
  OpLedger(const OpLedger&) = delete;
  OpLedger& operator=(const OpLedger&) = delete;

  void add(uint64_t n = 1) { adds_.fetch_add(n, std::memory_order_relaxed); }
  void mult(uint64_t n = 1) { mults_.fetch_add(n, std::memory_order_relaxed); }
  void sqrt_op() { sqrt_ops_.fetch_add(1, std::memory_order_relaxed); }
  void inv_op() { inv_ops_.fetch_add(1, std::memory_order_relaxed); }
  OpCounts snapshot() const;

 private:
  std::atomic<uint64_t> adds_{0};
  std::atomic<uint64_t> mults_{0};
  std::atomic<uint64_t> sqrt_ops_{0};
  std::atomic<uint64_t> inv_ops_{0};
};

// A real value standing in for an arithmetic-HE ciphertext. Every operator
// records itself: one add per addition or subtraction, one mult per
// multiplication, including by plaintext constants.
class Tracked {
 public:
  Tracked() = default;
  Tracked(OpLedger& ledger, double value) : value_(value), ledger_(&ledger) {}

  double value() const { return value_; }
  OpLedger& ledger() const { return *ledger_; }
  bool bound() const { return ledger_ != nullptr; }

  friend Tracked operator+(const Tracked& a, const Tracked& b);
  friend Tracked operator-(const Tracked& a, const Tracked& b);
  friend Tracked operator*(const Tracked& a, const Tracked& b);
  friend Tracked operator+(const Tracked& a, double c);
  friend Tracked operator-(const Tracked& a, double c);
  friend Tracked operator-(double c, const Tracked& a);
  friend Tracked operator*(const Tracked& a, double c);
  friend Tracked operator*(double c, const Tracked& a) { return a * c; }

 private:
  double value_ = 0.0;
  OpLedger* ledger_ = nullptr;
};

using TrackedScalar = Tracked;

class TrackedVector {
 public:
  TrackedVector() = default;
  TrackedVector(OpLedger& ledger, std::vector<double> values)
      : values_(std::move(values)), ledger_(&ledger) {}
  TrackedVector(OpLedger& ledger, size_t n) : values_(n, 0.0), ledger_(&ledger) {}

  size_t size() const { return values_.size(); }
  Tracked at(size_t i) const { return Tracked(*ledger_, values_.at(i)); }
  void set(size_t i, const Tracked& v);
  const std::vector<double>& values() const { return values_; }
  OpLedger& ledger() const { return *ledger_; }

 private:
  std::vector<double> values_;
  OpLedger* ledger_ = nullptr;
};

class TrackedMatrix {
 public:
  TrackedMatrix() = default;
  TrackedMatrix(OpLedger& ledger, size_t rows, size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0), ledger_(&ledger) {}
  TrackedMatrix(OpLedger& ledger, size_t rows, size_t cols, std::vector<double> row_major);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Tracked at(size_t r, size_t c) const;
  void set(size_t r, size_t c, const Tracked& v);
  TrackedVector row(size_t r) const;
  double value(size_t r, size_t c) const { return values_[r * cols_ + c]; }
  const std::vector<double>& values() const { return values_; }
  OpLedger& ledger() const { return *ledger_; }
  // Rewiring only; costs nothing.
  TrackedMatrix transpose() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
  OpLedger* ledger_ = nullptr;
};

struct IterationBudgets {
  int t_pow = 30;
  int t_sqrt = 20;
  int t_sinv = 20;

  void validate() const;
};

// sum u_i v_i: d mults, d - 1 adds.
Tracked dot(const TrackedVector& u, const TrackedVector& v);
TrackedVector matvec(const TrackedMatrix& a, const TrackedVector& x);
TrackedMatrix matmul(const TrackedMatrix& a, const TrackedMatrix& b);

// Coupled square-root iteration on (0, 1]: 1 add + 1 mult to start, then
// 3 mults + 2 adds per iteration.
Tracked sqrt_approx(const Tracked& a, int t_sqrt);
// Reciprocal iteration on (0, 2): 2 adds to start, then 2 mults + 1 add per
// iteration.
Tracked inverse_approx(const Tracked& a, int t_sinv);

// Scale by a power of two into the primitive's domain, run it, and undo the
// scale. The exponent is read from the plaintext value (a deployment would use
// a public bound); the two scaling mults are always charged so counts stay
// value-independent. sqrt_scaled accepts 0 and returns 0.
Tracked sqrt_scaled(const Tracked& a, int t_sqrt);
Tracked inverse_scaled(const Tracked& a, int t_sinv);

struct EigenPair {
  Tracked eigenvalue;
  TrackedVector eigenvector;
};

// Exactly t_pow mat-vec products from the normalized all-ones vector. The
// eigenvalue is the Rayleigh quotient of the last input vector.
EigenPair power_iteration(const TrackedMatrix& m, const IterationBudgets& budgets);

// Closed-form op counts of the routines above.
namespace op_cost {

OpCounts dot(size_t d);
OpCounts matvec(size_t rows, size_t cols);
OpCounts matmul(size_t rows, size_t inner, size_t cols);
OpCounts sqrt_approx(int t_sqrt);
OpCounts inverse_approx(int t_sinv);
OpCounts sqrt_scaled(int t_sqrt);
OpCounts inverse_scaled(int t_sinv);
OpCounts normalize(size_t m, const IterationBudgets& b);
OpCounts power_iteration(size_t m, const IterationBudgets& b);

}  // namespace op_cost

}  // namespace kernhe
