#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <string>

namespace kernhe {

enum class GateKind : uint8_t { XOR = 0, AND, OR, NOT, MUX, CONSTANT };
inline constexpr int kGateKinds = 6;

std::string gate_name(GateKind kind);

// Cost of one gate in binary-gate units. MUX counts as two binary gates so a
// compare-and-swap (one comparison plus four word muxes) costs 11l.
constexpr uint64_t gate_weight(GateKind kind) {
  switch (kind) {
    case GateKind::XOR:
    case GateKind::AND:
    case GateKind::OR:
      return 1;
    case GateKind::MUX:
      return 2;
    default:
      return 0;
  }
}

// Plain value snapshot of a ledger.
struct GateCounts {
  std::array<uint64_t, kGateKinds> per_kind{};

  uint64_t count(GateKind kind) const { return per_kind[static_cast<int>(kind)]; }
  uint64_t binary_gate_units() const;

  GateCounts& operator+=(const GateCounts& other);
  friend GateCounts operator+(GateCounts a, const GateCounts& b) { return a += b; }
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

// Componentwise after - before; throws NegativeDiff if any counter went down.
GateCounts diff(const GateCounts& before, const GateCounts& after);

class GateLedger {
 public:
  GateLedger() = default;
  GateLedger(const GateLedger&) = delete;
  GateLedger& operator=(const GateLedger&) = delete;

  void record(GateKind kind) {
    counts_[static_cast<int>(kind)].fetch_add(1, std::memory_order_relaxed);
  }
  GateCounts snapshot() const;
  uint64_t binary_gate_units() const { return snapshot().binary_gate_units(); }

 private:
  std::array<std::atomic<uint64_t>, kGateKinds> counts_{};
};

// A plaintext bit standing in for a TFHE ciphertext. The ledger is not owned
// and must outlive every bit bound to it.
class SimBit {
 public:
  SimBit() = default;

  static SimBit constant(GateLedger& ledger, bool value);

  bool value() const { return value_ != 0; }
  GateLedger* ledger() const { return ledger_; }

 private:
  SimBit(bool value, GateLedger* ledger) : value_(value ? 1 : 0), ledger_(ledger) {}

  friend SimBit gate(GateKind, const SimBit&, const SimBit&);
  friend SimBit gate_not(const SimBit&);
  friend SimBit mux(const SimBit&, const SimBit&, const SimBit&);

  uint8_t value_ = 0;
  GateLedger* ledger_ = nullptr;
};

// Two-input gate: XOR, AND or OR.
SimBit gate(GateKind kind, const SimBit& a, const SimBit& b);
// One-input gate; only NOT is accepted.
SimBit gate(GateKind kind, const SimBit& a);
SimBit gate_not(const SimBit& a);
// sel ? a : b
SimBit mux(const SimBit& sel, const SimBit& a, const SimBit& b);

inline SimBit gate_xor(const SimBit& a, const SimBit& b) { return gate(GateKind::XOR, a, b); }
inline SimBit gate_and(const SimBit& a, const SimBit& b) { return gate(GateKind::AND, a, b); }
inline SimBit gate_or(const SimBit& a, const SimBit& b) { return gate(GateKind::OR, a, b); }

}  // namespace kernhe
