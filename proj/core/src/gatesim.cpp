#include "kernhe/gatesim.hpp"

#include "kernhe/errors.hpp"

namespace kernhe {

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::XOR: return "XOR";
    case GateKind::AND: return "AND";
    case GateKind::OR: return "OR";
    case GateKind::NOT: return "NOT";
    case GateKind::MUX: return "MUX";
    case GateKind::CONSTANT: return "CONSTANT";
  }
  return "?";
}

uint64_t GateCounts::binary_gate_units() const {
  uint64_t units = 0;
  for (int k = 0; k < kGateKinds; ++k) units += per_kind[k] * gate_weight(static_cast<GateKind>(k));
  return units;
}

GateCounts& GateCounts::operator+=(const GateCounts& other) {
  for (int k = 0; k < kGateKinds; ++k) per_kind[k] += other.per_kind[k];
  return *this;
}

GateCounts diff(const GateCounts& before, const GateCounts& after) {
  GateCounts d;
  for (int k = 0; k < kGateKinds; ++k) {
    if (after.per_kind[k] < before.per_kind[k]) {
      throw NegativeDiff("gate ledger diff is negative for " + gate_name(static_cast<GateKind>(k)));
    }
    d.per_kind[k] = after.per_kind[k] - before.per_kind[k];
  }
  return d;
}

GateCounts GateLedger::snapshot() const {
  GateCounts c;
  for (int k = 0; k < kGateKinds; ++k) c.per_kind[k] = counts_[k].load(std::memory_order_relaxed);
  return c;
}

SimBit SimBit::constant(GateLedger& ledger, bool value) {
  ledger.record(GateKind::CONSTANT);
  return SimBit(value, &ledger);
}

namespace {

GateLedger* common_ledger(const SimBit& a, const SimBit& b) {
  if (a.ledger() == nullptr || a.ledger() != b.ledger()) {
    throw LedgerMismatch("gate inputs are bound to different ledgers");
  }
  return a.ledger();
}

}  // namespace

SimBit gate(GateKind kind, const SimBit& a, const SimBit& b) {
  GateLedger* ledger = common_ledger(a, b);
  bool out = false;
  switch (kind) {
    case GateKind::XOR: out = a.value() != b.value(); break;
    case GateKind::AND: out = a.value() && b.value(); break;
    case GateKind::OR: out = a.value() || b.value(); break;
    default: throw ValidationError("gate() takes XOR, AND or OR; got " + gate_name(kind));
  }
  ledger->record(kind);
  return SimBit(out, ledger);
}

SimBit gate(GateKind kind, const SimBit& a) {
  if (kind != GateKind::NOT) throw ValidationError(gate_name(kind) + " takes two inputs");
  return gate_not(a);
}

SimBit gate_not(const SimBit& a) {
  if (a.ledger() == nullptr) throw LedgerMismatch("NOT input has no ledger");
  a.ledger()->record(GateKind::NOT);
  return SimBit(!a.value(), a.ledger());
}

SimBit mux(const SimBit& sel, const SimBit& a, const SimBit& b) {
  GateLedger* ledger = common_ledger(sel, a);
  common_ledger(a, b);
  ledger->record(GateKind::MUX);
  return SimBit(sel.value() ? a.value() : b.value(), ledger);
}

}  // namespace kernhe
