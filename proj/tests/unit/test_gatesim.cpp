#include <gtest/gtest.h>

#include <thread>
#include <vector>

#include "kernhe/errors.hpp"
#include "kernhe/gatesim.hpp"

using namespace kernhe;

TEST(GateWeights, Table) {
  EXPECT_EQ(gate_weight(GateKind::XOR), 1u);
  EXPECT_EQ(gate_weight(GateKind::AND), 1u);
  EXPECT_EQ(gate_weight(GateKind::OR), 1u);
  EXPECT_EQ(gate_weight(GateKind::MUX), 2u);
  EXPECT_EQ(gate_weight(GateKind::NOT), 0u);
  EXPECT_EQ(gate_weight(GateKind::CONSTANT), 0u);
}

TEST(Gates, TruthTables) {
  GateLedger ledger;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const SimBit x = SimBit::constant(ledger, a);
      const SimBit y = SimBit::constant(ledger, b);
      EXPECT_EQ(gate_xor(x, y).value(), (a ^ b) != 0);
      EXPECT_EQ(gate_and(x, y).value(), (a & b) != 0);
      EXPECT_EQ(gate_or(x, y).value(), (a | b) != 0);
      EXPECT_EQ(gate_not(x).value(), a == 0);
      for (int s = 0; s < 2; ++s)
        EXPECT_EQ(mux(SimBit::constant(ledger, s), x, y).value(), (s ? a : b) != 0);
    }
  }
}

TEST(Ledger, CountsAndUnits) {
  GateLedger ledger;
  const SimBit one = SimBit::constant(ledger, true);
  const SimBit zero = SimBit::constant(ledger, false);
  gate_xor(one, zero);
  gate_and(one, zero);
  gate_or(one, zero);
  gate_not(one);
  mux(one, one, zero);
  const GateCounts c = ledger.snapshot();
  EXPECT_EQ(c.count(GateKind::XOR), 1u);
  EXPECT_EQ(c.count(GateKind::NOT), 1u);
  EXPECT_EQ(c.count(GateKind::MUX), 1u);
  EXPECT_EQ(c.count(GateKind::CONSTANT), 2u);
  EXPECT_EQ(c.binary_gate_units(), 5u);
}

TEST(Ledger, DiffAndNegative) {
  GateLedger ledger;
  const GateCounts before = ledger.snapshot();
  gate_and(SimBit::constant(ledger, true), SimBit::constant(ledger, true));
  const GateCounts after = ledger.snapshot();
  EXPECT_EQ(diff(before, after).binary_gate_units(), 1u);
  EXPECT_THROW(diff(after, before), NegativeDiff);
}

TEST(Ledger, MismatchedLedgersRejected) {
  GateLedger a;
  GateLedger b;
  EXPECT_THROW(gate_and(SimBit::constant(a, true), SimBit::constant(b, true)), LedgerMismatch);
  EXPECT_THROW(gate_and(SimBit{}, SimBit{}), LedgerMismatch);
  EXPECT_THROW(gate(GateKind::AND, SimBit::constant(a, true)), ValidationError);
}

TEST(Ledger, ConcurrentRecording) {
  GateLedger ledger;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      const SimBit one = SimBit::constant(ledger, true);
      for (int i = 0; i < 10000; ++i) gate_xor(one, one);
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(ledger.snapshot().count(GateKind::XOR), 40000u);
}
