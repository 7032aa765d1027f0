#include <random>

#include "doctest.h"
#include "secplf/ledger.hpp"
#include "secplf/properties.hpp"

using namespace secplf;

namespace {
const AssetId A{"A"};
const AssetId B{"B"};
const AccountId rich{"rich"};
const AccountId poor{"poor"};

WorldState small_world() {
  WorldState s;
  s.balances[{rich, A}] = Amount{100};
  s.balances[{rich, B}] = Amount{1000};
  s.pools.emplace(PairId(A, B), make_pool(A, 1000, B, 5000));
  s.oracles[A] = FixedPriceSource{Amount{1}};
  return s;
}
}  // namespace

TEST_CASE("begin_block increments the height only") {
  WorldState s = small_world();
  s.current_block = BlockRef{7};
  WorldState next = begin_block(s);
  CHECK(next.current_block.id == 8);
  next.current_block = s.current_block;
  CHECK(next == s);
  CHECK(begin_block(begin_block(WorldState{})).current_block.id == 2);
}

TEST_CASE("transfer commits") {
  WorldState s = small_world();
  TxResult r = execute_transaction(s, {s.current_block, rich, {TransferStep{rich, poor, A, 10}}});
  CHECK(r.outcome.status == TxStatus::Success);
  CHECK(r.state.balance(rich, A) == Amount{90});
  CHECK(r.state.balance(poor, A) == Amount{10});
  REQUIRE(r.outcome.trace.steps.size() == 1);
  CHECK(r.outcome.trace.steps[0].get("amount") == Rational(10));
}

TEST_CASE("overdrawn transfer reverts to the exact pre-state") {
  WorldState s = small_world();
  Transaction tx{s.current_block, rich,
                 {TransferStep{rich, poor, A, 60}, SwapStep{rich, PairId(A, B), B, Amount{10}},
                  TransferStep{rich, poor, A, 60}}};
  TxResult r = execute_transaction(s, tx);
  CHECK(r.outcome.status == TxStatus::Reverted);
  CHECK(r.outcome.failed_step == 2u);
  CHECK(r.outcome.error == Errc::InsufficientBalance);
  CHECK(r.state == s);
  REQUIRE(r.outcome.trace.steps.size() == 3);
  CHECK(r.outcome.trace.steps[2].failed);
}

TEST_CASE("wrong block is rejected without running") {
  WorldState s = small_world();
  TxResult r = execute_transaction(s, {BlockRef{3}, rich, {TransferStep{rich, poor, A, 1}}});
  CHECK(r.outcome.status == TxStatus::Rejected);
  CHECK(r.outcome.error == Errc::BlockMismatch);
  CHECK(r.outcome.trace.steps.empty());
  CHECK(r.state == s);
}

TEST_CASE("an open flash loan at commit reverts") {
  WorldState s = small_world();
  s.flash.reserves[A] = Amount{1000};
  TxResult r = execute_transaction(s, {s.current_block, rich, {FlashBorrowStep{rich, A, 10}}});
  CHECK(r.outcome.status == TxStatus::Reverted);
  CHECK(r.outcome.failed_step == 1u);
  CHECK(r.outcome.error == Errc::OpenLoanAtCommit);
  CHECK(r.state == s);
}

TEST_CASE("swaps and transfers conserve supply") {
  WorldState s = small_world();
  Transaction tx{s.current_block, rich,
                 {SwapStep{rich, PairId(A, B), A, Amount{50}}, SwapStep{rich, PairId(A, B), B, EntireBalance{}},
                  TransferStep{rich, poor, A, 3}}};
  TxResult r = execute_transaction(s, tx);
  REQUIRE(r.outcome.status == TxStatus::Success);
  CHECK(total_supply(r.state, A) == total_supply(s, A));
  CHECK(total_supply(r.state, B) == total_supply(s, B));
  CHECK(r.state.balance(rich, B).is_zero());
}

TEST_CASE("same transaction twice gives identical results") {
  Scenario sc = make_attack_scenario(AttackSetup{});
  WorldState s = begin_block(sc.state);
  Transaction tx = [&] {
    Transaction t{s.current_block, AccountId("adversary"), {}};
    t.steps.push_back(FlashBorrowStep{AccountId("adversary"), A, 10});
    t.steps.push_back(FlashRepayStep{AccountId("adversary"), A});
    return t;
  }();
  TxResult one = execute_transaction(s, tx);
  TxResult two = execute_transaction(s, tx);
  CHECK(one.state == two.state);
  CHECK(one.outcome.trace == two.outcome.trace);
}

TEST_CASE("snapshot and restore") {
  WorldState s = small_world();
  Snapshot outer = snapshot(s);
  s.credit(poor, A, 5);
  Snapshot inner = snapshot(s);
  s.credit(poor, A, 7);
  CHECK(restore(inner).balance(poor, A) == Amount{5});
  CHECK(restore(outer) == small_world());
  CHECK(restore(snapshot(s)) == s);
}

TEST_CASE("venue purchase at fixed prices") {
  WorldState s = small_world();
  AccountId desk{"desk"};
  s.balances[{desk, B}] = Amount{1'000'000};
  s.venues.emplace("desk", FixedRateVenue{desk, {{A, Amount{100}}, {B, Amount{1}}}});
  TxResult r = execute_transaction(s, {s.current_block, rich, {VenueBuyStep{rich, "desk", A, B, Amount{250}}}});
  REQUIRE(r.outcome.status == TxStatus::Success);
  CHECK(r.state.balance(rich, A) == Amount{Rational(195, 2)});
  CHECK(r.state.balance(rich, B) == Amount{1250});

  TxResult bad = execute_transaction(s, {s.current_block, rich, {VenueBuyStep{rich, "nowhere", A, B, Amount{1}}}});
  CHECK(bad.outcome.error == Errc::UnknownVenue);
}

TEST_CASE("random failing transactions leave no trace in the state") {
  std::mt19937_64 rng(11);
  WorldState s = small_world();
  s.flash.reserves[A] = Amount{500};
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<long long> amt(1, 200);
    Transaction tx{s.current_block, rich, {}};
    tx.steps.push_back(FlashBorrowStep{rich, A, amt(rng)});
    tx.steps.push_back(SwapStep{rich, PairId(A, B), A, Amount{amt(rng)}});
    tx.steps.push_back(TransferStep{rich, poor, B, amt(rng)});
    // Never repaid, so the commit check always fails.
    TxResult r = execute_transaction(s, tx);
    CHECK(r.outcome.status == TxStatus::Reverted);
    CHECK(r.state == s);
  }
}

TEST_CASE("swapping an empty balance reverts cleanly") {
  WorldState s = small_world();
  TxResult r = execute_transaction(s, {s.current_block, poor, {SwapStep{poor, PairId(A, B), B, EntireBalance{}}}});
  CHECK(r.outcome.status == TxStatus::Reverted);
  CHECK(r.outcome.error == Errc::ZeroAmount);
  CHECK(r.state == s);
  s.debit(poor, A, Amount{});
  CHECK(s == small_world());
}
