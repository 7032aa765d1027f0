#include "doctest.h"
#include "secplf/flash_loan.hpp"
#include "secplf/plf.hpp"

using namespace secplf;

namespace {
const AssetId A{"A"};
const AssetId B{"B"};
const AssetId C{"C"};
const AccountId alice{"alice"};

WorldState fixed_world(Rational epsilon, long long price_b) {
  WorldState s;
  s.oracles[A] = FixedPriceSource{Amount{100}};
  s.oracles[B] = FixedPriceSource{Amount{price_b}};
  s.oracles[C] = FixedPriceSource{Amount{1}};
  s.plf.params.epsilon = epsilon;
  s.plf.liquidity[C] = Amount{1'000'000};
  s.flash.reserves[A] = Amount{50'000};
  s.balances[{alice, B}] = Amount{1000};
  return s;
}
}  // namespace

TEST_CASE("flash borrow and repay") {
  WorldState s = fixed_world(5, 10);
  flash_borrow(s, alice, A, 10000);
  CHECK(s.balance(alice, A) == Amount{10000});
  CHECK(repayment_due(s, alice, A) == Amount{10000});
  CHECK_THROWS_WITH_AS(flash_borrow(s, alice, A, 1), doctest::Contains("DuplicateLoan"), Error);
  CHECK_THROWS_WITH_AS(assert_no_open_loans(s), doctest::Contains("OpenLoanAtCommit"), Error);
  flash_repay(s, alice, A, 10000);
  CHECK(s.balance(alice, A).is_zero());
  CHECK(s.flash.reserves[A] == Amount{50000});
  CHECK_NOTHROW(assert_no_open_loans(s));
}

TEST_CASE("flash loan errors") {
  WorldState s = fixed_world(5, 10);
  CHECK_THROWS_WITH_AS(flash_borrow(s, alice, A, 0), doctest::Contains("ZeroAmount"), Error);
  CHECK_THROWS_WITH_AS(flash_borrow(s, alice, A, 50001), doctest::Contains("InsufficientProviderReserve"), Error);
  CHECK_THROWS_WITH_AS(flash_repay(s, alice, A, 1), doctest::Contains("NoOpenLoan"), Error);
  flash_borrow(s, alice, A, 10000);
  s.debit(alice, A, 100);
  CHECK_THROWS_WITH_AS(flash_repay(s, alice, A, 10000), doctest::Contains("InsufficientBalance"), Error);
  CHECK_THROWS_WITH_AS(flash_repay(s, alice, A, 9900), doctest::Contains("InsufficientRepayment"), Error);
}

TEST_CASE("flash fee of 0.1% raises the amount due") {
  WorldState s = fixed_world(5, 10);
  s.flash.fee_rate = Rational(1, 1000);
  flash_borrow(s, alice, A, 10000);
  CHECK(repayment_due(s, alice, A) == Amount{10010});
  s.credit(alice, A, 10);
  flash_repay(s, alice, A, 10010);
  CHECK(s.flash.reserves[A] == Amount{50010});
}

TEST_CASE("deposit mints collateral one to one") {
  WorldState s = fixed_world(5, 10);
  deposit(s, alice, B, 250);
  deposit(s, alice, B, 250);
  CHECK(s.plf.positions.at(alice).collateral_amount == Amount{500});
  CHECK(s.balance(alice, B) == Amount{500});
  CHECK_THROWS_WITH_AS(deposit(s, alice, B, 0), doctest::Contains("ZeroAmount"), Error);
  CHECK_THROWS_WITH_AS(deposit(s, alice, B, 501), doctest::Contains("InsufficientBalance"), Error);
  s.credit(alice, A, 1);
  CHECK_THROWS_WITH_AS(deposit(s, alice, A, 1), doctest::Contains("CollateralMismatch"), Error);
}

TEST_CASE("borrow limit") {
  WorldState s = fixed_world(5, 10);
  CHECK_THROWS_WITH_AS(borrow_limit_usd(s, alice), doctest::Contains("UnknownPosition"), Error);
  deposit(s, alice, B, 500);
  CHECK(borrow_limit_usd(s, alice) == Amount{1000});

  WorldState pumped = fixed_world(5, 102020);
  deposit(pumped, alice, B, 500);
  CHECK(borrow_limit_usd(pumped, alice) == Amount{10'202'000});

  borrow(s, alice, C, 400);
  CHECK(borrow_limit_usd(s, alice) == Amount{600});
  CHECK(s.balance(alice, C) == Amount{400});
  CHECK(s.plf.liquidity[C] == Amount{999'600});
}

TEST_CASE("borrow limit is homogeneous in collateral and inverse in epsilon") {
  for (long long y : {1, 7, 500}) {
    WorldState one = fixed_world(5, 10);
    WorldState two = fixed_world(5, 10);
    WorldState looser = fixed_world(Rational(5, 2), 10);
    deposit(one, alice, B, y);
    deposit(two, alice, B, 2 * y);
    deposit(looser, alice, B, y);
    CHECK(borrow_limit_usd(two, alice).value() == 2 * borrow_limit_usd(one, alice).value());
    CHECK(borrow_limit_usd(looser, alice).value() == 2 * borrow_limit_usd(one, alice).value());
  }
}

TEST_CASE("borrow errors and no-ops") {
  WorldState s = fixed_world(5, 10);
  deposit(s, alice, B, 500);
  WorldState before = s;
  BorrowReceipt r = borrow(s, alice, C, 0);
  CHECK(r.value_usd.is_zero());
  CHECK(s == before);
  CHECK_THROWS_WITH_AS(borrow(s, alice, C, 1001), doctest::Contains("OverLimit"), Error);
  s.plf.liquidity[C] = Amount{10};
  CHECK_THROWS_WITH_AS(borrow(s, alice, C, 11), doctest::Contains("InsufficientPlfLiquidity"), Error);
}

TEST_CASE("guarded borrow against the pumped collateral") {
  WorldState s = fixed_world(5, 102020);
  s.plf.params.price_mode = PriceMode::SecPlfGuard;
  s.guards[B] = PriceState{0, Amount{10}};
  s.guards[C] = PriceState{0, Amount{1}};
  s.current_block = BlockRef{1};
  deposit(s, alice, B, 500);
  PriceSession prices(s);
  CHECK(borrow_limit_usd(prices, alice) == Amount{5000});
  CHECK(s.guards[B] == PriceState{1, Amount{50}});
  CHECK_THROWS_WITH_AS(borrow(prices, alice, C, 10'202'000), doctest::Contains("OverLimit"), Error);
  CHECK(max_borrowable(prices, alice, C) == Amount{5000});
}

TEST_CASE("price session caches and logs each asset once") {
  WorldState s = fixed_world(5, 10);
  s.plf.params.price_mode = PriceMode::SecPlfGuard;
  s.guards[B] = PriceState{0, Amount{10}};
  s.current_block = BlockRef{1};
  std::vector<GuardQuery> log;
  PriceSession prices(s, 3, &log);
  prices.price(B);
  prices.price(B);
  REQUIRE(log.size() == 1);
  CHECK(log[0].step == 3);
  CHECK(log[0].guarded);
  CHECK(log[0].block == 1);
  CHECK(log[0].updated);
  CHECK_THROWS_AS(prices.price(C), Error);  // no guard state for C
}

TEST_CASE("liquidation seizes undercollateralized positions") {
  // c = $1,000, l = $300, epsilon 1.25: 1000 >= 375, safe.
  WorldState s = fixed_world(Rational(5, 4), 10);
  deposit(s, alice, B, 100);
  borrow(s, alice, C, 300);
  LiquidationResult safe = check_and_liquidate(s, alice);
  CHECK_FALSE(safe.liquidated);
  CHECK(safe.collateral_usd == Amount{1000});
  CHECK(safe.loan_usd == Amount{300});

  // B falls to $3: c = $300 < 375.
  s.oracles[B] = FixedPriceSource{Amount{3}};
  LiquidationResult hit = check_and_liquidate(s, alice);
  CHECK(hit.liquidated);
  CHECK(hit.seized == Amount{100});
  CHECK(s.plf.positions.at(alice).collateral_amount.is_zero());
  CHECK(s.plf.positions.at(alice).loans.empty());
  CHECK(s.plf.liquidity[B] == Amount{100});

  CHECK(is_safely_collateralized(Amount{375}, Amount{300}, Rational(5, 4)));
  CHECK_FALSE(is_safely_collateralized(Amount{300}, Amount{300}, Rational(5, 4)));
}

TEST_CASE("no loans never liquidates") {
  WorldState s = fixed_world(5, 10);
  deposit(s, alice, B, 1);
  s.oracles[B] = FixedPriceSource{Amount{1}};
  CHECK_FALSE(check_and_liquidate(s, alice).liquidated);
  CHECK_FALSE(check_and_liquidate(s, AccountId("nobody")).liquidated);
}
