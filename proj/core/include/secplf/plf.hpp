#pragma once

#include <map>
#include <vector>

#include "secplf/trace.hpp"
#include "secplf/world_state.hpp"

namespace secplf {

/// Price lookups for one transaction step. Each asset is priced at most once
/// per session; in SecPlfGuard mode the lookup runs through the guard and
/// writes the updated guard state back into the world state.
class PriceSession {
 public:
  explicit PriceSession(WorldState& state, std::size_t step = 0, std::vector<GuardQuery>* log = nullptr);

  /// The price the lending protocol uses for `asset`.
  const Amount& price(const AssetId& asset);

  WorldState& state() noexcept { return state_; }

 private:
  WorldState& state_;
  std::size_t step_;
  std::vector<GuardQuery>* log_;
  std::map<AssetId, Amount> cache_;
};

/// c >= epsilon * l.
bool is_safely_collateralized(const Amount& collateral_usd, const Amount& loan_usd, const Rational& epsilon);

/// Moves `amount` of the owner's balance into their position as collateral.
/// No price is consulted: a deposit can only raise collateralization.
/// Errors: ZeroAmount, InsufficientBalance, CollateralMismatch.
void deposit(WorldState& state, const AccountId& owner, const AssetId& asset, const Amount& amount);

Amount collateral_value_usd(PriceSession& prices, const Position& position);
Amount loan_value_usd(PriceSession& prices, const Position& position);

/// collateral_usd / epsilon - loan_usd, floored at zero.
/// Errors: UnknownPosition.
Amount borrow_limit_usd(PriceSession& prices, const AccountId& owner);
Amount borrow_limit_usd(WorldState& state, const AccountId& owner);

/// Largest amount of `asset` the owner can borrow right now.
Amount max_borrowable(PriceSession& prices, const AccountId& owner, const AssetId& asset);

struct BorrowReceipt {
  Amount limit_usd;
  Amount price_usd;
  Amount value_usd;
  Amount collateral_usd_after;
  Amount loan_usd_after;
};

/// Lends `amount` of `asset` if its USD value fits within the borrow limit.
/// A zero amount is a successful no-op.
/// Errors: UnknownPosition, OverLimit, InsufficientPlfLiquidity.
BorrowReceipt borrow(PriceSession& prices, const AccountId& owner, const AssetId& asset, const Amount& amount);
BorrowReceipt borrow(WorldState& state, const AccountId& owner, const AssetId& asset, const Amount& amount);

struct LiquidationResult {
  bool liquidated = false;
  Amount collateral_usd;
  Amount loan_usd;
  Amount seized;
};

/// Full seizure when collateral_usd < epsilon * loan_usd: the collateral
/// moves to protocol liquidity and the loans are written off.
LiquidationResult check_and_liquidate(PriceSession& prices, const AccountId& owner);
LiquidationResult check_and_liquidate(WorldState& state, const AccountId& owner);

}  // namespace secplf
