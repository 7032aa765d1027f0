#pragma once

#include <optional>
#include <string>

#include "secplf/ledger.hpp"

namespace secplf {

/// Parameters of the flash-loan oracle-manipulation attack. The adversary
/// flash-borrows X of `flash_asset`, turns `collateral_swap_in` of it into
/// `deposit_asset` collateral, pumps the collateral's pool price with the
/// remainder, borrows `borrow_asset` against the inflated valuation, unwinds
/// the pump, buys back any flash shortfall at `venue` and repays.
struct AttackPlan {
  AccountId adversary;
  AssetId flash_asset;
  AssetId deposit_asset;
  AssetId borrow_asset;
  Amount flash_amount;
  Amount collateral_swap_in;
  PairId target_pool;
  std::string venue;

  friend bool operator==(const AttackPlan&, const AttackPlan&) = default;
};

/// The eight-step transaction F, S, D, S, B, S, S, P.
/// Errors: InvalidPlan.
Transaction build_attack(const AttackPlan& plan, BlockRef block);

/// G = o_b * y * (theta / epsilon - 1). Negative when theta < epsilon.
Rational predicted_profit_usd(const Amount& o_b, const Amount& y, const Rational& theta, const Rational& epsilon);
Rational max_profit_usd(const Amount& o_b, const Amount& max_y, const Rational& max_theta,
                        const Rational& epsilon);

struct AttackReport {
  AttackPlan plan;
  bool guarded = false;
  Rational epsilon;
  TxStatus outcome = TxStatus::Success;
  std::optional<std::size_t> reverted_step;
  std::string revert_reason;

  /// Pool spot price of the collateral just before the borrow, over the
  /// pre-attack spot price.
  Rational theta{1};
  Amount pre_attack_oracle_usd;  ///< raw oracle of the collateral before the attack
  Amount deposited;              ///< Y
  Amount max_l_usd;              ///< o_b * y * theta / epsilon
  Amount planned_borrow;         ///< max(L) / o_c
  bool planned_borrow_rejected = false;
  Amount collateral_price_used;  ///< what the lending protocol valued the collateral at
  Amount borrow_limit_usd;
  Amount borrowed;               ///< L actually lent
  Rational predicted_g_usd;
  Rational realized_profit_usd;
  std::string note;
  Trace trace;

  friend bool operator==(const AttackReport&, const AttackReport&) = default;
};

struct AttackRun {
  WorldState state;
  AttackReport report;
};

/// Builds and executes the attack in the current block. A revert is a valid
/// report; realized profit is the adversary's committed balance change valued
/// at pre-attack raw oracle prices, so it is zero on revert.
AttackRun run_attack(const WorldState& state, const AttackPlan& plan);

}  // namespace secplf
