#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "secplf/amm.hpp"
#include "secplf/guard.hpp"
#include "secplf/types.hpp"

namespace secplf {

// ---------------------------------------------------------------------------
// Price sources

/// Reference feed with a constant USD price.
struct FixedPriceSource {
  Amount usd;
  friend bool operator==(const FixedPriceSource&, const FixedPriceSource&) = default;
};

/// Spot price from a constant-product pool, denominated in `numeraire`,
/// whose own USD price is resolved recursively.
struct DexPriceSource {
  PairId pool;
  AssetId numeraire;
  friend bool operator==(const DexPriceSource&, const DexPriceSource&) = default;
};

using PriceSource = std::variant<FixedPriceSource, DexPriceSource>;

// ---------------------------------------------------------------------------
// Lending protocol state

enum class PriceMode { RawOracle, SecPlfGuard };

struct PlfParams {
  Rational epsilon{5};
  PriceMode price_mode = PriceMode::RawOracle;
  /// Per-block growth cap for the guard; defaults to epsilon when unset.
  std::optional<Rational> guard_epsilon;
  GuardCap guard_cap = GuardCap::Enforced;

  const Rational& effective_guard_epsilon() const { return guard_epsilon ? *guard_epsilon : epsilon; }

  friend bool operator==(const PlfParams&, const PlfParams&) = default;
};

/// Single-collateral position; collateral units map 1:1 to the cTokens.
struct Position {
  AccountId owner;
  std::optional<AssetId> collateral_asset;
  Amount collateral_amount;
  std::map<AssetId, Amount> loans;

  friend bool operator==(const Position&, const Position&) = default;
};

struct PlfState {
  PlfParams params;
  std::map<AssetId, Amount> liquidity;
  std::map<AccountId, Position> positions;

  friend bool operator==(const PlfState&, const PlfState&) = default;
};

// ---------------------------------------------------------------------------
// Flash-loan provider

struct OpenLoan {
  Amount principal;
  Amount due;
  friend bool operator==(const OpenLoan&, const OpenLoan&) = default;
};

struct FlashLoanBook {
  Rational fee_rate{0};
  std::map<AssetId, Amount> reserves;
  std::map<std::pair<AccountId, AssetId>, OpenLoan> open;

  friend bool operator==(const FlashLoanBook&, const FlashLoanBook&) = default;
};

// ---------------------------------------------------------------------------
// Fixed-rate venue: a deep market quoting at constant USD prices, backed by
// the inventory of an ordinary account.

struct FixedRateVenue {
  AccountId account;
  std::map<AssetId, Amount> usd_prices;

  friend bool operator==(const FixedRateVenue&, const FixedRateVenue&) = default;
};

// ---------------------------------------------------------------------------

struct WorldState {
  std::map<std::pair<AccountId, AssetId>, Amount> balances;
  std::map<PairId, Pool> pools;
  std::map<AssetId, PriceSource> oracles;
  PlfState plf;
  FlashLoanBook flash;
  std::map<std::string, FixedRateVenue> venues;
  std::map<AssetId, PriceState> guards;
  BlockRef current_block{0};

  Amount balance(const AccountId& account, const AssetId& asset) const;
  void credit(const AccountId& account, const AssetId& asset, const Amount& amount);
  /// Errors: InsufficientBalance.
  void debit(const AccountId& account, const AssetId& asset, const Amount& amount);

  /// Errors: UnknownPool.
  const Pool& pool(const PairId& pair) const;
  Pool& pool(const PairId& pair);

  /// Errors: UnknownVenue.
  const FixedRateVenue& venue(const std::string& name) const;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

/// Raw (unguarded) USD oracle price of `asset` from its configured source.
/// Errors: UnknownAsset when no source is configured, or on a cyclic chain of
/// DEX numeraires.
Amount raw_oracle_usd(const WorldState& state, const AssetId& asset);

/// Units of `asset` held anywhere: account balances, pool reserves, lending
/// liquidity and collateral, and flash-provider reserves.
Rational total_supply(const WorldState& state, const AssetId& asset);

}  // namespace secplf
