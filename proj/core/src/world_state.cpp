#include "secplf/world_state.hpp"

#include <set>

namespace secplf {

Amount WorldState::balance(const AccountId& account, const AssetId& asset) const {
  auto it = balances.find({account, asset});
  return it == balances.end() ? Amount{} : it->second;
}

void WorldState::credit(const AccountId& account, const AssetId& asset, const Amount& amount) {
  balances[{account, asset}] += amount;
}

void WorldState::debit(const AccountId& account, const AssetId& asset, const Amount& amount) {
  auto it = balances.find({account, asset});
  Amount held = it == balances.end() ? Amount{} : it->second;
  if (held < amount) {
    throw Error(Errc::InsufficientBalance, account.str() + " holds " + to_decimal(held.value()) + " " +
                                               asset.str() + ", needs " + to_decimal(amount.value()));
  }
  if (it != balances.end()) it->second -= amount;
}

const Pool& WorldState::pool(const PairId& pair) const {
  auto it = pools.find(pair);
  if (it == pools.end()) throw Error(Errc::UnknownPool, "no pool for " + pair.str());
  return it->second;
}

Pool& WorldState::pool(const PairId& pair) {
  auto it = pools.find(pair);
  if (it == pools.end()) throw Error(Errc::UnknownPool, "no pool for " + pair.str());
  return it->second;
}

const FixedRateVenue& WorldState::venue(const std::string& name) const {
  auto it = venues.find(name);
  if (it == venues.end()) throw Error(Errc::UnknownVenue, "no venue named '" + name + "'");
  return it->second;
}

namespace {

Amount resolve(const WorldState& state, const AssetId& asset, std::set<AssetId>& visiting) {
  auto it = state.oracles.find(asset);
  if (it == state.oracles.end()) throw Error(Errc::UnknownAsset, "no price source for " + asset.str());
  if (!visiting.insert(asset).second) {
    throw Error(Errc::UnknownAsset, "cyclic price sources through " + asset.str());
  }
  Amount out = std::visit(
      [&](const auto& source) -> Amount {
        using T = std::decay_t<decltype(source)>;
        if constexpr (std::is_same_v<T, FixedPriceSource>) {
          return source.usd;
        } else {
          Amount numeraire_usd = resolve(state, source.numeraire, visiting);
          return oracle_usd(state.pool(source.pool), asset, source.numeraire, numeraire_usd);
        }
      },
      it->second);
  visiting.erase(asset);
  return out;
}

}  // namespace

Amount raw_oracle_usd(const WorldState& state, const AssetId& asset) {
  std::set<AssetId> visiting;
  return resolve(state, asset, visiting);
}

Rational total_supply(const WorldState& state, const AssetId& asset) {
  Rational total = 0;
  for (const auto& [key, amount] : state.balances) {
    if (key.second == asset) total += amount.value();
  }
  for (const auto& [pair, pool] : state.pools) {
    if (pool.contains(asset)) total += pool.reserve_of(asset).value();
  }
  if (auto it = state.plf.liquidity.find(asset); it != state.plf.liquidity.end()) total += it->second.value();
  for (const auto& [owner, position] : state.plf.positions) {
    if (position.collateral_asset == asset) total += position.collateral_amount.value();
  }
  if (auto it = state.flash.reserves.find(asset); it != state.flash.reserves.end()) total += it->second.value();
  return total;
}

}  // namespace secplf
