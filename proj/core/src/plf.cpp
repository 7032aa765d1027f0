#include "secplf/plf.hpp"

namespace secplf {

PriceSession::PriceSession(WorldState& state, std::size_t step, std::vector<GuardQuery>* log)
    : state_(state), step_(step), log_(log) {}

const Amount& PriceSession::price(const AssetId& asset) {
  if (auto it = cache_.find(asset); it != cache_.end()) return it->second;

  GuardQuery query;
  query.step = step_;
  query.asset = asset;
  query.block = state_.current_block.id;
  query.oracle = raw_oracle_usd(state_, asset);

  const PlfParams& params = state_.plf.params;
  if (params.price_mode == PriceMode::SecPlfGuard) {
    auto guard = state_.guards.find(asset);
    if (guard == state_.guards.end()) {
      throw Error(Errc::UnknownAsset, "guard state for " + asset.str() + " was never initialised");
    }
    GuardStep step = guarded_price(guard->second, query.oracle, state_.current_block,
                                   params.effective_guard_epsilon(), params.guard_cap);
    query.guarded = true;
    query.stored_before = guard->second.price;
    query.stored_after = step.state.price;
    query.output = step.output.price;
    query.discrepancy = step.output.discrepancy;
    query.updated = step.output.updated;
    guard->second = std::move(step.state);
  } else {
    query.output = query.oracle;
  }

  if (log_ != nullptr) log_->push_back(query);
  return cache_.emplace(asset, std::move(query.output)).first->second;
}

bool is_safely_collateralized(const Amount& collateral_usd, const Amount& loan_usd, const Rational& epsilon) {
  return collateral_usd.value() >= epsilon * loan_usd.value();
}

void deposit(WorldState& state, const AccountId& owner, const AssetId& asset, const Amount& amount) {
  if (amount.is_zero()) throw Error(Errc::ZeroAmount, "deposit must be positive");
  auto [it, inserted] = state.plf.positions.try_emplace(owner, Position{owner, std::nullopt, Amount{}, {}});
  Position& position = it->second;
  if (position.collateral_asset && *position.collateral_asset != asset && !position.collateral_amount.is_zero()) {
    throw Error(Errc::CollateralMismatch, owner.str() + " already posts " + position.collateral_asset->str() +
                                              " as collateral, cannot add " + asset.str());
  }
  state.debit(owner, asset, amount);
  position.collateral_asset = asset;
  position.collateral_amount += amount;
}

namespace {

Position& position_of(WorldState& state, const AccountId& owner) {
  auto it = state.plf.positions.find(owner);
  if (it == state.plf.positions.end()) throw Error(Errc::UnknownPosition, owner.str() + " has no position");
  return it->second;
}

}  // namespace

Amount collateral_value_usd(PriceSession& prices, const Position& position) {
  if (!position.collateral_asset || position.collateral_amount.is_zero()) return Amount{};
  return prices.price(*position.collateral_asset) * position.collateral_amount;
}

Amount loan_value_usd(PriceSession& prices, const Position& position) {
  Amount total;
  for (const auto& [asset, amount] : position.loans) {
    if (!amount.is_zero()) total += prices.price(asset) * amount;
  }
  return total;
}

Amount borrow_limit_usd(PriceSession& prices, const AccountId& owner) {
  const Position& position = position_of(prices.state(), owner);
  const Rational& epsilon = prices.state().plf.params.epsilon;
  Rational headroom = collateral_value_usd(prices, position).value() / epsilon -
                      loan_value_usd(prices, position).value();
  return clamp_non_negative(headroom);
}

Amount borrow_limit_usd(WorldState& state, const AccountId& owner) {
  PriceSession prices(state);
  return borrow_limit_usd(prices, owner);
}

Amount max_borrowable(PriceSession& prices, const AccountId& owner, const AssetId& asset) {
  Amount limit = borrow_limit_usd(prices, owner);
  return limit / prices.price(asset);
}

BorrowReceipt borrow(PriceSession& prices, const AccountId& owner, const AssetId& asset, const Amount& amount) {
  WorldState& state = prices.state();
  BorrowReceipt receipt;
  if (amount.is_zero()) return receipt;
  receipt.limit_usd = borrow_limit_usd(prices, owner);

  receipt.price_usd = prices.price(asset);
  receipt.value_usd = receipt.price_usd * amount;
  if (receipt.value_usd > receipt.limit_usd) {
    throw Error(Errc::OverLimit, "borrowing $" + to_decimal(receipt.value_usd.value()) + " exceeds limit $" +
                                     to_decimal(receipt.limit_usd.value()));
  }
  auto liquidity = state.plf.liquidity.find(asset);
  if (liquidity == state.plf.liquidity.end() || liquidity->second < amount) {
    throw Error(Errc::InsufficientPlfLiquidity, "protocol cannot lend " + to_decimal(amount.value()) + " " +
                                                    asset.str());
  }
  liquidity->second -= amount;
  state.credit(owner, asset, amount);
  Position& position = position_of(state, owner);
  position.loans[asset] += amount;

  receipt.collateral_usd_after = collateral_value_usd(prices, position);
  receipt.loan_usd_after = loan_value_usd(prices, position);
  return receipt;
}

BorrowReceipt borrow(WorldState& state, const AccountId& owner, const AssetId& asset, const Amount& amount) {
  PriceSession prices(state);
  return borrow(prices, owner, asset, amount);
}

LiquidationResult check_and_liquidate(PriceSession& prices, const AccountId& owner) {
  WorldState& state = prices.state();
  LiquidationResult result;
  auto it = state.plf.positions.find(owner);
  if (it == state.plf.positions.end()) return result;
  Position& position = it->second;

  result.loan_usd = loan_value_usd(prices, position);
  if (result.loan_usd.is_zero()) return result;
  result.collateral_usd = collateral_value_usd(prices, position);
  if (is_safely_collateralized(result.collateral_usd, result.loan_usd, state.plf.params.epsilon)) return result;

  result.liquidated = true;
  result.seized = position.collateral_amount;
  if (position.collateral_asset && !position.collateral_amount.is_zero()) {
    state.plf.liquidity[*position.collateral_asset] += position.collateral_amount;
  }
  position.collateral_amount = Amount{};
  position.loans.clear();
  return result;
}

LiquidationResult check_and_liquidate(WorldState& state, const AccountId& owner) {
  PriceSession prices(state);
  return check_and_liquidate(prices, owner);
}

}  // namespace secplf
