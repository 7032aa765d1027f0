#include "secplf/ledger.hpp"

#include <algorithm>

#include "secplf/flash_loan.hpp"
#include "secplf/plf.hpp"

namespace secplf {

void StepRecord::set(std::string key, Rational value) {
  auto it = std::find_if(values.begin(), values.end(), [&](const auto& kv) { return kv.first == key; });
  if (it != values.end()) {
    it->second = std::move(value);
  } else {
    values.emplace_back(std::move(key), std::move(value));
  }
}

std::optional<Rational> StepRecord::get(std::string_view key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string to_string(const AmountSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Amount>) return to_decimal(s.value());
        else if constexpr (std::is_same_v<T, EntireBalance>) return "all";
        else if constexpr (std::is_same_v<T, MaxBorrowable>) return "max";
        else if constexpr (std::is_same_v<T, OutstandingLoan>) return "due";
        else return "shortfall";
      },
      spec);
}

std::string_view step_kind(const Step& step) {
  static constexpr std::string_view kNames[] = {"flash_borrow", "swap",      "deposit",  "borrow",
                                                "flash_repay",  "venue_buy", "transfer", "liquidate"};
  return kNames[step.index()];
}

std::string describe(const Step& step) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FlashBorrowStep>) {
          return "F(" + to_decimal(s.amount.value()) + ", " + s.asset.str() + ")";
        } else if constexpr (std::is_same_v<T, SwapStep>) {
          return "S(" + s.asset_in.str() + ", " + s.pool.other(s.asset_in).str() + ")";
        } else if constexpr (std::is_same_v<T, DepositStep>) {
          return "D(" + s.asset.str() + ", c" + s.asset.str() + ")";
        } else if constexpr (std::is_same_v<T, BorrowStep>) {
          return "B(" + s.asset.str() + ", " + to_string(s.amount) + ")";
        } else if constexpr (std::is_same_v<T, FlashRepayStep>) {
          return "P(" + to_string(s.amount) + ", " + s.asset.str() + ")";
        } else if constexpr (std::is_same_v<T, VenueBuyStep>) {
          return "S(" + s.asset_in.str() + ", " + s.asset_out.str() + ")";
        } else if constexpr (std::is_same_v<T, TransferStep>) {
          return "T(" + to_decimal(s.amount.value()) + " " + s.asset.str() + ", " + s.from.str() + " -> " +
                 s.to.str() + ")";
        } else {
          return "L(" + s.owner.str() + ")";
        }
      },
      step);
}

std::string_view to_string(TxStatus status) {
  switch (status) {
    case TxStatus::Success: return "Success";
    case TxStatus::Reverted: return "Reverted";
    case TxStatus::Rejected: return "Rejected";
  }
  return "Unknown";
}

namespace {

class StepRunner {
 public:
  StepRunner(WorldState& state, StepRecord& record, std::vector<GuardQuery>& queries)
      : state_(state), record_(record), queries_(queries) {}

  void operator()(const FlashBorrowStep& s) {
    flash_borrow(state_, s.borrower, s.asset, s.amount);
    record_.set("amount", s.amount.value());
    record_.set("due", repayment_due(state_, s.borrower, s.asset).value());
  }

  void operator()(const SwapStep& s) {
    Amount amount = balance_spec(s.amount_in, s.trader, s.asset_in);
    const AssetId& asset_out = s.pool.other(s.asset_in);
    Pool& pool = state_.pool(s.pool);
    state_.debit(s.trader, s.asset_in, amount);
    SwapResult swapped = swap_exact_in(pool, s.asset_in, amount);
    pool = std::move(swapped.pool);
    state_.credit(s.trader, asset_out, swapped.amount_out);
    record_.set("amount_in", amount.value());
    record_.set("amount_out", swapped.amount_out.value());
    record_.set("reserve:" + pool.asset_x.str(), pool.reserve_x.value());
    record_.set("reserve:" + pool.asset_y.str(), pool.reserve_y.value());
  }

  void operator()(const DepositStep& s) {
    Amount amount = balance_spec(s.amount, s.owner, s.asset);
    deposit(state_, s.owner, s.asset, amount);
    record_.set("amount", amount.value());
    record_.set("collateral", state_.plf.positions.at(s.owner).collateral_amount.value());
  }

  void operator()(const BorrowStep& s) {
    PriceSession prices(state_, record_.index, &queries_);
    auto position = state_.plf.positions.find(s.owner);
    if (position == state_.plf.positions.end()) {
      throw Error(Errc::UnknownPosition, s.owner.str() + " has no position");
    }
    std::optional<AssetId> collateral = position->second.collateral_asset;
    if (collateral) {
      record_.label = "B(c" + collateral->str() + ", " + s.asset.str() + ")";
      record_.set("collateral_amount", position->second.collateral_amount.value());
      record_.set("collateral_oracle_usd", raw_oracle_usd(state_, *collateral).value());
    }
    Amount limit = borrow_limit_usd(prices, s.owner);
    record_.set("limit_usd", limit.value());
    if (collateral) record_.set("collateral_price_usd", prices.price(*collateral).value());

    Amount amount;
    if (std::holds_alternative<MaxBorrowable>(s.amount)) {
      amount = max_borrowable(prices, s.owner, s.asset);
    } else if (const auto* exact = std::get_if<Amount>(&s.amount)) {
      amount = *exact;
    } else {
      throw Error(Errc::InvalidStep, "borrow amount must be a number or 'max'");
    }
    record_.set("requested", amount.value());
    BorrowReceipt receipt = borrow(prices, s.owner, s.asset, amount);
    record_.set("amount", amount.value());
    record_.set("price_usd", receipt.price_usd.value());
    record_.set("collateral_usd_after", receipt.collateral_usd_after.value());
    record_.set("loan_usd_after", receipt.loan_usd_after.value());
  }

  void operator()(const FlashRepayStep& s) {
    Amount amount;
    if (std::holds_alternative<OutstandingLoan>(s.amount)) {
      amount = repayment_due(state_, s.borrower, s.asset);
    } else if (const auto* exact = std::get_if<Amount>(&s.amount)) {
      amount = *exact;
    } else {
      throw Error(Errc::InvalidStep, "flash repayment must be a number or 'due'");
    }
    record_.set("amount", amount.value());
    record_.set("balance", state_.balance(s.borrower, s.asset).value());
    record_.label = "P(" + to_decimal(amount.value()) + ", " + s.asset.str() + ")";
    flash_repay(state_, s.borrower, s.asset, amount);
  }

  void operator()(const VenueBuyStep& s) {
    const FixedRateVenue venue = state_.venue(s.venue);
    const Amount& price_in = venue_price(venue, s.venue, s.asset_in);
    const Amount& price_out = venue_price(venue, s.venue, s.asset_out);
    Amount held_in = state_.balance(s.trader, s.asset_in);

    Amount amount_out;
    Amount cost;
    if (std::holds_alternative<FlashShortfall>(s.amount_out)) {
      auto loan = state_.flash.open.find({s.trader, s.asset_out});
      Amount due = loan == state_.flash.open.end() ? Amount{} : loan->second.due;
      amount_out = clamp_non_negative(due.value() - state_.balance(s.trader, s.asset_out).value());
      cost = amount_out * price_out / price_in;
      if (held_in < cost) {
        cost = held_in;
        amount_out = cost * price_in / price_out;
      }
    } else if (const auto* exact = std::get_if<Amount>(&s.amount_out)) {
      amount_out = *exact;
      cost = amount_out * price_out / price_in;
    } else {
      throw Error(Errc::InvalidStep, "venue purchase must be a number or 'shortfall'");
    }
    record_.set("amount_in", cost.value());
    record_.set("amount_out", amount_out.value());
    if (amount_out.is_zero()) return;

    state_.debit(s.trader, s.asset_in, cost);
    state_.credit(venue.account, s.asset_in, cost);
    state_.debit(venue.account, s.asset_out, amount_out);
    state_.credit(s.trader, s.asset_out, amount_out);
  }

  void operator()(const TransferStep& s) {
    if (s.amount.is_zero()) throw Error(Errc::ZeroAmount, "transfer must be positive");
    state_.debit(s.from, s.asset, s.amount);
    state_.credit(s.to, s.asset, s.amount);
    record_.set("amount", s.amount.value());
  }

  void operator()(const LiquidateStep& s) {
    PriceSession prices(state_, record_.index, &queries_);
    LiquidationResult result = check_and_liquidate(prices, s.owner);
    record_.set("liquidated", result.liquidated ? 1 : 0);
    record_.set("collateral_usd", result.collateral_usd.value());
    record_.set("loan_usd", result.loan_usd.value());
    record_.set("seized", result.seized.value());
  }

 private:
  Amount balance_spec(const AmountSpec& spec, const AccountId& account, const AssetId& asset) const {
    if (const auto* exact = std::get_if<Amount>(&spec)) return *exact;
    if (std::holds_alternative<EntireBalance>(spec)) return state_.balance(account, asset);
    throw Error(Errc::InvalidStep, "amount must be a number or 'all' here");
  }

  static const Amount& venue_price(const FixedRateVenue& venue, const std::string& name, const AssetId& asset) {
    auto it = venue.usd_prices.find(asset);
    if (it == venue.usd_prices.end() || it->second.is_zero()) {
      throw Error(Errc::UnknownAsset, "venue '" + name + "' does not quote " + asset.str());
    }
    return it->second;
  }

  WorldState& state_;
  StepRecord& record_;
  std::vector<GuardQuery>& queries_;
};

}  // namespace

WorldState begin_block(WorldState state) {
  ++state.current_block.id;
  return state;
}

TxResult execute_transaction(const WorldState& state, const Transaction& tx) {
  TxOutcome outcome;
  if (tx.block != state.current_block) {
    outcome.status = TxStatus::Rejected;
    outcome.error = Errc::BlockMismatch;
    outcome.reason = "transaction targets block " + std::to_string(tx.block.id) + ", current block is " +
                     std::to_string(state.current_block.id);
    return {state, std::move(outcome)};
  }

  WorldState working = state;
  auto fail = [&](std::size_t index, const Error& e) {
    outcome.status = TxStatus::Reverted;
    outcome.failed_step = index;
    outcome.error = e.code();
    outcome.reason = e.what();
    return TxResult{state, std::move(outcome)};
  };

  for (std::size_t i = 0; i < tx.steps.size(); ++i) {
    const Step& step = tx.steps[i];
    outcome.trace.steps.push_back(StepRecord{i, std::string(step_kind(step)), describe(step), {}, false, {}});
    StepRecord& record = outcome.trace.steps.back();
    try {
      std::visit(StepRunner(working, record, outcome.trace.price_queries), step);
    } catch (const Error& e) {
      record.failed = true;
      record.error = std::string(to_string(e.code()));
      return fail(i, e);
    }
  }

  try {
    assert_no_open_loans(working);
  } catch (const Error& e) {
    return fail(tx.steps.size(), e);
  }
  return {std::move(working), std::move(outcome)};
}

Snapshot snapshot(const WorldState& state) { return Snapshot(state); }

WorldState restore(const Snapshot& snap) { return snap.saved(); }

}  // namespace secplf
