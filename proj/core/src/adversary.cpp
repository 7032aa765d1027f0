#include "secplf/adversary.hpp"

#include <set>

namespace secplf {

namespace {

constexpr std::size_t kDepositStep = 2;
constexpr std::size_t kPumpStep = 3;
constexpr std::size_t kBorrowStep = 4;

const StepRecord* record_at(const Trace& trace, std::size_t index) {
  if (index >= trace.steps.size() || trace.steps[index].failed) return nullptr;
  return &trace.steps[index];
}

Amount amount_or_zero(const StepRecord* record, std::string_view key) {
  if (record == nullptr) return {};
  auto v = record->get(key);
  return v ? Amount(*v) : Amount{};
}

}  // namespace

Transaction build_attack(const AttackPlan& plan, BlockRef block) {
  auto invalid = [](const std::string& why) { return Error(Errc::InvalidPlan, why); };
  if (plan.flash_amount.is_zero()) throw invalid("flash amount must be positive");
  if (plan.collateral_swap_in.is_zero()) throw invalid("collateral swap-in must be positive");
  if (plan.collateral_swap_in >= plan.flash_amount) {
    throw invalid("collateral swap-in must be smaller than the flash amount");
  }
  if (!plan.target_pool.contains(plan.flash_asset) || !plan.target_pool.contains(plan.deposit_asset)) {
    throw invalid("target pool " + plan.target_pool.str() + " must trade " + plan.flash_asset.str() + " for " +
                  plan.deposit_asset.str());
  }
  if (plan.borrow_asset == plan.flash_asset || plan.borrow_asset == plan.deposit_asset) {
    throw invalid("borrowed asset must differ from the flash and collateral assets");
  }
  if (plan.venue.empty()) throw invalid("a venue for the shortfall purchase is required");

  const AccountId& who = plan.adversary;
  Transaction tx{block, who, {}};
  tx.steps = {
      FlashBorrowStep{who, plan.flash_asset, plan.flash_amount},
      SwapStep{who, plan.target_pool, plan.flash_asset, plan.collateral_swap_in},
      DepositStep{who, plan.deposit_asset, EntireBalance{}},
      SwapStep{who, plan.target_pool, plan.flash_asset, plan.flash_amount - plan.collateral_swap_in},
      BorrowStep{who, plan.borrow_asset, MaxBorrowable{}},
      SwapStep{who, plan.target_pool, plan.deposit_asset, EntireBalance{}},
      VenueBuyStep{who, plan.venue, plan.borrow_asset, plan.flash_asset, FlashShortfall{}},
      FlashRepayStep{who, plan.flash_asset, OutstandingLoan{}},
  };
  return tx;
}

Rational predicted_profit_usd(const Amount& o_b, const Amount& y, const Rational& theta, const Rational& epsilon) {
  if (epsilon <= 0) throw Error(Errc::InvalidParameter, "epsilon must be positive");
  return Rational(o_b.value() * y.value() * (theta / epsilon - 1));
}

Rational max_profit_usd(const Amount& o_b, const Amount& max_y, const Rational& max_theta,
                        const Rational& epsilon) {
  return predicted_profit_usd(o_b, max_y, max_theta, epsilon);
}

AttackRun run_attack(const WorldState& state, const AttackPlan& plan) {
  Transaction tx = build_attack(plan, state.current_block);

  AttackReport report;
  report.plan = plan;
  report.guarded = state.plf.params.price_mode == PriceMode::SecPlfGuard;
  report.epsilon = state.plf.params.epsilon;
  report.pre_attack_oracle_usd = raw_oracle_usd(state, plan.deposit_asset);
  const Pool& pool = state.pool(plan.target_pool);
  const Rational spot_before = spot_price(pool, plan.deposit_asset, plan.flash_asset);
  const Amount borrow_oracle = raw_oracle_usd(state, plan.borrow_asset);

  TxResult result = execute_transaction(state, tx);
  report.outcome = result.outcome.status;
  report.reverted_step = result.outcome.failed_step;
  report.revert_reason = result.outcome.reason;

  const Trace& trace = result.outcome.trace;
  report.deposited = amount_or_zero(record_at(trace, kDepositStep), "amount");
  if (const StepRecord* pump = record_at(trace, kPumpStep)) {
    Rational reserve_flash = *pump->get("reserve:" + plan.flash_asset.str());
    Rational reserve_deposit = *pump->get("reserve:" + plan.deposit_asset.str());
    report.theta = Rational(reserve_flash / reserve_deposit / spot_before);
  }
  report.max_l_usd = Amount(Rational(report.pre_attack_oracle_usd.value() * report.deposited.value() *
                                     report.theta / report.epsilon));
  report.planned_borrow = report.max_l_usd / borrow_oracle;

  if (kBorrowStep < trace.steps.size()) {
    const StepRecord& b = trace.steps[kBorrowStep];
    report.borrow_limit_usd = amount_or_zero(&b, "limit_usd");
    report.collateral_price_used = amount_or_zero(&b, "collateral_price_usd");
    Amount price_used = b.get("price_usd") ? amount_or_zero(&b, "price_usd") : borrow_oracle;
    report.planned_borrow_rejected = report.planned_borrow * price_used > report.borrow_limit_usd;
    if (!b.failed) report.borrowed = amount_or_zero(&b, "amount");
  }
  report.predicted_g_usd =
      predicted_profit_usd(report.pre_attack_oracle_usd, report.deposited, report.theta, report.epsilon);

  if (result.outcome.status == TxStatus::Success) {
    std::set<AssetId> touched;
    for (const auto& [key, _] : state.balances) {
      if (key.first == plan.adversary) touched.insert(key.second);
    }
    for (const auto& [key, _] : result.state.balances) {
      if (key.first == plan.adversary) touched.insert(key.second);
    }
    Rational profit = 0;
    for (const AssetId& asset : touched) {
      Rational delta = result.state.balance(plan.adversary, asset).value() -
                       state.balance(plan.adversary, asset).value();
      if (delta != 0) profit += delta * raw_oracle_usd(state, asset).value();
    }
    report.realized_profit_usd = profit;
    report.note =
        "predicted G charges the collateral's market value (o_b * Y) as the attack cost; realized profit charges "
        "the flash shortfall actually bought back, and locked collateral counts as zero";
  } else {
    report.realized_profit_usd = 0;
    report.note = "transaction reverted; no state change was committed";
  }
  report.trace = trace;
  return {std::move(result.state), std::move(report)};
}

}  // namespace secplf
