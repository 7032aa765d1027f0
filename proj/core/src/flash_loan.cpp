#include "secplf/flash_loan.hpp"

namespace secplf {

void flash_borrow(WorldState& state, const AccountId& borrower, const AssetId& asset, const Amount& amount) {
  if (amount.is_zero()) throw Error(Errc::ZeroAmount, "flash loan amount must be positive");
  auto key = std::make_pair(borrower, asset);
  if (state.flash.open.contains(key)) {
    throw Error(Errc::DuplicateLoan, borrower.str() + " already has an open " + asset.str() + " flash loan");
  }
  auto reserve = state.flash.reserves.find(asset);
  if (reserve == state.flash.reserves.end() || reserve->second < amount) {
    throw Error(Errc::InsufficientProviderReserve,
                "provider cannot lend " + to_decimal(amount.value()) + " " + asset.str());
  }
  reserve->second -= amount;
  state.credit(borrower, asset, amount);
  Amount due = amount * Rational(1 + state.flash.fee_rate);
  state.flash.open.emplace(std::move(key), OpenLoan{amount, std::move(due)});
}

Amount repayment_due(const WorldState& state, const AccountId& borrower, const AssetId& asset) {
  auto it = state.flash.open.find({borrower, asset});
  if (it == state.flash.open.end()) {
    throw Error(Errc::NoOpenLoan, borrower.str() + " has no open " + asset.str() + " flash loan");
  }
  return it->second.due;
}

void flash_repay(WorldState& state, const AccountId& borrower, const AssetId& asset, const Amount& amount) {
  auto it = state.flash.open.find({borrower, asset});
  if (it == state.flash.open.end()) {
    throw Error(Errc::NoOpenLoan, borrower.str() + " has no open " + asset.str() + " flash loan");
  }
  if (amount < it->second.due) {
    throw Error(Errc::InsufficientRepayment,
                "repaying " + to_decimal(amount.value()) + " of " + to_decimal(it->second.due.value()) + " due");
  }
  state.debit(borrower, asset, amount);
  state.flash.reserves[asset] += amount;
  state.flash.open.erase(it);
}

void assert_no_open_loans(const WorldState& state) {
  if (state.flash.open.empty()) return;
  const auto& [key, loan] = *state.flash.open.begin();
  throw Error(Errc::OpenLoanAtCommit, key.first.str() + " left a " + to_decimal(loan.due.value()) + " " +
                                          key.second.str() + " flash loan open");
}

}  // namespace secplf
