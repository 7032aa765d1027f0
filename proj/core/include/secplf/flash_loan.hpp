#pragma once

#include "secplf/world_state.hpp"

namespace secplf {

/// Lends `amount` of `asset` from the provider reserve. The loan must be
/// closed before the enclosing transaction commits.
/// Errors: ZeroAmount, InsufficientProviderReserve, DuplicateLoan.
void flash_borrow(WorldState& state, const AccountId& borrower, const AssetId& asset, const Amount& amount);

/// Repays an open loan. `amount` must cover principal * (1 + fee_rate); the
/// full amount returns to the provider.
/// Errors: NoOpenLoan, InsufficientRepayment, InsufficientBalance.
void flash_repay(WorldState& state, const AccountId& borrower, const AssetId& asset, const Amount& amount);

/// principal * (1 + fee_rate) of the open loan. Errors: NoOpenLoan.
Amount repayment_due(const WorldState& state, const AccountId& borrower, const AssetId& asset);

/// Commit-time check. Errors: OpenLoanAtCommit.
void assert_no_open_loans(const WorldState& state);

}  // namespace secplf
