#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "secplf/trace.hpp"
#include "secplf/world_state.hpp"

namespace secplf {

// ---------------------------------------------------------------------------
// Amount specifications resolved at execution time.

struct EntireBalance {
  friend bool operator==(const EntireBalance&, const EntireBalance&) = default;
};
/// Borrow only: everything the current borrow limit allows.
struct MaxBorrowable {
  friend bool operator==(const MaxBorrowable&, const MaxBorrowable&) = default;
};
/// Flash repay only: the open loan's principal plus fee.
struct OutstandingLoan {
  friend bool operator==(const OutstandingLoan&, const OutstandingLoan&) = default;
};
/// Venue purchase only: whatever is missing to cover the buyer's open flash
/// loan in the purchased asset. If the buyer cannot pay for all of it, the
/// purchase spends the buyer's whole input balance instead.
struct FlashShortfall {
  friend bool operator==(const FlashShortfall&, const FlashShortfall&) = default;
};

using AmountSpec = std::variant<Amount, EntireBalance, MaxBorrowable, OutstandingLoan, FlashShortfall>;

std::string to_string(const AmountSpec& spec);

// ---------------------------------------------------------------------------
// Steps. The attack vocabulary is F (flash borrow), S (swap), D (deposit),
// B (borrow) and P (flash repay); the remaining steps support scenarios.

struct FlashBorrowStep {
  AccountId borrower;
  AssetId asset;
  Amount amount;
  friend bool operator==(const FlashBorrowStep&, const FlashBorrowStep&) = default;
};

struct SwapStep {
  AccountId trader;
  PairId pool;
  AssetId asset_in;
  AmountSpec amount_in;
  friend bool operator==(const SwapStep&, const SwapStep&) = default;
};

struct DepositStep {
  AccountId owner;
  AssetId asset;
  AmountSpec amount;
  friend bool operator==(const DepositStep&, const DepositStep&) = default;
};

struct BorrowStep {
  AccountId owner;
  AssetId asset;
  AmountSpec amount;
  friend bool operator==(const BorrowStep&, const BorrowStep&) = default;
};

struct FlashRepayStep {
  AccountId borrower;
  AssetId asset;
  AmountSpec amount{OutstandingLoan{}};
  friend bool operator==(const FlashRepayStep&, const FlashRepayStep&) = default;
};

/// Buy `asset_out` from a fixed-rate venue, paying in `asset_in`.
struct VenueBuyStep {
  AccountId trader;
  std::string venue;
  AssetId asset_in;
  AssetId asset_out;
  AmountSpec amount_out;
  friend bool operator==(const VenueBuyStep&, const VenueBuyStep&) = default;
};

struct TransferStep {
  AccountId from;
  AccountId to;
  AssetId asset;
  Amount amount;
  friend bool operator==(const TransferStep&, const TransferStep&) = default;
};

struct LiquidateStep {
  AccountId owner;
  friend bool operator==(const LiquidateStep&, const LiquidateStep&) = default;
};

using Step = std::variant<FlashBorrowStep, SwapStep, DepositStep, BorrowStep, FlashRepayStep, VenueBuyStep,
                          TransferStep, LiquidateStep>;

/// Short symbolic form, e.g. "F(10000, A)" or "S(A, B)".
std::string describe(const Step& step);
std::string_view step_kind(const Step& step);

struct Transaction {
  BlockRef block;
  AccountId sender;
  std::vector<Step> steps;
  friend bool operator==(const Transaction&, const Transaction&) = default;
};

enum class TxStatus { Success, Reverted, Rejected };
std::string_view to_string(TxStatus status);

struct TxOutcome {
  TxStatus status = TxStatus::Success;
  /// Index of the failing step; equals steps.size() for a commit-time failure.
  std::optional<std::size_t> failed_step;
  std::optional<Errc> error;
  std::string reason;
  /// Kept on revert as well, describing what was attempted.
  Trace trace;
};

struct TxResult {
  WorldState state;
  TxOutcome outcome;
};

/// Advances the block height by one; nothing else changes.
WorldState begin_block(WorldState state);

/// Runs every step against a working copy. On success the copy is returned;
/// if any step or the commit-time flash-loan check fails, the original state
/// is returned untouched together with a Reverted outcome. A transaction for
/// a block other than the current one is Rejected without running.
TxResult execute_transaction(const WorldState& state, const Transaction& tx);

/// Value snapshot of a world state.
class Snapshot {
 public:
  const WorldState& saved() const noexcept { return saved_; }

 private:
  friend Snapshot snapshot(const WorldState& state);
  explicit Snapshot(WorldState state) : saved_(std::move(state)) {}
  WorldState saved_;
};

Snapshot snapshot(const WorldState& state);
WorldState restore(const Snapshot& snap);

}  // namespace secplf
