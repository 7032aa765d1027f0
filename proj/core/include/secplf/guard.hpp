#pragma once

#include <cstdint>

#include "secplf/types.hpp"

namespace secplf {

/// Per-asset guard state: the block in which it was last updated and the
/// stored USD price.
struct PriceState {
  std::uint64_t id = 0;
  Amount price;

  friend bool operator==(const PriceState&, const PriceState&) = default;
};

struct GuardOutput {
  Amount price;           ///< price the lending protocol may use
  Rational discrepancy;   ///< oracle - stored price after the update (signed)
  bool updated = false;   ///< state moved to a new block during this query
};

struct GuardStep {
  PriceState state;
  GuardOutput output;
};

/// Disabled exists only as a negative control for the property suites: the
/// state then follows the oracle without the epsilon cap.
enum class GuardCap { Enforced, Disabled };

/// Deployment-time state from the first honest oracle reading.
/// Errors: NonPositiveOracle.
PriceState init_state(const Amount& oracle, BlockRef block);

/// One query of the guard.
///
/// If `block` is newer than the stored state, the state becomes
/// (block.id, min(oracle, stored * epsilon)); otherwise it is left alone, so
/// within one block the state changes at most once no matter how many
/// queries arrive. The returned price is min(oracle, stored-after-update).
///
/// Errors: NonPositiveOracle, InvalidParameter (epsilon <= 1), StaleBlock
/// (block older than the stored state, i.e. a ledger ordering bug).
GuardStep guarded_price(const PriceState& state, const Amount& oracle, BlockRef block,
                        const Rational& epsilon, GuardCap cap = GuardCap::Enforced);

}  // namespace secplf
