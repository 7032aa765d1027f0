#include "secplf/guard.hpp"

namespace secplf {

PriceState init_state(const Amount& oracle, BlockRef block) {
  if (oracle.is_zero()) throw Error(Errc::NonPositiveOracle, "cannot initialise guard from a zero price");
  return PriceState{block.id, oracle};
}

GuardStep guarded_price(const PriceState& state, const Amount& oracle, BlockRef block,
                        const Rational& epsilon, GuardCap cap) {
  if (oracle.is_zero()) throw Error(Errc::NonPositiveOracle, "oracle price must be positive");
  if (epsilon <= 1) throw Error(Errc::InvalidParameter, "guard epsilon must exceed 1, got " + epsilon.str());
  if (block.id < state.id) {
    throw Error(Errc::StaleBlock, "query from block " + std::to_string(block.id) +
                                      " after state was updated in block " + std::to_string(state.id));
  }

  GuardStep step{state, {}};
  if (block.id > state.id) {
    Amount next = cap == GuardCap::Enforced ? min(oracle, state.price * epsilon) : oracle;
    step.state = PriceState{block.id, std::move(next)};
    step.output.updated = true;
  }
  step.output.price = min(oracle, step.state.price);
  step.output.discrepancy = oracle.value() - step.state.price.value();
  return step;
}

}  // namespace secplf
