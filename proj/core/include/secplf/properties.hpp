#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "secplf/scenario.hpp"

namespace secplf {

/// The three-asset attack world: pool A/B pricing B in A, A and C at fixed
/// USD prices, a flash provider and a fixed-rate venue stocked with A, and a
/// lending protocol with deep C liquidity. The world is at block 0 with the
/// guards initialised; attacks run in a later block.
struct AttackSetup {
  Rational reserve_a{100};
  Rational reserve_b{1000};
  Rational price_a{100};
  Rational price_c{1};
  Rational epsilon{5};
  Rational flash_amount{10000};
  Rational swap_in{100};
  Rational adversary_c{0};
  Rational flash_fee{0};
  PriceMode mode = PriceMode::RawOracle;
  GuardCap guard_cap = GuardCap::Enforced;
};

Scenario make_attack_scenario(const AttackSetup& setup);

struct SuiteOptions {
  std::uint64_t seed = 20230607;
  std::size_t trials = 1000;
  /// Disabled turns the guard's cap off, a negative control that must make
  /// the suites fail.
  GuardCap guard_cap = GuardCap::Enforced;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t boundary_hits = 0;
  bool boundary_required = false;
  /// Attack suites: trials whose transaction committed rather than reverted.
  std::size_t committed = 0;
  /// Description of the first failing trial (scenario JSON where one exists).
  std::string counterexample;

  bool passed() const { return failures == 0 && (!boundary_required || boundary_hits > 0); }
};

/// 2 to 10 guard queries with random oracles in one block change the state
/// at most once.
SuiteResult single_update_suite(const SuiteOptions& options);

/// Every guarded price within one block stays at or below p_pre * epsilon;
/// requires at least one trial to reach the cap exactly.
SuiteResult growth_cap_suite(const SuiteOptions& options);

/// Random attack plans (reserves, X, swap-in, epsilon in {5/4, 2, 5})
/// against a guarded protocol never commit a positive profit.
SuiteResult guarded_attack_sweep(const SuiteOptions& options);

/// A hand-built plan whose distortion equals epsilon exactly: predicted G is
/// zero, the guard output sits exactly on the cap and realized profit is not
/// positive.
SuiteResult cap_boundary_attack(const SuiteOptions& options);

std::vector<SuiteResult> run_property_suite(const SuiteOptions& options);

}  // namespace secplf
