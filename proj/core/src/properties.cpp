#include "secplf/properties.hpp"

#include <array>
#include <random>
#include <sstream>

namespace secplf {

namespace {

const AssetId kA{"A"};
const AssetId kB{"B"};
const AssetId kC{"C"};
const AccountId kAdversary{"adversary"};
const AccountId kDesk{"desk"};

Rational random_price(std::mt19937_64& rng, long long lo_cents, long long hi_cents) {
  std::uniform_int_distribution<long long> d(lo_cents, hi_cents);
  return Rational(d(rng), 100);
}

std::string describe_guard_trial(const PriceState& start, const Rational& epsilon, const std::vector<Amount>& oracles,
                                 std::uint64_t block) {
  std::ostringstream out;
  out << "{\"state\": {\"id\": " << start.id << ", \"price\": \"" << to_string(start.price.value())
      << "\"}, \"epsilon\": \"" << to_string(epsilon) << "\", \"block\": " << block << ", \"oracles\": [";
  for (std::size_t i = 0; i < oracles.size(); ++i) {
    out << (i ? ", " : "") << '"' << to_string(oracles[i].value()) << '"';
  }
  out << "]}";
  return out.str();
}

Rational pick_epsilon(std::mt19937_64& rng) {
  static const std::array<Rational, 3> kChoices{Rational(5, 4), Rational(2), Rational(5)};
  std::uniform_int_distribution<std::size_t> d(0, kChoices.size());
  std::size_t i = d(rng);
  if (i < kChoices.size()) return kChoices[i];
  return Rational(std::uniform_int_distribution<long long>(101, 1000)(rng), 100);
}

}  // namespace

Scenario make_attack_scenario(const AttackSetup& s) {
  Scenario sc;
  sc.name = "attack";
  WorldState& st = sc.state;
  st.pools.emplace(PairId(kA, kB), make_pool(kA, Amount(s.reserve_a), kB, Amount(s.reserve_b)));
  st.oracles[kA] = FixedPriceSource{Amount(s.price_a)};
  st.oracles[kB] = DexPriceSource{PairId(kA, kB), kA};
  st.oracles[kC] = FixedPriceSource{Amount(s.price_c)};
  sc.reference_prices[kA] = Amount(s.price_a);
  sc.reference_prices[kB] = raw_oracle_usd(st, kB);
  sc.reference_prices[kC] = Amount(s.price_c);

  st.balances[{kAdversary, kC}] = Amount(s.adversary_c);
  const Rational deep = (s.flash_amount + s.reserve_a) * 1000;
  st.balances[{kDesk, kA}] = Amount(deep);
  st.venues.emplace("desk", FixedRateVenue{kDesk, sc.reference_prices});

  st.plf.params.epsilon = s.epsilon;
  st.plf.params.price_mode = s.mode;
  st.plf.params.guard_cap = s.guard_cap;
  st.plf.liquidity[kC] = Amount(Rational(deep * s.price_a * s.reserve_b * 1000 / s.price_c));
  st.flash.fee_rate = s.flash_fee;
  st.flash.reserves[kA] = Amount(deep);

  for (const auto& [asset, _] : st.oracles) st.guards[asset] = init_state(raw_oracle_usd(st, asset), st.current_block);

  sc.attack = AttackPlan{kAdversary,         kA, kB, kC, Amount(s.flash_amount), Amount(s.swap_in),
                         PairId(kA, kB), "desk"};
  return sc;
}

SuiteResult single_update_suite(const SuiteOptions& options) {
  SuiteResult result{"single_update", options.trials, 0, 0, false, 0, {}};
  std::mt19937_64 rng(options.seed);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Rational epsilon = pick_epsilon(rng);
    const std::uint64_t first_block = std::uniform_int_distribution<std::uint64_t>(0, 1000)(rng);
    const PriceState start = init_state(Amount(random_price(rng, 1, 1'000'000)), BlockRef{first_block});
    const std::uint64_t block = first_block + std::uniform_int_distribution<std::uint64_t>(0, 3)(rng);
    const std::size_t queries = std::uniform_int_distribution<std::size_t>(2, 10)(rng);

    std::vector<Amount> oracles;
    PriceState state = start;
    std::size_t transitions = 0;
    for (std::size_t q = 0; q < queries; ++q) {
      oracles.emplace_back(random_price(rng, 1, 100'000'000));
      GuardStep step = guarded_price(state, oracles.back(), BlockRef{block}, epsilon, options.guard_cap);
      if (!(step.state == state)) ++transitions;
      state = step.state;
    }
    if (transitions > 1) {
      if (result.failures++ == 0) result.counterexample = describe_guard_trial(start, epsilon, oracles, block);
    }
  }
  return result;
}

SuiteResult growth_cap_suite(const SuiteOptions& options) {
  SuiteResult result{"growth_cap", options.trials, 0, 0, true, 0, {}};
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Rational epsilon = pick_epsilon(rng);
    const PriceState start = init_state(Amount(random_price(rng, 1, 1'000'000)), BlockRef{0});
    const Rational cap = start.price.value() * epsilon;
    const std::uint64_t block = std::uniform_int_distribution<std::uint64_t>(1, 5)(rng);
    const std::size_t queries = std::uniform_int_distribution<std::size_t>(1, 10)(rng);

    std::vector<Amount> oracles;
    PriceState state = start;
    bool violated = false;
    bool hit = false;
    for (std::size_t q = 0; q < queries; ++q) {
      // Oracle readings from a tenth of the stored price up to several times the cap.
      std::uniform_int_distribution<long long> scale(10, 3000);
      oracles.emplace_back(Rational(cap * scale(rng) / 1000));
      GuardStep step = guarded_price(state, oracles.back(), BlockRef{block}, epsilon, options.guard_cap);
      violated = violated || step.output.price.value() > cap;
      hit = hit || step.output.price.value() == cap;
      state = step.state;
    }
    if (hit) ++result.boundary_hits;
    if (violated) {
      if (result.failures++ == 0) result.counterexample = describe_guard_trial(start, epsilon, oracles, block);
    }
  }
  return result;
}

SuiteResult guarded_attack_sweep(const SuiteOptions& options) {
  SuiteResult result{"guarded_attack", options.trials, 0, 0, false, 0, {}};
  std::mt19937_64 rng(options.seed ^ 0x5bd1e995ULL);
  static const std::array<Rational, 3> kEpsilons{Rational(5, 4), Rational(2), Rational(5)};
  for (std::size_t t = 0; t < options.trials; ++t) {
    AttackSetup s;
    s.reserve_a = std::uniform_int_distribution<long long>(50, 5000)(rng);
    s.reserve_b = std::uniform_int_distribution<long long>(50, 50000)(rng);
    s.price_a = random_price(rng, 100, 100'000);
    s.epsilon = kEpsilons[t % kEpsilons.size()];
    const long long reserve_a = static_cast<long long>(s.reserve_a.convert_to<double>());
    const long long flash = std::uniform_int_distribution<long long>(2, reserve_a * 200)(rng);
    s.flash_amount = flash;
    s.swap_in = std::uniform_int_distribution<long long>(1, std::max(1LL, flash / 4))(rng);
    if (s.swap_in >= s.flash_amount) s.swap_in = s.flash_amount - 1;
    s.adversary_c = std::uniform_int_distribution<long long>(0, 10'000'000)(rng);
    s.mode = PriceMode::SecPlfGuard;
    s.guard_cap = options.guard_cap;

    Scenario sc = make_attack_scenario(s);
    AttackRun run = run_attack(begin_block(sc.state), *sc.attack);
    if (run.report.outcome == TxStatus::Success) ++result.committed;
    if (run.report.realized_profit_usd > 0) {
      if (result.failures++ == 0) result.counterexample = scenario_to_json(sc);
    }
  }
  return result;
}

SuiteResult cap_boundary_attack(const SuiteOptions& options) {
  SuiteResult result{"cap_boundary", 1, 0, 0, true, 0, {}};
  // Reserves 100/1000 and 100 A pushed in: spot(B in A) goes from 1/10 to
  // 200^2/100000 = 2/5, a distortion of exactly 4.
  AttackSetup s;
  s.epsilon = 4;
  s.flash_amount = 100;
  s.swap_in = 10;
  s.adversary_c = 1'000'000;
  s.mode = PriceMode::SecPlfGuard;
  s.guard_cap = options.guard_cap;
  Scenario sc = make_attack_scenario(s);
  AttackRun run = run_attack(begin_block(sc.state), *sc.attack);
  const AttackReport& r = run.report;

  const Rational cap = r.pre_attack_oracle_usd.value() * s.epsilon;
  bool ok = r.theta == s.epsilon && r.predicted_g_usd == 0 && r.realized_profit_usd <= 0;
  if (r.collateral_price_used.value() == cap) ++result.boundary_hits;
  if (!ok) {
    result.failures = 1;
    result.counterexample = scenario_to_json(sc);
  }
  return result;
}

std::vector<SuiteResult> run_property_suite(const SuiteOptions& options) {
  return {single_update_suite(options), growth_cap_suite(options), guarded_attack_sweep(options), cap_boundary_attack(options)};
}

}  // namespace secplf
