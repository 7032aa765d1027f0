#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secplf/adversary.hpp"
#include "secplf/ledger.hpp"

namespace secplf {

/// A simulation setup read from JSON. `state` is the world at block 0 with
/// every priced asset's guard initialised from its honest oracle reading.
struct Scenario {
  std::string name;
  WorldState state;
  /// USD reference prices as declared; fixed-rate venues quote these unless
  /// they list their own.
  std::map<AssetId, Amount> reference_prices;
  std::optional<AttackPlan> attack;
  std::optional<Transaction> transaction;  ///< from an explicit "steps" list
  std::uint64_t seed = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Errors: ConfigError carrying the offending field's path, e.g.
/// "pools[0].reserves[1]".
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Emits the scenario in the same schema parse_scenario reads.
std::string scenario_to_json(const Scenario& scenario);

/// Switches the lending protocol's price source.
void set_price_mode(Scenario& scenario, PriceMode mode);

}  // namespace secplf
