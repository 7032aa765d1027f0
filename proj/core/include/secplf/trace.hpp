#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secplf/types.hpp"

namespace secplf {

/// What one transaction step did. Values are exact and keyed by name, e.g. a
/// swap records "amount_in" and "amount_out"; a borrow records "limit_usd".
struct StepRecord {
  std::size_t index = 0;
  std::string kind;   ///< flash_borrow, swap, deposit, borrow, ...
  std::string label;  ///< e.g. "F(10000, A)"
  std::vector<std::pair<std::string, Rational>> values;
  bool failed = false;
  std::string error;

  void set(std::string key, Rational value);
  std::optional<Rational> get(std::string_view key) const;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// One lending-protocol price lookup and, in guarded mode, the guard's view.
struct GuardQuery {
  std::size_t step = 0;
  AssetId asset;
  std::uint64_t block = 0;
  Amount oracle;
  bool guarded = false;
  Amount stored_before;
  Amount stored_after;
  Amount output;
  Rational discrepancy;
  bool updated = false;

  friend bool operator==(const GuardQuery&, const GuardQuery&) = default;
};

struct Trace {
  std::vector<StepRecord> steps;
  std::vector<GuardQuery> price_queries;

  friend bool operator==(const Trace&, const Trace&) = default;
};

}  // namespace secplf
