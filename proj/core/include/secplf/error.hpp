#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace secplf {

enum class Errc {
  // Value-level
  NegativeAmount,
  ZeroAmount,
  InvalidParameter,
  ParseError,
  // Market and ledger
  UnknownAsset,
  UnknownPool,
  UnknownVenue,
  DrainedPool,
  InsufficientBalance,
  BlockMismatch,
  InvalidStep,
  // Flash loans
  InsufficientProviderReserve,
  DuplicateLoan,
  NoOpenLoan,
  InsufficientRepayment,
  OpenLoanAtCommit,
  // Lending
  UnknownPosition,
  CollateralMismatch,
  OverLimit,
  InsufficientPlfLiquidity,
  // Guard
  NonPositiveOracle,
  StaleBlock,
  // Adversary
  InvalidPlan,
  // Analyzer
  NonPositivePrice,
  EmptySeries,
  SeriesTooShort,
  OutOfRange,
  // Configuration
  ConfigError,
};

std::string_view to_string(Errc code);

/// Single exception type for the library. Step failures inside a transaction
/// are caught by the ledger and turned into a Reverted outcome.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Configuration failure carrying a JSON-path-like pointer to the field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace secplf
