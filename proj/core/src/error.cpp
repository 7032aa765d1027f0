#include "secplf/error.hpp"

namespace secplf {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NegativeAmount: return "NegativeAmount";
    case Errc::ZeroAmount: return "ZeroAmount";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownAsset: return "UnknownAsset";
    case Errc::UnknownPool: return "UnknownPool";
    case Errc::UnknownVenue: return "UnknownVenue";
    case Errc::DrainedPool: return "DrainedPool";
    case Errc::InsufficientBalance: return "InsufficientBalance";
    case Errc::BlockMismatch: return "BlockMismatch";
    case Errc::InvalidStep: return "InvalidStep";
    case Errc::InsufficientProviderReserve: return "InsufficientProviderReserve";
    case Errc::DuplicateLoan: return "DuplicateLoan";
    case Errc::NoOpenLoan: return "NoOpenLoan";
    case Errc::InsufficientRepayment: return "InsufficientRepayment";
    case Errc::OpenLoanAtCommit: return "OpenLoanAtCommit";
    case Errc::UnknownPosition: return "UnknownPosition";
    case Errc::CollateralMismatch: return "CollateralMismatch";
    case Errc::OverLimit: return "OverLimit";
    case Errc::InsufficientPlfLiquidity: return "InsufficientPlfLiquidity";
    case Errc::NonPositiveOracle: return "NonPositiveOracle";
    case Errc::StaleBlock: return "StaleBlock";
    case Errc::InvalidPlan: return "InvalidPlan";
    case Errc::NonPositivePrice: return "NonPositivePrice";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ConfigError::ConfigError(std::string path, const std::string& message)
    : Error(Errc::ConfigError, path + ": " + message), path_(std::move(path)) {}

}  // namespace secplf
