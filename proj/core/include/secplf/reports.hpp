#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "secplf/adversary.hpp"
#include "secplf/risk.hpp"

namespace secplf {

/// Exact values are written as rational strings ("1000/101"), so parsing the
/// output gives back an identical report.
std::string attack_report_to_json(const AttackReport& report);
/// Errors: ParseError.
AttackReport attack_report_from_json(std::string_view text);

/// Step-by-step walkthrough of the attack transaction, one step per line
/// followed by the outcome and the profit figures.
std::string format_attack_trace(const AttackReport& report);

std::string trace_to_json(const Trace& trace);
Trace trace_from_json(std::string_view text);

std::string risk_report_to_json(const RiskReport& report);
RiskReport risk_report_from_json(std::string_view text);

/// `asset,points,market_cap_usd,tz,exceedance_count,exceedance_probability`;
/// absent values are left empty.
std::string risk_table_csv(const RiskReport& report);
std::vector<AssetRisk> parse_risk_table_csv(std::string_view text);

/// `asset,x,cumulative` rows for every asset's CDF.
std::string cdf_csv(const RiskReport& report);

/// Whitespace-separated plot data: market cap against T_z, one asset per
/// line, for assets with both values.
std::string tz_plot_data(const RiskReport& report);
/// One gnuplot data block per asset (separated by two blank lines) of x and
/// cumulative probability.
std::string cdf_plot_data(const RiskReport& report);

}  // namespace secplf
