#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace secplf {

/// Exact arbitrary-precision rational used throughout the simulation core.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "12", "-3", "0.001", "1e3" is rejected; "1000/101" is accepted.
/// Throws secplf::Error(Errc::ParseError) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical exact form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& value);

/// Rounded decimal rendering for human-facing output only.
std::string to_decimal(const Rational& value, int digits = 6);

double to_double(const Rational& value);

}  // namespace secplf
