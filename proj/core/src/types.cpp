#include "secplf/types.hpp"

namespace secplf {

PairId::PairId(AssetId a, AssetId b) {
  if (a == b) throw Error(Errc::InvalidParameter, "pair needs two distinct assets, got " + a.str() + " twice");
  if (b < a) std::swap(a, b);
  first_ = std::move(a);
  second_ = std::move(b);
}

PairId PairId::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size()) {
    throw Error(Errc::ParseError, "pair must look like 'A/B', got '" + std::string(text) + "'");
  }
  return PairId(AssetId(std::string(text.substr(0, slash))), AssetId(std::string(text.substr(slash + 1))));
}

const AssetId& PairId::other(const AssetId& asset) const {
  if (asset == first_) return second_;
  if (asset == second_) return first_;
  throw Error(Errc::UnknownAsset, asset.str() + " is not part of pair " + str());
}

Amount::Amount(long long units) : value_(units) {
  if (units < 0) throw Error(Errc::NegativeAmount, std::to_string(units));
}

Amount::Amount(Rational value) : value_(std::move(value)) {
  if (value_ < 0) throw Error(Errc::NegativeAmount, value_.str());
}

Amount Amount::parse(std::string_view text) { return Amount(parse_rational(text)); }

Amount& Amount::operator+=(const Amount& rhs) {
  value_ += rhs.value_;
  return *this;
}

Amount& Amount::operator-=(const Amount& rhs) {
  if (rhs.value_ > value_) {
    throw Error(Errc::NegativeAmount, value_.str() + " - " + rhs.value_.str() + " is negative");
  }
  value_ -= rhs.value_;
  return *this;
}

Amount operator/(const Amount& lhs, const Amount& rhs) {
  if (rhs.is_zero()) throw Error(Errc::InvalidParameter, "division by a zero amount");
  return Amount(Rational(lhs.value_ / rhs.value_));
}

std::ostream& operator<<(std::ostream& os, const Amount& a) { return os << a.value_.str(); }

Amount min(const Amount& a, const Amount& b) { return b < a ? b : a; }
Amount max(const Amount& a, const Amount& b) { return a < b ? b : a; }

Amount clamp_non_negative(const Rational& value) { return value < 0 ? Amount{} : Amount(value); }

std::string to_string(const Amount& amount) { return amount.value().str(); }

}  // namespace secplf
