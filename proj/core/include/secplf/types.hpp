#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "secplf/error.hpp"
#include "secplf/rational.hpp"

namespace secplf {

/// Non-empty string identifier, distinct per Tag.
template <typename Tag>
class Identifier {
 public:
  Identifier() = default;
  explicit Identifier(std::string value);

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const Identifier&, const Identifier&) = default;
  friend auto operator<=>(const Identifier&, const Identifier&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Identifier& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

template <typename Tag>
Identifier<Tag>::Identifier(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw Error(Errc::InvalidParameter, "identifier must be non-empty");
}

struct AssetTag {};
struct AccountTag {};

using AssetId = Identifier<AssetTag>;
using AccountId = Identifier<AccountTag>;

/// Unordered asset pair; stored with the lexicographically smaller asset first.
class PairId {
 public:
  PairId() = default;
  PairId(AssetId a, AssetId b);

  /// Parses "A/B" (either order).
  static PairId parse(std::string_view text);

  const AssetId& first() const noexcept { return first_; }
  const AssetId& second() const noexcept { return second_; }
  bool contains(const AssetId& asset) const { return asset == first_ || asset == second_; }
  const AssetId& other(const AssetId& asset) const;

  std::string str() const { return first_.str() + "/" + second_.str(); }

  friend bool operator==(const PairId&, const PairId&) = default;
  friend auto operator<=>(const PairId&, const PairId&) = default;

 private:
  AssetId first_;
  AssetId second_;
};

struct BlockRef {
  std::uint64_t id = 0;

  friend bool operator==(const BlockRef&, const BlockRef&) = default;
  friend auto operator<=>(const BlockRef&, const BlockRef&) = default;
};

/// Exact non-negative token quantity. Any operation that would produce a
/// negative value throws Errc::NegativeAmount.
class Amount {
 public:
  Amount() = default;
  Amount(long long units);  // NOLINT(google-explicit-constructor)
  explicit Amount(Rational value);

  static Amount parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }

  Amount& operator+=(const Amount& rhs);
  Amount& operator-=(const Amount& rhs);

  friend Amount operator+(Amount lhs, const Amount& rhs) { return lhs += rhs; }
  friend Amount operator-(Amount lhs, const Amount& rhs) { return lhs -= rhs; }
  friend Amount operator*(const Amount& lhs, const Amount& rhs) {
    return Amount(Rational(lhs.value_ * rhs.value_));
  }
  friend Amount operator*(const Amount& lhs, const Rational& rhs) {
    return Amount(Rational(lhs.value_ * rhs));
  }
  /// Throws Errc::InvalidParameter on a zero divisor.
  friend Amount operator/(const Amount& lhs, const Amount& rhs);

  friend bool operator==(const Amount& lhs, const Amount& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Amount& lhs, const Amount& rhs) {
    if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
    if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend std::ostream& operator<<(std::ostream& os, const Amount& a);

 private:
  Rational value_{0};
};

Amount min(const Amount& a, const Amount& b);
Amount max(const Amount& a, const Amount& b);

/// max(0, value) as an Amount.
Amount clamp_non_negative(const Rational& value);

std::string to_string(const Amount& amount);

}  // namespace secplf
