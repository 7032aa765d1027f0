#include "doctest.h"
#include "secplf/types.hpp"

using namespace secplf;

TEST_CASE("rational parsing and rendering") {
  CHECK(parse_rational("12") == 12);
  CHECK(parse_rational("-3") == -3);
  CHECK(parse_rational("0.001") == Rational(1, 1000));
  CHECK(parse_rational("1000/101") == Rational(1000, 101));
  CHECK_THROWS_AS(parse_rational("1e3"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(to_string(Rational(1000, 101)) == "1000/101");
  CHECK(to_decimal(Rational(49500, 101), 3) == "490.099");
  CHECK(to_decimal(Rational(5, 2), 0) == "3");
  CHECK(to_decimal(Rational(-5, 2), 0) == "-3");
}

TEST_CASE("amounts never go negative") {
  Amount a{10};
  a -= Amount{4};
  CHECK(a == Amount{6});
  CHECK_THROWS_AS(a -= Amount{7}, Error);
  CHECK_THROWS_AS(Amount(Rational(-1)), Error);
  CHECK(clamp_non_negative(Rational(-5)).is_zero());
  CHECK((Amount{3} / Amount{4}).value() == Rational(3, 4));
  CHECK_THROWS_AS(Amount{3} / Amount{}, Error);
}

TEST_CASE("identifiers and pairs") {
  CHECK_THROWS_AS(AssetId(""), Error);
  PairId p(AssetId("B"), AssetId("A"));
  CHECK(p.first() == AssetId("A"));
  CHECK(p == PairId::parse("A/B"));
  CHECK(p == PairId::parse("B/A"));
  CHECK(p.other(AssetId("A")) == AssetId("B"));
  CHECK_THROWS_AS(PairId(AssetId("A"), AssetId("A")), Error);
  CHECK_THROWS_AS(PairId::parse("AB"), Error);
}
