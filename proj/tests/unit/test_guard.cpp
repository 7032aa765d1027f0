#include "doctest.h"
#include "secplf/guard.hpp"

using namespace secplf;

TEST_CASE("init_state") {
  PriceState s = init_state(Amount{10}, BlockRef{0});
  CHECK(s.id == 0);
  CHECK(s.price == Amount{10});
  CHECK(init_state(Amount{1}, BlockRef{5}).id == 5);
  CHECK_THROWS_WITH_AS(init_state(Amount{0}, BlockRef{1}), doctest::Contains("NonPositiveOracle"), Error);
}

TEST_CASE("pumped oracle is capped at stored price times epsilon") {
  GuardStep g = guarded_price(init_state(Amount{10}, BlockRef{0}), Amount{102020}, BlockRef{1}, 5);
  CHECK(g.state.id == 1);
  CHECK(g.state.price == Amount{50});
  CHECK(g.output.price == Amount{50});
  CHECK(g.output.discrepancy == 102020 - 50);
  CHECK(g.output.updated);
}

TEST_CASE("same block, same oracle leaves the state alone") {
  PriceState s{3, Amount{42}};
  GuardStep g = guarded_price(s, Amount{42}, BlockRef{3}, 5);
  CHECK(g.state == s);
  CHECK(g.output.price == Amount{42});
  CHECK(g.output.discrepancy == 0);
  CHECK_FALSE(g.output.updated);
}

TEST_CASE("downward moves pass straight through") {
  GuardStep g = guarded_price(PriceState{0, Amount{100}}, Amount{80}, BlockRef{1}, Rational(5, 4));
  CHECK(g.state.price == Amount{80});
  CHECK(g.output.price == Amount{80});
  CHECK(g.output.discrepancy == 0);
}

TEST_CASE("a 30% jump under epsilon 1.25 leaves a $5 discrepancy") {
  GuardStep g = guarded_price(PriceState{0, Amount{100}}, Amount{130}, BlockRef{1}, Rational(5, 4));
  CHECK(g.state.price == Amount{125});
  CHECK(g.output.price == Amount{125});
  CHECK(g.output.discrepancy == 5);
}

TEST_CASE("within one block the state moves once") {
  PriceState s{0, Amount{10}};
  GuardStep first = guarded_price(s, Amount{1000}, BlockRef{1}, 5);
  GuardStep second = guarded_price(first.state, Amount{5000}, BlockRef{1}, 5);
  CHECK(second.state == first.state);
  CHECK(second.output.price == Amount{50});
  // A lower oracle in the same block is reported but not stored.
  GuardStep third = guarded_price(second.state, Amount{20}, BlockRef{1}, 5);
  CHECK(third.state == first.state);
  CHECK(third.output.price == Amount{20});
  CHECK(third.output.discrepancy == -30);
}

TEST_CASE("guard errors") {
  PriceState s{4, Amount{10}};
  CHECK_THROWS_WITH_AS(guarded_price(s, Amount{0}, BlockRef{5}, 5), doctest::Contains("NonPositiveOracle"), Error);
  CHECK_THROWS_WITH_AS(guarded_price(s, Amount{1}, BlockRef{3}, 5), doctest::Contains("StaleBlock"), Error);
  CHECK_THROWS_AS(guarded_price(s, Amount{1}, BlockRef{5}, 1), Error);
}

TEST_CASE("disabled cap follows the oracle") {
  GuardStep g = guarded_price(PriceState{0, Amount{10}}, Amount{102020}, BlockRef{1}, 5, GuardCap::Disabled);
  CHECK(g.output.price == Amount{102020});
}
