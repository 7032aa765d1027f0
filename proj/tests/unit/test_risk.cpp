#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "doctest.h"
#include "secplf/error.hpp"
#include "secplf/risk.hpp"

using namespace secplf;

namespace {

PriceSeries series_of(std::vector<double> closes) {
  PriceSeries s;
  s.asset = "X";
  s.closes = std::move(closes);
  return s;
}

std::vector<double> jump_series(std::size_t flat, double after) {
  std::vector<double> d(flat, 100.0);
  d.push_back(after);
  return d;
}

}  // namespace

TEST_CASE("price csv parsing") {
  PriceSeries s = parse_price_csv("timestamp,close\n60,100\n120,101.5\n", "BTC");
  CHECK(s.asset == "BTC");
  CHECK(s.start_minute == 1);
  CHECK(s.closes == std::vector<double>{100, 101.5});

  SUBCASE("gaps are forward-filled") {
    PriceSeries g = parse_price_csv("timestamp,close\n0,10\n180,12\n", "X");
    CHECK(g.closes == std::vector<double>{10, 10, 10, 12});
  }
  SUBCASE("CRLF and trailing blank lines") {
    PriceSeries g = parse_price_csv("timestamp,close\r\n0,10\r\n60,11\r\n\r\n", "X");
    CHECK(g.closes == std::vector<double>{10, 11});
  }
}

TEST_CASE("price csv errors carry source and line") {
  auto code_of = [](std::string_view text) {
    try {
      parse_price_csv(text, "X", "x.csv");
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::ConfigError;
  };
  CHECK_THROWS_WITH_AS(parse_price_csv("timestamp,close\n0,1\n0,2\n", "X", "x.csv"), doctest::Contains("x.csv:3"),
                       Error);
  CHECK(code_of("timestamp,close\n0,1\n0,2\n") == Errc::ParseError);
  CHECK(code_of("timestamp,close\n120,1\n60,2\n") == Errc::ParseError);
  CHECK(code_of("timestamp,close\n0,abc\n") == Errc::ParseError);
  CHECK(code_of("timestamp,close\n30,1\n") == Errc::ParseError);
  CHECK(code_of("time,price\n0,1\n") == Errc::ParseError);
  CHECK(code_of("timestamp,close\n0,0\n") == Errc::NonPositivePrice);
  CHECK(code_of("timestamp,close\n0,-3\n") == Errc::NonPositivePrice);
  CHECK(code_of("timestamp,close\n") == Errc::EmptySeries);
}

TEST_CASE("market caps sidecar") {
  auto caps = parse_market_caps("asset,market_cap_usd\nBTC,5.5e11\nPERP,1e7\n");
  CHECK(caps.size() == 2);
  CHECK(caps.at("BTC") == 5.5e11);
  CHECK_THROWS_AS(parse_market_caps("asset,market_cap_usd\nBTC,lots\n"), Error);
}

TEST_CASE("max_delta on hand-checked series") {
  const PriceSeries flat = series_of(std::vector<double>(50, 100.0));
  for (std::size_t t : {1, 5, 49}) CHECK(max_delta_T(flat, 49, t, 1.25) == -25.0);

  CHECK(max_delta_T(series_of(jump_series(10, 200)), 10, 10, 1.25) == 75.0);
  CHECK(max_delta_T(series_of(jump_series(10, 124)), 10, 10, 1.25) == -1.0);

  CHECK_THROWS_AS(max_delta_T(flat, 50, 1, 1.25), Error);
  CHECK_THROWS_AS(max_delta_T(flat, 3, 4, 1.25), Error);
  CHECK_THROWS_AS(max_delta_T(flat, 3, 0, 1.25), Error);
  CHECK_THROWS_AS(max_delta_T(flat, 3, 1, 1.0), Error);
  CHECK_THROWS_AS(max_delta_series(flat, 50, 1.25), Error);
}

TEST_CASE("sliding minimum matches a direct scan") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1, 100);
  std::vector<double> d(2000);
  for (double& x : d) x = u(rng);
  for (std::size_t width : {0, 1, 3, 64, 1999}) {
    SlidingWindowMin w(width);
    for (std::size_t i = 0; i < d.size(); ++i) {
      w.push(d[i]);
      const std::size_t t = std::min(width, i);
      REQUIRE(w.min() == oracle::window_min(d, i, t));
    }
  }
}

TEST_CASE("optimized analyzer equals the brute-force oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    PriceSeries s = oracle::random_series(rng, 1500, 0.004, 0.01);
    for (double eps : {1.05, 1.25, 2.0}) {
      for (std::size_t t : {1, 10, 100, 600}) {
        REQUIRE(max_delta_series(s, t, eps) == oracle::max_delta(s.closes, t, eps));
        REQUIRE(exceedance_probability(s, t, eps) == oracle::probability(s.closes, t, eps));
      }
      for (double z : {0.5, 0.99, 0.999, 1 - 1e-5}) REQUIRE(compute_tz(s, eps, z) == oracle::tz(s.closes, eps, z));
    }
  }
}

TEST_CASE("confidence curve matches per-window probability") {
  std::mt19937_64 rng(3);
  PriceSeries s = oracle::random_series(rng, 400, 0.01, 0.03);
  std::vector<ConfidencePoint> curve = confidence_curve(s, 1.25);
  REQUIRE(curve.size() == 399);
  for (const ConfidencePoint& p : curve) {
    CHECK(p.minutes == 400 - p.window);
    CHECK(p.probability == oracle::probability(s.closes, p.window, 1.25));
    CHECK(p.failures == exceedance_count(s, p.window, 1.25));
  }
}

TEST_CASE("tz on constant and single-jump series") {
  CHECK(compute_tz(series_of(std::vector<double>(60, 100.0)), 1.25, 1 - 1e-5) == 59);

  // 100 for 30 minutes then 200: windows reaching back across the jump fail
  // once for every minute after it whose window includes a 100.
  std::vector<double> d(30, 100.0);
  d.resize(60, 200.0);
  const PriceSeries s = series_of(d);
  CHECK(compute_tz(s, 1.25, 0.9) == oracle::tz(d, 1.25, 0.9));
  CHECK(compute_tz(s, 1.25, 0.9) == 5);
  CHECK(compute_tz(s, 1.25, 0.99) == 0);
  CHECK_THROWS_AS(compute_tz(series_of({1.0}), 1.25, 0.9), Error);
  CHECK_THROWS_AS(compute_tz(s, 1.25, 1.0), Error);
}

TEST_CASE("scaling prices leaves the statistics unchanged") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    PriceSeries s = oracle::random_series(rng, 3000, 0.003, 0.005);
    PriceSeries scaled = s;
    for (double& x : scaled.closes) x *= 7.3;
    CHECK(compute_tz(s, 1.25, 0.999) == compute_tz(scaled, 1.25, 0.999));
    for (std::size_t t : {1, 60, 600}) {
      CHECK(exceedance_probability(s, t, 1.25) == exceedance_probability(scaled, t, 1.25));
    }
  }
}

TEST_CASE("exceedance probability is monotone in epsilon") {
  std::mt19937_64 rng(9);
  PriceSeries s = oracle::random_series(rng, 5000, 0.005, 0.01);
  for (std::size_t t : {1, 10, 100, 600}) {
    double prev = 0.0;
    for (double eps : {1.01, 1.05, 1.1, 1.25, 1.5, 2.0}) {
      const double p = exceedance_probability(s, t, eps);
      CHECK(p >= prev);
      prev = p;
    }
  }
}

TEST_CASE("failures over a fixed set of minutes grow with the window") {
  std::mt19937_64 rng(9);
  PriceSeries s = oracle::random_series(rng, 5000, 0.005, 0.01);
  const std::size_t widest = 1200;
  std::size_t prev = 0;
  for (std::size_t t : {1, 10, 50, 100, 300, 600, 1200}) {
    const std::vector<double> d = max_delta_series(s, t, 1.25);
    std::size_t failures = 0;
    for (std::size_t k = widest - t; k < d.size(); ++k) failures += d[k] > 0;
    CHECK(failures >= prev);
    prev = failures;
  }
}

TEST_CASE("exceedance probability can rise with the window") {
  // The only failing minute is M = 1, which leaves the range M >= T at T = 2.
  const PriceSeries s = series_of({100, 200, 120, 120, 120});
  CHECK(exceedance_probability(s, 1, 1.25) == 0.75);
  CHECK(exceedance_probability(s, 2, 1.25) == 1.0);
  CHECK(compute_tz(s, 1.25, 0.9) == 4);
  CHECK(compute_tz(s, 1.25, 0.9) == oracle::tz(s.closes, 1.25, 0.9));
}

TEST_CASE("cdf of a constant series is a single step") {
  std::vector<CdfPoint> cdf = cdf_report(series_of(std::vector<double>(100, 100.0)), 10, 1.25, 11);
  REQUIRE(cdf.size() == 11);
  CHECK(cdf.front().x == -0.25);
  CHECK(cdf.back().x == 0.0);
  for (const CdfPoint& p : cdf) CHECK(p.cumulative == 1.0);
  CHECK_THROWS_AS(cdf_report(series_of(std::vector<double>(100, 100.0)), 10, 1.25, 1), Error);
}

TEST_CASE("cdf is non-decreasing and ends at one") {
  std::mt19937_64 rng(13);
  PriceSeries s = oracle::random_series(rng, 2000, 0.01, 0.02);
  std::vector<CdfPoint> cdf = cdf_report(s, 60, 1.25, 50);
  REQUIRE(cdf.size() == 50);
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    CHECK(cdf[i].x > cdf[i - 1].x);
    CHECK(cdf[i].cumulative >= cdf[i - 1].cumulative);
  }
  CHECK(cdf.back().cumulative == 1.0);
}
