#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

double window_min(const std::vector<double>& d, std::size_t m, std::size_t t) {
  double lo = d[m];
  for (std::size_t i = m - t; i <= m; ++i) lo = std::min(lo, d[i]);
  return lo;
}

std::vector<double> max_delta(const std::vector<double>& d, std::size_t t, double eps) {
  std::vector<double> out;
  for (std::size_t m = t; m < d.size(); ++m) out.push_back(d[m] - eps * window_min(d, m, t));
  return out;
}

double probability(const std::vector<double>& d, std::size_t t, double eps) {
  std::size_t ok = 0;
  for (std::size_t m = t; m < d.size(); ++m) ok += d[m] - eps * window_min(d, m, t) <= 0 ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(d.size() - t);
}

std::size_t tz(const std::vector<double>& d, double eps, double z) {
  const std::size_t n = d.size();
  // first_fail[m]: smallest window at which minute m shows a positive
  // discrepancy, or n when it never does.
  std::vector<std::size_t> first_fail(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t j = m; j-- > 0;) {
      if (d[m] - eps * d[j] > 0) {
        first_fail[m] = m - j;
        break;
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < n; ++t) {
    std::size_t failures = 0;
    for (std::size_t m = t; m < n; ++m) failures += first_fail[m] <= t ? 1 : 0;
    double p = static_cast<double>((n - t) - failures) / static_cast<double>(n - t);
    if (p >= z) best = t;
  }
  return best;
}

secplf::PriceSeries random_series(std::mt19937_64& rng, std::size_t n, double volatility, double jump_rate) {
  std::normal_distribution<double> step(0.0, volatility);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  secplf::PriceSeries s;
  s.asset = "R";
  s.closes.reserve(n);
  double price = 10.0 + 1000.0 * u(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (u(rng) < jump_rate) price *= 0.4 + 1.2 * u(rng) + 0.0001;
    price *= std::exp(step(rng));
    s.closes.push_back(price);
  }
  return s;
}

GoldenNumbers golden_by_hand() {
  using secplf::Rational;
  GoldenNumbers f;
  const Rational k = Rational(100) * 1000;
  // 100 A in: reserves 200 A / 500 B.
  f.first_out = Rational(1000) - k / 200;
  const Rational b_after_first = k / 200;
  // 9,900 A in: reserves 10,100 A / k / 10,100 B.
  const Rational b_after_second = k / 10100;
  f.second_out = b_after_first - b_after_second;
  const Rational spot_before = Rational(100) / 1000;
  const Rational spot_after = Rational(10100) / b_after_second;
  f.theta = spot_after / spot_before;
  f.oracle_b = spot_after * 100;
  const Rational y = f.first_out;
  f.max_l = f.oracle_b * y / 5;
  // All of L is C at $1; the 100 A shortfall costs $10,000 of it.
  f.realized = f.max_l - Rational(100) * 100;
  f.predicted_g = Rational(10) * y * (f.theta / 5 - 1);
  return f;
}

}  // namespace oracle
