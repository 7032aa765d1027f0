#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace secplf {

/// Minute-resolution close prices d_0 .. d_{N-1}, gap-free, all positive.
struct PriceSeries {
  std::string asset;
  std::int64_t start_minute = 0;  ///< epoch minute of closes[0]
  std::vector<double> closes;

  std::size_t size() const noexcept { return closes.size(); }
  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

/// Parses `timestamp,close` CSV text. Timestamps are epoch seconds on minute
/// boundaries and must strictly increase; missing minutes are forward-filled
/// from the previous close. `source` prefixes error messages.
/// Errors: ParseError (with line number), NonPositivePrice, EmptySeries.
PriceSeries parse_price_csv(std::string_view text, std::string asset, std::string_view source = "<input>");
PriceSeries ingest_csv(const std::filesystem::path& path, std::string asset);

/// Every `*.csv` in `dir` except `market_caps.csv`, asset named after the
/// file stem, sorted by asset name.
std::vector<PriceSeries> ingest_directory(const std::filesystem::path& dir);

/// Sidecar `asset,market_cap_usd` table. Errors: ParseError.
std::map<std::string, double> parse_market_caps(std::string_view text, std::string_view source = "<input>");

/// Minimum over a window of the last `width` + 1 pushed values, amortised O(1)
/// per push.
class SlidingWindowMin {
 public:
  explicit SlidingWindowMin(std::size_t width) : width_(width) {}

  void push(double value);
  /// Minimum of the values pushed at positions [n - 1 - width, n - 1].
  double min() const;

 private:
  std::size_t width_;
  std::size_t pushed_ = 0;
  std::deque<std::pair<std::size_t, double>> window_;
};

/// d_M - epsilon * min(d_{M-T} .. d_M). Errors: OutOfRange unless
/// 1 <= T <= M < N; InvalidParameter unless epsilon > 1.
double max_delta_T(const PriceSeries& series, std::size_t minute, std::size_t window, double epsilon);

/// max_delta_T for every M in [T, N), in order.
/// Errors: SeriesTooShort when N <= T; InvalidParameter for T = 0 or epsilon <= 1.
std::vector<double> max_delta_series(const PriceSeries& series, std::size_t window, double epsilon);

/// Minutes M in [T, N) with max_delta_T > 0.
std::size_t exceedance_count(const PriceSeries& series, std::size_t window, double epsilon);

/// Fraction of minutes M in [T, N) with max_delta_T <= 0.
double exceedance_probability(const PriceSeries& series, std::size_t window, double epsilon);

struct ConfidencePoint {
  std::size_t window = 0;
  std::size_t minutes = 0;   ///< N - T
  std::size_t failures = 0;  ///< minutes with max_delta_T > 0
  double probability = 0;    ///< (minutes - failures) / minutes
};

/// Exact confidence for every window T in [1, N-1], in O(N log N).
std::vector<ConfidencePoint> confidence_curve(const PriceSeries& series, double epsilon);

/// Largest T in [1, N-1] whose probability is at least z; 0 when none.
/// Errors: SeriesTooShort (N < 2), InvalidParameter (z outside (0, 1)).
std::size_t compute_tz(const PriceSeries& series, double epsilon, double z);

struct CdfPoint {
  double x = 0;
  double cumulative = 0;
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

/// Empirical CDF of max_delta_T / d_M over M in [T, N), sampled at `buckets`
/// evenly spaced points spanning [min x, max(max x, 0)].
/// Errors: SeriesTooShort, InvalidParameter (buckets < 2).
std::vector<CdfPoint> cdf_report(const PriceSeries& series, std::size_t window, double epsilon, std::size_t buckets);

struct AssetRisk {
  std::string asset;
  std::size_t points = 0;
  std::optional<double> market_cap_usd;
  std::optional<std::size_t> tz;
  std::optional<std::size_t> exceedance_count;
  std::optional<double> exceedance_probability;
  std::vector<CdfPoint> cdf;

  friend bool operator==(const AssetRisk&, const AssetRisk&) = default;
};

struct RiskReport {
  double epsilon = 1.25;
  double z = 1 - 1e-5;
  std::size_t window = 600;
  std::vector<AssetRisk> assets;

  friend bool operator==(const RiskReport&, const RiskReport&) = default;
};

}  // namespace secplf
