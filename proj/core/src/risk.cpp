#include "secplf/risk.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "secplf/error.hpp"

namespace secplf {

namespace {

// Forward-filling a gap longer than this is almost certainly a bad timestamp.
constexpr std::int64_t kMaxGapMinutes = 10'000'000;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    ++line_no;
    fn(line_no, trim(line));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

Error parse_error(std::string_view source, std::size_t line, std::string_view line_text, const std::string& what) {
  return Error(Errc::ParseError,
               std::string(source) + ":" + std::to_string(line) + ": " + what + " ('" + std::string(line_text) + "')");
}

std::pair<std::string_view, std::string_view> split_two(std::string_view line) {
  std::size_t comma = line.find(',');
  if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
    return {{}, {}};
  }
  return {trim(line.substr(0, comma)), trim(line.substr(comma + 1))};
}

std::optional<double> to_number(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 1) || !std::isfinite(epsilon)) {
    throw Error(Errc::InvalidParameter, "epsilon must be a finite number greater than 1");
  }
}

void check_window(const PriceSeries& series, std::size_t window) {
  if (window == 0) throw Error(Errc::InvalidParameter, "window T must be at least 1");
  if (series.size() <= window) {
    throw Error(Errc::SeriesTooShort, series.asset + " has " + std::to_string(series.size()) +
                                          " points, window " + std::to_string(window) + " needs more");
  }
}

}  // namespace

PriceSeries parse_price_csv(std::string_view text, std::string asset, std::string_view source) {
  PriceSeries series;
  series.asset = std::move(asset);
  bool header_seen = false;
  std::optional<std::int64_t> last_minute;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    if (!header_seen) {
      auto [a, b] = split_two(line);
      if (a != "timestamp" || b != "close") throw parse_error(source, line_no, line, "expected header timestamp,close");
      header_seen = true;
      return;
    }
    auto [ts_text, close_text] = split_two(line);
    std::int64_t ts = 0;
    auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), ts);
    if (ts_text.empty() || ec != std::errc{} || ptr != ts_text.data() + ts_text.size()) {
      throw parse_error(source, line_no, line, "timestamp is not an integer");
    }
    if (ts % 60 != 0) throw parse_error(source, line_no, line, "timestamp is not on a minute boundary");
    std::optional<double> close = to_number(close_text);
    if (!close) throw parse_error(source, line_no, line, "close is not a number");
    if (*close <= 0) {
      throw Error(Errc::NonPositivePrice, std::string(source) + ":" + std::to_string(line_no) +
                                              ": close must be positive ('" + std::string(line) + "')");
    }

    std::int64_t minute = ts / 60;
    if (last_minute) {
      if (minute == *last_minute) throw parse_error(source, line_no, line, "duplicate timestamp");
      if (minute < *last_minute) throw parse_error(source, line_no, line, "timestamp out of order");
      if (minute - *last_minute > kMaxGapMinutes) throw parse_error(source, line_no, line, "gap too large");
      double fill = series.closes.back();
      for (std::int64_t m = *last_minute + 1; m < minute; ++m) series.closes.push_back(fill);
    } else {
      series.start_minute = minute;
    }
    series.closes.push_back(*close);
    last_minute = minute;
  });

  if (!header_seen) throw Error(Errc::EmptySeries, std::string(source) + ": missing header");
  if (series.closes.empty()) throw Error(Errc::EmptySeries, std::string(source) + ": no price rows");
  return series;
}

PriceSeries ingest_csv(const std::filesystem::path& path, std::string asset) {
  return parse_price_csv(read_file(path), std::move(asset), path.string());
}

std::vector<PriceSeries> ingest_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(Errc::ParseError, dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto& p = entry.path();
    if (entry.is_regular_file() && p.extension() == ".csv" && p.filename() != "market_caps.csv") {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<PriceSeries> out;
  out.reserve(files.size());
  for (const auto& p : files) out.push_back(ingest_csv(p, p.stem().string()));
  return out;
}

std::map<std::string, double> parse_market_caps(std::string_view text, std::string_view source) {
  std::map<std::string, double> caps;
  bool header_seen = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    auto [a, b] = split_two(line);
    if (!header_seen) {
      if (a != "asset" || b != "market_cap_usd") {
        throw parse_error(source, line_no, line, "expected header asset,market_cap_usd");
      }
      header_seen = true;
      return;
    }
    std::optional<double> cap = to_number(b);
    if (a.empty() || !cap || *cap < 0) throw parse_error(source, line_no, line, "bad market cap row");
    if (!caps.emplace(std::string(a), *cap).second) throw parse_error(source, line_no, line, "duplicate asset");
  });
  return caps;
}

void SlidingWindowMin::push(double value) {
  while (!window_.empty() && window_.back().second >= value) window_.pop_back();
  window_.emplace_back(pushed_, value);
  ++pushed_;
  while (window_.front().first + width_ + 1 < pushed_) window_.pop_front();
}

double SlidingWindowMin::min() const {
  if (window_.empty()) throw Error(Errc::EmptySeries, "window is empty");
  return window_.front().second;
}

double max_delta_T(const PriceSeries& series, std::size_t minute, std::size_t window, double epsilon) {
  check_epsilon(epsilon);
  if (window == 0 || minute < window || minute >= series.size()) {
    throw Error(Errc::OutOfRange, "need 1 <= T <= M < N (T=" + std::to_string(window) + ", M=" +
                                      std::to_string(minute) + ", N=" + std::to_string(series.size()) + ")");
  }
  const auto first = series.closes.begin() + static_cast<std::ptrdiff_t>(minute - window);
  const auto last = series.closes.begin() + static_cast<std::ptrdiff_t>(minute) + 1;
  return series.closes[minute] - epsilon * *std::min_element(first, last);
}

std::vector<double> max_delta_series(const PriceSeries& series, std::size_t window, double epsilon) {
  check_epsilon(epsilon);
  check_window(series, window);
  std::vector<double> out;
  out.reserve(series.size() - window);
  SlidingWindowMin mins(window);
  for (std::size_t m = 0; m < series.size(); ++m) {
    mins.push(series.closes[m]);
    if (m >= window) out.push_back(series.closes[m] - epsilon * mins.min());
  }
  return out;
}

std::size_t exceedance_count(const PriceSeries& series, std::size_t window, double epsilon) {
  std::vector<double> deltas = max_delta_series(series, window, epsilon);
  return static_cast<std::size_t>(std::count_if(deltas.begin(), deltas.end(), [](double d) { return d > 0; }));
}

double exceedance_probability(const PriceSeries& series, std::size_t window, double epsilon) {
  std::size_t failures = exceedance_count(series, window, epsilon);
  std::size_t minutes = series.size() - window;
  return static_cast<double>(minutes - failures) / static_cast<double>(minutes);
}

std::vector<ConfidencePoint> confidence_curve(const PriceSeries& series, double epsilon) {
  check_epsilon(epsilon);
  const std::size_t n = series.size();
  if (n < 2) throw Error(Errc::SeriesTooShort, series.asset + " needs at least 2 points");

  // Minute M fails for window T exactly when some j in [M-T, M) has
  // fl(epsilon * d_j) < d_M, i.e. when T >= M - j* for the nearest such j*.
  // Keys on the stack strictly increase, and an index popped by a later one
  // with a smaller-or-equal key can never be the nearest qualifying index.
  std::vector<std::size_t> stack;
  std::vector<double> keys;
  std::vector<std::int64_t> diff(n + 1, 0);
  for (std::size_t m = 0; m < n; ++m) {
    const double d = series.closes[m];
    auto below = std::lower_bound(keys.begin(), keys.end(), d);
    if (below != keys.begin()) {
      std::size_t j = stack[static_cast<std::size_t>(below - keys.begin()) - 1];
      ++diff[m - j];
      --diff[m + 1];
    }
    const double key = epsilon * d;
    while (!keys.empty() && keys.back() >= key) {
      keys.pop_back();
      stack.pop_back();
    }
    keys.push_back(key);
    stack.push_back(m);
  }

  std::vector<ConfidencePoint> curve;
  curve.reserve(n - 1);
  std::int64_t failures = diff[0];
  for (std::size_t t = 1; t < n; ++t) {
    failures += diff[t];
    ConfidencePoint p;
    p.window = t;
    p.minutes = n - t;
    p.failures = static_cast<std::size_t>(failures);
    p.probability = static_cast<double>(p.minutes - p.failures) / static_cast<double>(p.minutes);
    curve.push_back(p);
  }
  return curve;
}

std::size_t compute_tz(const PriceSeries& series, double epsilon, double z) {
  if (!(z > 0 && z < 1)) throw Error(Errc::InvalidParameter, "z must lie in (0, 1)");
  std::vector<ConfidencePoint> curve = confidence_curve(series, epsilon);
  for (auto it = curve.rbegin(); it != curve.rend(); ++it) {
    if (it->probability >= z) return it->window;
  }
  return 0;
}

std::vector<CdfPoint> cdf_report(const PriceSeries& series, std::size_t window, double epsilon,
                                 std::size_t buckets) {
  if (buckets < 2) throw Error(Errc::InvalidParameter, "at least 2 buckets are required");
  std::vector<double> deltas = max_delta_series(series, window, epsilon);
  std::vector<double> xs(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) xs[i] = deltas[i] / series.closes[i + window];
  std::sort(xs.begin(), xs.end());

  const double lo = xs.front();
  const double hi = std::max(xs.back(), 0.0);
  std::vector<CdfPoint> out;
  out.reserve(buckets);
  for (std::size_t i = 0; i < buckets; ++i) {
    double x = i + 1 == buckets ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(buckets - 1);
    auto count = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    out.push_back({x, static_cast<double>(count) / static_cast<double>(xs.size())});
  }
  return out;
}

}  // namespace secplf
