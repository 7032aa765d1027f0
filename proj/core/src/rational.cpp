#include "secplf/rational.hpp"

#include <cctype>

#include "secplf/error.hpp"

namespace secplf {
namespace {

using Integer = boost::multiprecision::mpz_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(int exponent) {
  Integer out = 1;
  for (int i = 0; i < exponent; ++i) out *= 10;
  return out;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(Errc::ParseError, "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    Integer d(std::string{den});
    if (d == 0) bad(text);
    out = Rational(Integer(std::string{num}), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) bad(text);
    Integer w = whole.empty() ? Integer(0) : Integer(std::string{whole});
    Integer f = frac.empty() ? Integer(0) : Integer(std::string{frac});
    Integer scale = pow10(static_cast<int>(frac.size()));
    out = Rational(Integer(w * scale + f), scale);
  } else {
    if (!all_digits(body)) bad(text);
    out = Rational(Integer(std::string{body}));
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& value) { return value.str(); }

std::string to_decimal(const Rational& value, int digits) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  bool negative = num < 0;
  if (negative) num = -num;
  Integer scale = pow10(digits);
  // round half away from zero
  Integer scaled = (num * scale * 2 + den) / (den * 2);
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    if (!f.empty()) out += "." + f;
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace secplf
