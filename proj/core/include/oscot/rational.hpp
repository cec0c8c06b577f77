#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "oscot/errors.hpp"

namespace oscot {

/// Arbitrary-precision rational, always kept canonical (reduced fraction,
/// positive denominator). Every scalar in the library is one of these;
/// nothing is ever rounded.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// num/den with any sign of den (the Rat(n, d) constructor wants d > 0).
inline Rat make_rat(BigInt num, BigInt den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(std::move(num), std::move(den));
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

/// Largest integer n with n <= x.
inline BigInt rat_floor(const Rat& x) {
  BigInt q = numerator(x) / denominator(x);
  if (numerator(x) < 0 && q * denominator(x) != numerator(x)) --q;
  return q;
}

/// Parses "p/q", a plain integer, or a finite decimal ("-1.25"), exactly.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rat& x);

/// Closest double; only used for plotting and progress output.
inline double to_double(const Rat& x) { return x.convert_to<double>(); }

// --- implementation -------------------------------------------------------

namespace detail {

/// Signed decimal digit string -> integer; no octal/hex surprises.
inline std::optional<BigInt> parse_int(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
    return std::nullopt;
  BigInt value = 0;
  for (char c : s) value = value * 10 + (c - '0');
  return negative ? BigInt(-value) : value;
}

}  // namespace detail

inline Rat parse_rat(std::string_view text) {
  auto fail = [&]() -> void { throw ParseError("bad rational: '" + std::string(text) + "'"); };

  size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto n = detail::parse_int(text.substr(0, slash));
    auto d = detail::parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) fail();
    return make_rat(*n, *d);
  }

  size_t dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    auto w = whole.empty() ? std::optional<BigInt>(BigInt(0)) : detail::parse_int(whole);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos) fail();
    auto f = detail::parse_int(frac);
    if (!w || !f) fail();
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = *w * scale + *f;
    if (negative) num = -num;
    return make_rat(num, scale);
  }

  auto n = detail::parse_int(text);
  if (!n) fail();
  return Rat(*n);
}

inline std::string to_string(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) {
    s += '/';
    s += denominator(x).str();
  }
  return s;
}

}  // namespace oscot
