#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "mapcone/errors.hpp"

namespace mapcone {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Prints in lowest terms as "p" or "p/q" with q > 1, "-" prefix on the
/// numerator. This is the exact scalar format used by all serializers.
inline std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

inline std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '-') {
    neg = true;
    ++pos;
  }
  std::size_t num_begin = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == num_begin) return std::nullopt;
  BigInt num(std::string(s.substr(num_begin, pos - num_begin)));
  BigInt den = 1;
  if (pos < s.size()) {
    if (s[pos] != '/') return std::nullopt;
    ++pos;
    std::size_t den_begin = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == den_begin || pos != s.size()) return std::nullopt;
    den = BigInt(std::string(s.substr(den_begin, pos - den_begin)));
    if (den == 0) return std::nullopt;
  }
  Rational r(num, den);
  if (neg) r = -r;
  return r;
}

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt b = 1;
  for (int i = 0; i < k; ++i) {
    b *= n - i;
    b /= i + 1;
  }
  return b;
}

}  // namespace mapcone
