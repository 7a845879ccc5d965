#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "latdpp/errors.hpp"

namespace latdpp {

// Exact rational, used for breakpoints of piecewise-constant symbols so that
// Fourier coefficients come from closed forms instead of quadrature.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw InvalidSymbol("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    // denominators are positive after normalization
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }

  // exact difference as a rational (throws on overflow of the cross terms)
  Rational minus(const Rational& b) const {
    __int128 n = static_cast<__int128>(num) * b.den - static_cast<__int128>(b.num) * den;
    __int128 d = static_cast<__int128>(den) * b.den;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
      throw InvalidSymbol("rational difference overflows");
    }
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  // parses "num/den" or a bare integer
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        return Rational(std::stoll(s), 1);
      }
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw InvalidSymbol("cannot parse rational: " + s);
    }
  }
};

}  // namespace latdpp
