#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace relq {

/// Exact non-negative ratio of 64-bit integers.
///
/// Metric values (selectivity, hit rates, confidences) are held as the
/// integer pair they were computed from, so report output never depends on
/// floating-point formatting. The numerator/denominator are kept as
/// constructed (not reduced) because the report prints them verbatim.
class Rational {
 public:
  constexpr Rational() = default;

  constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ <= 0 || num_ < 0) {
      throw std::invalid_argument("Rational requires num >= 0 and den > 0");
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ ==
           static_cast<__int128>(b.num_) * a.den_;
  }

  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  /// |a - b|, reduced. Denominators must stay within 64 bits after reduction.
  static Rational abs_diff(const Rational& a, const Rational& b) {
    auto wide_gcd = [](__int128 x, __int128 y) {
      while (y != 0) {
        __int128 t = x % y;
        x = y;
        y = t;
      }
      return x;
    };
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    __int128 num = lhs >= rhs ? lhs - rhs : rhs - lhs;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    __int128 g = num == 0 ? den : wide_gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || den > INT64_MAX) {
      throw std::overflow_error("Rational::abs_diff overflow");
    }
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }

  Rational clipped_to_unit() const { return *this > Rational(1, 1) ? Rational(1, 1) : *this; }

  /// "num/den" exactly as stored.
  std::string fraction() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Decimal rendering with exactly four places, rounded half to even.
  std::string fixed4() const {
    __int128 scaled = static_cast<__int128>(num_) * 10000;
    __int128 q = scaled / den_;
    __int128 r = scaled % den_;
    __int128 twice = r * 2;
    if (twice > den_ || (twice == den_ && (q & 1))) {
      ++q;
    }
    auto whole = static_cast<std::int64_t>(q / 10000);
    auto frac = static_cast<std::int64_t>(q % 10000);
    std::string digits = std::to_string(frac);
    return std::to_string(whole) + "." + std::string(4 - digits.size(), '0') + digits;
  }

  /// Parses a plain decimal in [0, 1] such as "0.05", ".5" or "1". Exact:
  /// the digits become the numerator over the matching power of ten.
  static Rational from_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty decimal");
    std::size_t i = 0;
    std::int64_t whole = 0;
    bool any_digit = false;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      whole = whole * 10 + (text[i] - '0');
      if (whole > 1000000000) throw std::invalid_argument("decimal out of range");
      any_digit = true;
      ++i;
    }
    std::int64_t num = whole;
    std::int64_t den = 1;
    if (i < text.size() && text[i] == '.') {
      ++i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        if (den > 100000000000000000LL) throw std::invalid_argument("too many decimal places");
        num = num * 10 + (text[i] - '0');
        den *= 10;
        any_digit = true;
        ++i;
      }
    }
    if (!any_digit || i != text.size()) {
      throw std::invalid_argument("malformed decimal '" + text + "'");
    }
    return Rational(num, den);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace relq
