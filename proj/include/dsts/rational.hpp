#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dsts {

/// Exact rational number over 64-bit integers.
///
/// Intermediate products are computed in 128 bits; a result that does not fit
/// back into 64 bits after normalization throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational& operator+=(const Rational& o) {
    const __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    const __int128 d = static_cast<__int128>(den_) * o.den_;
    assign128(n, d);
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    assign128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    assign128(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  /// Parses "7", "-3/4", "1.25", "2.5e-3".
  static Rational parse(std::string_view text);

 private:
  void assign(std::int64_t num, std::int64_t den) { assign128(num, den); }
  void assign128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("rational overflow");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = 0;
    std::int64_t d = 0;
    auto [p1, e1] = std::from_chars(text.data(), text.data() + slash, n);
    auto [p2, e2] = std::from_chars(text.data() + slash + 1, text.data() + text.size(), d);
    if (e1 != std::errc{} || p1 != text.data() + slash || e2 != std::errc{} ||
        p2 != text.data() + text.size() || d == 0)
      return fail();
    return {n, d};
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  __int128 mantissa = 0;
  int scale = 0;
  bool digits = false;
  bool dot = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (mantissa > INT64_MAX) return fail();
      digits = true;
      if (dot) --scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) return fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    int exponent = 0;
    const char* first = text.data() + pos + 1;
    if (first < text.data() + text.size() && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, text.data() + text.size(), exponent);
    if (ec != std::errc{} || p != text.data() + text.size()) return fail();
    scale += exponent;
  }
  Rational result(static_cast<std::int64_t>(negative ? -mantissa : mantissa));
  const Rational ten(10);
  for (; scale > 0; --scale) result *= ten;
  for (; scale < 0; ++scale) result /= ten;
  return result;
}

/// Decimal text without exponent. Terminating fractions print exactly; others
/// print the shortest round-trip fixed-notation double.
inline std::string to_decimal(const Rational& value) {
  if (value.is_integer()) return std::to_string(value.num());
  std::int64_t den = value.den();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value.to_double(), std::chars_format::fixed);
    return ec == std::errc{} ? std::string(buf, end) : std::to_string(value.to_double());
  }
  const int digits = std::max(twos, fives);
  // value = num / (2^twos 5^fives) = num * 2^(digits-twos) * 5^(digits-fives) / 10^digits
  __int128 scaled = value.num();
  for (int k = twos; k < digits; ++k) scaled *= 2;
  for (int k = fives; k < digits; ++k) scaled *= 5;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string text;
  for (int k = 0; k < digits || scaled > 0; ++k) {
    text.insert(text.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
    if (k + 1 == digits) text.insert(text.begin(), '.');
  }
  if (text.front() == '.') text.insert(text.begin(), '0');
  if (negative) text.insert(text.begin(), '-');
  return text;
}

inline std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << to_decimal(value);
}

}  // namespace dsts
