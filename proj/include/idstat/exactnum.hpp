#pragma once

// Exact numbers of the form  sum_r q_r * sqrt(r)  with rational q_r and
// square-free radicands r. Amplitudes and inner products of the symmetry
// algebra live here, so identities can be checked with no rounding at all.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace idstat {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;
  Rational(long long value) : value_(value) {}  // NOLINT(implicit)
  Rational(BigInt num, BigInt den);

  static Rational parse(std::string_view text);  // "p", "-p/q"

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }
  double to_double() const;
  std::string to_string() const;

  Rational operator-() const { return Rational(-value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

 private:
  using Storage = boost::multiprecision::cpp_rational;
  explicit Rational(Storage v) : value_(std::move(v)) {}
  Storage value_{0};
};

/// Largest radicand a RadicalRational may carry. Products of N! normalizers
/// for N <= 8 stay far below this.
inline constexpr std::uint64_t kMaxRadicand = 1'000'000;

/// Splits n = square^2 * free with `free` square-free. Trial division.
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n);
bool is_square_free(std::uint64_t n);

class RadicalRational {
 public:
  using Terms = std::map<std::uint64_t, Rational>;

  RadicalRational() = default;
  RadicalRational(const Rational& q);  // NOLINT(implicit)
  RadicalRational(long long q) : RadicalRational(Rational(q)) {}  // NOLINT(implicit)

  /// q * sqrt(r); r must be a positive integer (it is reduced to square-free form).
  static RadicalRational term(const Rational& q, std::uint64_t r);
  /// Exact sqrt of a nonnegative rational, rationalized as (1/d) sqrt(r).
  static RadicalRational sqrt(const Rational& q);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Coefficient of sqrt(1); zero when absent.
  Rational rational_part() const;
  bool is_single_term() const { return terms_.size() == 1; }

  double to_double() const;
  /// "p/q*sqrt(r) + ..." ; a bare "p/q" for the r = 1 term; "0" for zero.
  std::string to_string() const;

  RadicalRational operator-() const;
  RadicalRational& operator+=(const RadicalRational& o);
  RadicalRational& operator-=(const RadicalRational& o);
  RadicalRational& operator*=(const RadicalRational& o);
  /// Only single-term divisors are supported.
  RadicalRational& operator/=(const RadicalRational& o);

  friend RadicalRational operator+(RadicalRational a, const RadicalRational& b) { return a += b; }
  friend RadicalRational operator-(RadicalRational a, const RadicalRational& b) { return a -= b; }
  friend RadicalRational operator*(RadicalRational a, const RadicalRational& b) { return a *= b; }
  friend RadicalRational operator/(RadicalRational a, const RadicalRational& b) { return a /= b; }
  friend bool operator==(const RadicalRational& a, const RadicalRational& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void add_term(std::uint64_t r, const Rational& q);
  Terms terms_;
};

// Named forms of the arithmetic, for call sites that read better as functions.
inline RadicalRational radd(const RadicalRational& a, const RadicalRational& b) { return a + b; }
inline RadicalRational rmul(const RadicalRational& a, const RadicalRational& b) { return a * b; }
inline RadicalRational rsqrt_of_rational(const Rational& q) { return RadicalRational::sqrt(q); }

// {"terms": [[r, "p/q"], ...]} sorted by r.
nlohmann::json to_json(const RadicalRational& x);
RadicalRational radical_from_json(const nlohmann::json& j);

}  // namespace idstat
