#include "idstat/exactnum.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "idstat/error.hpp"

namespace idstat {

Rational::Rational(BigInt num, BigInt den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  value_ = Storage(num, den);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw InvalidInput("empty integer in rational '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InvalidInput("bad rational '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') throw InvalidInput("bad rational '" + std::string(text) + "'");
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text), BigInt(1));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("rational division by zero");
  value_ /= o.value_;
  return *this;
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::to_string() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
  if (n == 0) return {0, 0};
  std::uint64_t square = 1;
  std::uint64_t free = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int exponent = 0;
    while (n % p == 0) {
      n /= p;
      ++exponent;
    }
    for (int e = 0; e < exponent / 2; ++e) square *= p;
    if (exponent % 2 == 1) free *= p;
  }
  free *= n;  // leftover prime
  return {square, free};
}

bool is_square_free(std::uint64_t n) { return n > 0 && split_square(n).first == 1; }

namespace {

void check_radicand(std::uint64_t r) {
  if (r > kMaxRadicand) {
    throw CapacityExceeded("radicand " + std::to_string(r) + " exceeds " +
                           std::to_string(kMaxRadicand));
  }
}

}  // namespace

RadicalRational::RadicalRational(const Rational& q) {
  if (!q.is_zero()) terms_.emplace(1, q);
}

RadicalRational RadicalRational::term(const Rational& q, std::uint64_t r) {
  if (r == 0) return {};
  auto [square, free] = split_square(r);
  check_radicand(free);
  RadicalRational out;
  out.add_term(free, q * Rational(static_cast<long long>(square)));
  return out;
}

RadicalRational RadicalRational::sqrt(const Rational& q) {
  if (q.sign() < 0) throw NegativeRadicand("sqrt of negative rational " + q.to_string());
  if (q.is_zero()) return {};
  // sqrt(p/d) = sqrt(p*d)/d
  const BigInt product = q.numerator() * q.denominator();
  if (product > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw CapacityExceeded("radicand too large: " + product.str());
  }
  auto [square, free] = split_square(product.convert_to<std::uint64_t>());
  check_radicand(free);
  RadicalRational out;
  out.add_term(free, Rational(BigInt(square), q.denominator()));
  return out;
}

bool RadicalRational::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational RadicalRational::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? Rational(0) : it->second;
}

double RadicalRational::to_double() const {
  double sum = 0.0;
  for (const auto& [r, q] : terms_) sum += q.to_double() * std::sqrt(static_cast<double>(r));
  return sum;
}

std::string RadicalRational::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [r, q] : terms_) {
    std::string piece = q.to_string();
    if (!first) {
      if (q.sign() < 0) {
        out += " - ";
        piece = (-q).to_string();
      } else {
        out += " + ";
      }
    }
    out += piece;
    if (r != 1) out += "*sqrt(" + std::to_string(r) + ")";
    first = false;
  }
  return out;
}

void RadicalRational::add_term(std::uint64_t r, const Rational& q) {
  if (q.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(r, q);
  if (!inserted) {
    it->second += q;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RadicalRational RadicalRational::operator-() const {
  RadicalRational out = *this;
  for (auto& [r, q] : out.terms_) q = -q;
  return out;
}

RadicalRational& RadicalRational::operator+=(const RadicalRational& o) {
  for (const auto& [r, q] : o.terms_) add_term(r, q);
  return *this;
}

RadicalRational& RadicalRational::operator-=(const RadicalRational& o) {
  for (const auto& [r, q] : o.terms_) add_term(r, -q);
  return *this;
}

RadicalRational& RadicalRational::operator*=(const RadicalRational& o) {
  RadicalRational out;
  for (const auto& [r1, q1] : terms_) {
    for (const auto& [r2, q2] : o.terms_) {
      // Both square-free: r1*r2 = g^2 * (r1/g)*(r2/g) with the cofactors coprime.
      const std::uint64_t g = std::gcd(r1, r2);
      const std::uint64_t r = (r1 / g) * (r2 / g);
      check_radicand(r);
      out.add_term(r, q1 * q2 * Rational(static_cast<long long>(g)));
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

RadicalRational& RadicalRational::operator/=(const RadicalRational& o) {
  if (o.is_zero()) throw DivisionByZero("division by exact zero");
  if (!o.is_single_term()) {
    throw InvalidInput("division by a multi-term radical is not supported");
  }
  // 1/(q sqrt(r)) = sqrt(r)/(q r)
  const auto& [r, q] = *o.terms_.begin();
  return *this *= term(Rational(1) / (q * Rational(static_cast<long long>(r))), r);
}

nlohmann::json to_json(const RadicalRational& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [r, q] : x.terms()) terms.push_back({r, q.to_string()});
  return {{"terms", terms}};
}

RadicalRational radical_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw InvalidInput("radical JSON must be {\"terms\": [[r, \"p/q\"], ...]}");
  }
  RadicalRational out;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_unsigned() || !t[1].is_string()) {
      throw InvalidInput("radical term must be [r, \"p/q\"]");
    }
    const auto r = t[0].get<std::uint64_t>();
    if (!is_square_free(r)) throw InvalidInput("radicand " + std::to_string(r) + " is not square-free");
    out += RadicalRational::term(Rational::parse(t[1].get<std::string>()), r);
  }
  return out;
}

}  // namespace idstat
