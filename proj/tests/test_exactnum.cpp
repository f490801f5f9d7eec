#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "idstat/error.hpp"
#include "idstat/exactnum.hpp"

using namespace idstat;

namespace {

// Hand-rolled generator: a few radical terms with small rational coefficients.
RadicalRational random_radical(std::mt19937_64& rng) {
  static const std::uint64_t radicands[] = {1, 2, 3, 5, 6, 7, 10, 12, 18};
  std::uniform_int_distribution<int> terms(0, 3);
  std::uniform_int_distribution<long long> num(-12, 12);
  std::uniform_int_distribution<long long> den(1, 9);
  std::uniform_int_distribution<int> pick(0, 8);
  RadicalRational x;
  for (int t = terms(rng); t > 0; --t) x += RadicalRational::term(Rational(num(rng), den(rng)), radicands[pick(rng)]);
  return x;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("6/8").to_string(), "3/4");
  EXPECT_EQ(Rational::parse("-5").to_string(), "-5");
  EXPECT_EQ(Rational::parse("4/-6"), Rational(-2, 3));
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("abc"), Error);
  EXPECT_THROW(Rational(1) / Rational(0), DivisionByZero);
}

TEST(Rational, BigValuesStayExact) {
  Rational x(1);
  for (int k = 0; k < 40; ++k) x *= Rational(1'000'000'007LL);
  for (int k = 0; k < 40; ++k) x /= Rational(1'000'000'007LL);
  EXPECT_EQ(x, Rational(1));
}

TEST(SplitSquare, SmallCases) {
  EXPECT_EQ(split_square(72), (std::pair<std::uint64_t, std::uint64_t>{6, 2}));
  EXPECT_EQ(split_square(1), (std::pair<std::uint64_t, std::uint64_t>{1, 1}));
  EXPECT_EQ(split_square(30), (std::pair<std::uint64_t, std::uint64_t>{1, 30}));
  for (std::uint64_t n = 1; n < 2000; ++n) {
    const auto [s, f] = split_square(n);
    EXPECT_EQ(s * s * f, n);
    EXPECT_TRUE(is_square_free(f)) << n;
  }
}

TEST(RadicalRational, SqrtExamples) {
  EXPECT_EQ(RadicalRational::sqrt(Rational(8)).to_string(), "2*sqrt(2)");
  EXPECT_EQ(RadicalRational::sqrt(Rational(1, 12)).to_string(), "1/6*sqrt(3)");
  EXPECT_EQ(RadicalRational::sqrt(Rational(9, 4)), RadicalRational(Rational(3, 2)));
  EXPECT_TRUE(RadicalRational::sqrt(Rational(0)).is_zero());
  EXPECT_THROW(RadicalRational::sqrt(Rational(-1)), NegativeRadicand);
}

TEST(RadicalRational, ProductOfRadicals) {
  // (1/sqrt 6) * (1/(2 sqrt 3)) = sqrt 2 / 12; float oracle alongside.
  const auto a = RadicalRational::sqrt(Rational(1, 6));
  const auto b = RadicalRational::term(Rational(1, 6), 3);
  const auto p = rmul(a, b);
  EXPECT_EQ(p, RadicalRational::term(Rational(1, 12), 2));
  EXPECT_NEAR(p.to_double(), (1.0 / std::sqrt(6.0)) * (1.0 / (2.0 * std::sqrt(3.0))), 1e-15);
  EXPECT_EQ(RadicalRational::term(1, 6) * RadicalRational::term(1, 10), RadicalRational::term(2, 15));
  EXPECT_EQ(RadicalRational::term(1, 2) * RadicalRational::term(1, 2), RadicalRational(2));
}

TEST(RadicalRational, Division) {
  const auto x = RadicalRational::term(3, 2) + RadicalRational(1);
  EXPECT_EQ(x / RadicalRational::term(1, 2), RadicalRational(3) + RadicalRational::term(Rational(1, 2), 2));
  EXPECT_THROW(x / x, InvalidInput);
  EXPECT_THROW(x / RadicalRational(), DivisionByZero);
}

TEST(RadicalRational, RadicandCap) {
  EXPECT_THROW(RadicalRational::term(1, kMaxRadicand + 1), CapacityExceeded);
  EXPECT_NO_THROW(RadicalRational::term(1, 999'983));
}

TEST(RadicalRational, RingAxiomsRandomized) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_radical(rng);
    const auto b = random_radical(rng);
    const auto c = random_radical(rng);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a - a, RadicalRational());
    ASSERT_EQ(a * RadicalRational(1), a);
    // Float shadow of the same expression.
    const double exact = (a * (b + c) - c).to_double();
    const double shadow = a.to_double() * (b.to_double() + c.to_double()) - c.to_double();
    if (std::abs(shadow) > 1e-6) ASSERT_LT(rel(exact, shadow), 1e-11);
  }
}

TEST(RadicalRational, ZeroIsCanonical) {
  const auto x = RadicalRational::term(2, 3) - RadicalRational::term(2, 3);
  EXPECT_TRUE(x.is_zero());
  EXPECT_TRUE(x.terms().empty());
  EXPECT_EQ(x.to_string(), "0");
}

TEST(RadicalRational, JsonRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_radical(rng);
    EXPECT_EQ(radical_from_json(to_json(a)), a);
  }
}
