#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "steering/errors.hpp"
#include "steering/rational.hpp"

namespace steering {
namespace {

TEST(Rational, ParsesFractionsInLowestTerms) {
  const Rational q = parse_rational("6/8");
  EXPECT_EQ(q, Rational(3, 4));
  EXPECT_EQ(q.get_num(), 3);
  EXPECT_EQ(q.get_den(), 4);
  EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
}

TEST(Rational, NegativeDenominatorIsRejected) {
  EXPECT_FALSE(is_rational_literal("1/-2"));
  EXPECT_THROW(parse_rational("1/-2"), InvariantViolation);
}

TEST(Rational, ParsesIntegers) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("+5"), Rational(5));
}

TEST(Rational, RejectsMalformedLiterals) {
  EXPECT_THROW(parse_rational("1/0"), InvariantViolation);
  EXPECT_THROW(parse_rational("0.5"), InvariantViolation);
  EXPECT_THROW(parse_rational("1/"), InvariantViolation);
  EXPECT_THROW(parse_rational("/2"), InvariantViolation);
  EXPECT_THROW(parse_rational(""), InvariantViolation);
  EXPECT_THROW(parse_rational("a/b"), InvariantViolation);
}

TEST(Rational, DecimalsParseExactly) {
  EXPECT_EQ(parse_decimal_exact("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_decimal_exact("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_decimal_exact("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_decimal_exact("1.5e-2"), Rational(3, 200));
  EXPECT_EQ(parse_decimal_exact("2E3"), Rational(2000));
  EXPECT_EQ(parse_decimal_exact(".5"), Rational(1, 2));
  EXPECT_THROW(parse_decimal_exact("1.2.3"), InvariantViolation);
  EXPECT_THROW(parse_decimal_exact("e5"), InvariantViolation);
  EXPECT_THROW(parse_decimal_exact("1e"), InvariantViolation);
}

TEST(Rational, ToStringIsCanonical) {
  EXPECT_EQ(to_string(Rational(3, 4)), "3/4");
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_EQ(to_string(Rational(-1, 8)), "-1/8");
}

TEST(Rational, ToDoubleRoundsToNearest) {
  EXPECT_EQ(to_double(Rational(1, 10)), 0.1);
  EXPECT_EQ(to_double(Rational(-1, 10)), -0.1);
  EXPECT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(Rational(2, 3)), 2.0 / 3.0);
  EXPECT_EQ(to_double(Rational(0)), 0.0);
}

TEST(Rational, ToDoubleMatchesDivisionOnRandomFractions) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int i = 0; i < 2000; ++i) {
    const long p = num(rng);
    const long q = den(rng);
    Rational r(p, q);
    r.canonicalize();
    // Both operands are exact doubles, so IEEE division is correctly rounded.
    EXPECT_EQ(to_double(r), static_cast<double>(p) / static_cast<double>(q)) << p << "/" << q;
  }
}

TEST(Rational, ExactFromDoubleRoundTrips) {
  for (double d : {0.0, 0.5, -0.75, 0.1, 1e-300, 12345.678}) {
    EXPECT_EQ(to_double(exact_from_double(d)), d);
  }
  EXPECT_EQ(exact_from_double(0.375), Rational(3, 8));
  EXPECT_THROW(exact_from_double(std::numeric_limits<double>::infinity()), InvariantViolation);
  EXPECT_THROW(exact_from_double(std::numeric_limits<double>::quiet_NaN()), InvariantViolation);
}

TEST(Rational, ParseToStringRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-500, 500);
  std::uniform_int_distribution<long> den(1, 97);
  for (int i = 0; i < 500; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
}

}  // namespace
}  // namespace steering
