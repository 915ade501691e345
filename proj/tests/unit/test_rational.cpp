#include <gtest/gtest.h>

#include <cmath>

#include "inversio/errors.hpp"
#include "inversio/numeric.hpp"
#include "inversio/rational.hpp"

using inversio::BigInt;
using inversio::DomainError;
using inversio::NumericMode;
using inversio::ParseError;
using inversio::Rational;
using inversio::UnsupportedError;

TEST(Rational, CanonicalizesOnConstruction) {
  const Rational q(6, -8);
  EXPECT_EQ(q.num(), -3);
  EXPECT_EQ(q.den(), 4);
  EXPECT_EQ(q, Rational(-3, 4));
  EXPECT_EQ(q.str(), "-3/4");
  EXPECT_EQ(Rational(5).str(), "5/1");
}

TEST(Rational, ZeroDenominatorIsRejected) {
  EXPECT_THROW(Rational(1, 0), DomainError);
  EXPECT_THROW(Rational(BigInt(3), BigInt(0)), DomainError);
}

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(Rational::parse("3/5"), Rational(3, 5));
  EXPECT_EQ(Rational::parse(" -12 "), Rational(-12));
  EXPECT_EQ(Rational::parse("0.6"), Rational(3, 5));
  EXPECT_EQ(Rational::parse("1.5e-3"), Rational(3, 2000));
  EXPECT_EQ(Rational::parse("2E2"), Rational(200));
  EXPECT_EQ(Rational::parse("+.25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("999/1000"), Rational(999, 1000));
}

TEST(Rational, RejectsMalformedInput) {
  for (const char* bad : {"", "abc", "1/", "/2", "1/0", "1.2.3", "3/x", "1e", "--1", "1e999999999"}) {
    EXPECT_THROW(Rational::parse(bad), inversio::Error) << bad;
  }
  EXPECT_THROW(Rational::parse("abc"), ParseError);
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(Rational::from_double(0.5), Rational(1, 2));
  EXPECT_EQ(Rational::from_double(0.1), Rational(BigInt(3602879701896397), BigInt(1) << 55));
  EXPECT_EQ(Rational::from_double(-3.0), Rational(-3));
  EXPECT_THROW(Rational::from_double(std::nan("")), DomainError);
}

TEST(Rational, ToDoubleRoundsToNearest) {
  // 1/3 in binary: truncation and round-to-nearest differ in the last bit.
  EXPECT_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
  EXPECT_EQ(Rational(2, 3).to_double(), 2.0 / 3.0);
  EXPECT_EQ(Rational::parse("0.1").to_double(), 0.1);
}

TEST(Rational, FloorCeilAndPow) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(4).floor(), 4);
  EXPECT_EQ(Rational(4).ceil(), 4);
  EXPECT_EQ(Rational(2, 3).pow(3), Rational(8, 27));
  EXPECT_EQ(Rational(-2, 3).abs(), Rational(2, 3));
}

TEST(Rational, ArithmeticAndOrdering) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
}

TEST(Rational, LogHandlesHugeOperands) {
  const BigInt huge = BigInt(1) << 5000;
  const Rational q(huge * 3, huge);
  EXPECT_NEAR(q.log(), std::log(3.0), 1e-15);
  const Rational tiny(BigInt(1), huge);
  EXPECT_NEAR(tiny.log(), -5000.0 * std::log(2.0), 1e-9);
  EXPECT_THROW(Rational(0).log(), DomainError);
}

TEST(NumericMode, OnlyDoublePrecisionIsSupported) {
  EXPECT_TRUE(NumericMode::exact().is_exact());
  EXPECT_EQ(NumericMode::floating().float_precision(), 53);
  EXPECT_THROW(NumericMode::floating(113), UnsupportedError);
}
