#include <gtest/gtest.h>

#include "btcoh/matrix.hpp"
#include "btcoh/ring.hpp"

using namespace btcoh;

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(Integer(1), 3), 0);
  EXPECT_EQ(valuation(Integer(3), 3), 1);
  EXPECT_EQ(valuation(Integer(12), 2), 2);
  EXPECT_EQ(valuation(Rational(3, 8), 2), -3);
  EXPECT_THROW(valuation(Integer(0), 2), std::domain_error);
}

TEST(Valuation, UnitPartDropsEveryFactorOfP) {
  EXPECT_EQ(unit_part(Rational(24, 5), 2), Rational(3, 5));
  EXPECT_EQ(unit_part(Rational(-7, 18), 3), Rational(-7, 2));
}

TEST(Ring, ParseNames) {
  EXPECT_EQ(RingDescriptor::parse("Q"), RingDescriptor::rationals());
  EXPECT_EQ(RingDescriptor::parse("Z"), RingDescriptor::integers());
  EXPECT_EQ(RingDescriptor::parse("F3"), RingDescriptor::prime_field(3));
  EXPECT_EQ(RingDescriptor::parse("F_5"), RingDescriptor::prime_field(5));
  EXPECT_EQ(RingDescriptor::parse("Z/9"), RingDescriptor::residue_ring(9));
  EXPECT_THROW(RingDescriptor::parse("F4"), std::invalid_argument);
  EXPECT_THROW(RingDescriptor::parse("Z/1"), std::invalid_argument);
  EXPECT_THROW(RingDescriptor::parse("R"), std::invalid_argument);
}

TEST(Ring, NamesRoundTrip) {
  for (const char* name : {"Q", "Z", "F7", "Z/4"}) EXPECT_EQ(RingDescriptor::parse(RingDescriptor::parse(name).name()), RingDescriptor::parse(name));
}

TEST(Ring, ReduceAndInverse) {
  const auto f5 = RingDescriptor::prime_field(5);
  EXPECT_EQ(f5.reduce(Rational(-1)), Rational(4));
  EXPECT_EQ(f5.reduce(Rational(1, 2)), Rational(3));
  const auto z4 = RingDescriptor::residue_ring(4);
  EXPECT_THROW(z4.reduce(Rational(1, 2)), std::domain_error);
  EXPECT_FALSE(z4.inverse(Rational(2)).has_value());
  EXPECT_EQ(*z4.inverse(Rational(3)), Rational(3));
  EXPECT_THROW(RingDescriptor::integers().reduce(Rational(1, 3)), std::domain_error);
  Rational half(2, 4);
  half.canonicalize();
  EXPECT_EQ(RingDescriptor::rationals().reduce(Rational(-3, 2)), Rational(-3, 2));
  EXPECT_EQ(RingDescriptor::rationals().reduce(half), Rational(1, 2));
}

TEST(Ring, FactorizeAndPrimes) {
  const auto f = factorize(Integer(360));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], std::make_pair(Integer(2), 3u));
  EXPECT_EQ(f[1], std::make_pair(Integer(3), 2u));
  EXPECT_EQ(f[2], std::make_pair(Integer(5), 1u));
  EXPECT_TRUE(is_prime(97L));
  EXPECT_FALSE(is_prime(91L));
  EXPECT_EQ(ipow(3, 4), Integer(81));
  EXPECT_EQ(mod_floor(Integer(-7), Integer(5)), Integer(3));
}

TEST(Matrix, ProductTransposeAndShapes) {
  const auto a = IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  const auto b = a.transpose();
  const auto c = a * b;
  EXPECT_EQ(c, IntMatrix::from_rows({{14, 32}, {32, 77}}));
  EXPECT_THROW(a * a, std::invalid_argument);
  EXPECT_THROW(IntMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
  EXPECT_EQ(IntMatrix::from_columns({{1, 2}, {3, 4}}), IntMatrix::from_rows({{1, 3}, {2, 4}}));
}

TEST(Matrix, AppendRows) {
  IntMatrix m;
  m.append_row({1, 2});
  m.append_rows(IntMatrix::identity(2));
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_THROW(m.append_row({1}), std::invalid_argument);
}

TEST(Matrix, ExactMatrixReducesEntries) {
  const ExactMatrix m(RingDescriptor::residue_ring(6), IntMatrix::from_rows({{7, -1}, {12, 5}}));
  EXPECT_EQ(m.integers(), IntMatrix::from_rows({{1, 5}, {0, 5}}));
  EXPECT_THROW(to_integer(RatMatrix::from_rows({{Rational(1, 2)}})), std::domain_error);
}
