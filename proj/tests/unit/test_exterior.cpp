#include <gtest/gtest.h>

#include <random>

#include "btcoh/exterior.hpp"

using namespace btcoh;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();

ExtElement e(Word w, long c = 1) { return ExtElement::word(kZ, std::move(w), c); }

ExtElement random_element(std::mt19937_64& rng, std::size_t n, std::size_t degree) {
  ExtElement x(kZ);
  for (const auto& m : monomial_basis(n, degree))
    if (rng() % 2) x += e(m, static_cast<long>(rng() % 7) - 3);
  return x;
}

}  // namespace

TEST(Words, SortWithSign) {
  Word w{2, 0, 1};
  EXPECT_EQ(sort_with_sign(w), 1);
  EXPECT_EQ(w, (Word{0, 1, 2}));
  Word v{1, 0};
  EXPECT_EQ(sort_with_sign(v), -1);
  Word r{3, 1, 3};
  EXPECT_EQ(sort_with_sign(r), 0);
}

TEST(Differential, Examples) {
  EXPECT_EQ(differential(e({0, 1})), e({0}) - e({1}));
  EXPECT_EQ(differential(e({0, 1, 2})), e({0, 2}) - e({1, 2}) - e({0, 1}));
  EXPECT_TRUE(differential(e({})).is_zero());
  EXPECT_EQ(differential(e({4})), e({}, -1));
}

TEST(Differential, SquaresToZero) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_element(rng, 6, 1 + trial % 5);
    EXPECT_TRUE(differential(differential(x)).is_zero());
  }
}

TEST(Differential, LeibnizRule) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t a = 1 + trial % 3, b = 1 + (trial / 3) % 3;
    const auto x = random_element(rng, 7, a), y = random_element(rng, 7, b);
    const Rational sign = a % 2 ? -1 : 1;
    EXPECT_EQ(differential(wedge(x, y)), wedge(differential(x), y) + sign * wedge(x, differential(y)));
  }
}

TEST(Wedge, GradedCommutativity) {
  EXPECT_EQ(wedge(e({1}), e({0})), e({0, 1}, -1));
  EXPECT_TRUE(wedge(e({1}), e({1})).is_zero());
  EXPECT_EQ(wedge(e({0, 1}), e({2})), wedge(e({2}), e({0, 1})));
}

TEST(Wedge, ModularCoefficientsReduce) {
  const auto f2 = RingDescriptor::prime_field(2);
  auto x = ExtElement::word(f2, {0, 1}) + ExtElement::word(f2, {1, 0});
  EXPECT_TRUE(x.is_zero());
}

TEST(Basis, IndexingIsLexicographic) {
  const auto basis = monomial_basis(5, 3);
  EXPECT_EQ(basis.size(), 10u);
  for (std::size_t i = 0; i < basis.size(); ++i) EXPECT_EQ(monomial_index(basis[i], 5), i);
  EXPECT_EQ(basis.front(), (Monomial{0, 1, 2}));
  EXPECT_EQ(basis.back(), (Monomial{2, 3, 4}));
}

TEST(Basis, DifferentialTermsKeepWordOrder) {
  const auto terms = differential_terms({5, 2, 7});
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_EQ(terms[0], (std::pair<int, Word>{-1, {2, 7}}));
  EXPECT_EQ(terms[1], (std::pair<int, Word>{1, {5, 7}}));
  EXPECT_EQ(terms[2], (std::pair<int, Word>{-1, {5, 2}}));
}
