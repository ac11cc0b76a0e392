#include <gtest/gtest.h>

#include <random>

#include "btcoh/lattice.hpp"
#include "btcoh/normal_forms.hpp"
#include "oracles.hpp"

using namespace btcoh;

namespace {

oracle::QMat q_of(const IntMatrix& m) {
  oracle::QMat out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].emplace_back(m(i, j));
  return out;
}

IntMatrix diag(std::vector<long> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

// Product of random elementary operations: unimodular over Z, so the column
// span is unchanged.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (int step = 0; step < 12; ++step) {
    const std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    const long f = static_cast<long>(rng() % 7) - 3;
    for (std::size_t i = 0; i < n; ++i) u(i, a) += f * u(i, b);
  }
  return u;
}

IntMatrix random_lattice(std::mt19937_64& rng, std::size_t n, long p) {
  IntMatrix m(n, n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % (2 * p * p + 1)) - p * p;
  } while (determinant(m) == 0);
  return m;
}

}  // namespace

TEST(Canonicalize, Examples) {
  const GlobalParams g{1, 2};
  EXPECT_EQ(canonicalize(IntMatrix::identity(2), 2).rep(), IntMatrix::identity(2));
  EXPECT_EQ(standard_vertex(g).rep(), IntMatrix::identity(2));
  const auto a = canonicalize(diag({2, 1}), 2);
  const auto b = canonicalize(RatMatrix::from_rows({{1, 0}, {0, Rational(1, 2)}}), 2);
  EXPECT_EQ(a, b);
  const auto c = canonicalize(IntMatrix::from_columns({{1, 0}, {1, 2}}), 2);
  EXPECT_EQ(canonicalize(c.rep(), 2), c);
  EXPECT_THROW(canonicalize(IntMatrix::from_rows({{1, 2}, {2, 4}}), 2), std::invalid_argument);
}

TEST(Canonicalize, RepresentativeShape) {
  std::mt19937_64 rng(3);
  for (long p : {2L, 3L}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 2;
      const auto cls = canonicalize(random_lattice(rng, n, p), p);
      const IntMatrix& r = cls.rep();
      bool has_unit_entry = false;
      for (std::size_t i = 0; i < n; ++i) {
        const Integer& diag_entry = r(i, i);
        ASSERT_GT(diag_entry, 0);
        Integer x = diag_entry;
        while (x % p == 0) x /= p;
        EXPECT_EQ(x, 1);
        for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(r(i, j), 0);
        for (std::size_t j = i; j < n; ++j) has_unit_entry |= r(i, j) % p != 0;
        for (std::size_t j = i + 1; j < n; ++j) {
          EXPECT_GE(r(i, j), 0);
          EXPECT_LT(r(i, j), diag_entry);
        }
      }
      EXPECT_TRUE(has_unit_entry);
    }
  }
}

TEST(Canonicalize, InvariantUnderBasisChangeAndHomothety) {
  std::mt19937_64 rng(4);
  for (long p : {2L, 3L, 5L}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + trial % 2;
      const IntMatrix m = random_lattice(rng, n, p);
      const auto base = canonicalize(m, p);
      EXPECT_EQ(canonicalize(m * random_unimodular(rng, n), p), base);
      RatMatrix scaled = to_rational(m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= Rational(p * p, 7);
      EXPECT_EQ(canonicalize(scaled, p), base);
    }
  }
}

TEST(Distance, Examples) {
  const long p = 2;
  const auto s0 = canonicalize(IntMatrix::identity(2), p);
  EXPECT_EQ(distance(s0, s0, p), 0);
  EXPECT_EQ(distance(s0, canonicalize(diag({1, 2}), p), p), 1);
  EXPECT_EQ(distance(s0, canonicalize(diag({1, 8}), p), p), 3);
  EXPECT_EQ(distance(canonicalize(IntMatrix::identity(3), p), canonicalize(diag({1, 2, 4}), p), p), 2);
  EXPECT_THROW(distance(s0, canonicalize(IntMatrix::identity(3), p), p), std::invalid_argument);
}

TEST(Distance, FromStandardMatchesInverseValuation) {
  std::mt19937_64 rng(9);
  for (long p : {2L, 3L}) {
    const auto s0 = canonicalize(IntMatrix::identity(3), p);
    for (int trial = 0; trial < 40; ++trial) {
      const IntMatrix m = random_lattice(rng, 3, p);
      const auto cls = canonicalize(m, p);
      EXPECT_EQ(distance(s0, cls, p), oracle::distance_from_standard(q_of(m), p));
      EXPECT_EQ(distance(cls, s0, p), distance(s0, cls, p));
    }
  }
}

TEST(Distance, TriangleInequality) {
  std::mt19937_64 rng(10);
  const long p = 3;
  std::vector<LatticeClass> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(canonicalize(random_lattice(rng, 2, p), p));
  for (const auto& a : pts)
    for (const auto& b : pts)
      for (const auto& c : pts) EXPECT_LE(distance(a, c, p), distance(a, b, p) + distance(b, c, p));
}

TEST(Containment, MatchesOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix a = random_lattice(rng, 2, 2), b = random_lattice(rng, 2, 2);
    EXPECT_EQ(lattice_contains(to_rational(a), to_rational(b), 2), oracle::contains(q_of(a), q_of(b), 2));
  }
  EXPECT_TRUE(same_lattice(to_rational(IntMatrix::from_columns({{1, 0}, {1, 1}})), RatMatrix::identity(2), 5));
  EXPECT_TRUE(same_lattice(to_rational(diag({3, 1})), RatMatrix::identity(2), 2));
}

TEST(Simplex, Examples) {
  const long p = 2;
  const auto s0 = canonicalize(IntMatrix::identity(2), p);
  const auto vertex = normalize_simplex({s0}, p);
  ASSERT_TRUE(vertex);
  EXPECT_EQ(vertex->type, (std::vector<int>{2}));
  const auto edge = normalize_simplex({s0, canonicalize(diag({1, 2}), p)}, p);
  ASSERT_TRUE(edge);
  EXPECT_EQ(edge->type, (std::vector<int>{1, 1}));
  EXPECT_EQ(edge->dimension(), 1);
  EXPECT_FALSE(normalize_simplex({s0, canonicalize(diag({1, 4}), p)}, p));
  EXPECT_FALSE(normalize_simplex({s0, s0}, p));
}

TEST(Simplex, ChainIsStrictlyDecreasingAndPeriodic) {
  const long p = 2;
  const auto s = normalize_simplex({canonicalize(IntMatrix::identity(3), p), canonicalize(diag({1, 1, 2}), p),
                                    canonicalize(diag({1, 2, 2}), p)},
                                   p);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->type, (std::vector<int>{1, 1, 1}));
  for (std::size_t r = 0; r < 3; ++r) {
    const Simplex rot = s->rotated(r);
    const std::size_t k = rot.chain.size();
    for (std::size_t i = 0; i < k; ++i) {
      const oracle::QMat outer = q_of(rot.chain[i]);
      const oracle::QMat inner = i + 1 < k ? q_of(rot.chain[i + 1]) : oracle::scale(q_of(rot.chain[0]), p);
      EXPECT_TRUE(oracle::contains(outer, inner, p));
      EXPECT_FALSE(oracle::contains(inner, outer, p));
    }
  }
}

TEST(AdaptedBasis, Examples) {
  const long p = 2;
  const auto s0 = canonicalize(IntMatrix::identity(2), p);
  const auto vertex = adapted_basis(*normalize_simplex({s0}, p));
  EXPECT_EQ(vertex.f, IntMatrix::identity(2));
  ASSERT_EQ(vertex.blocks.size(), 1u);
  EXPECT_EQ(vertex.blocks[0].size(), 2u);

  const auto edge = *normalize_simplex({s0, canonicalize(diag({1, 2}), p)}, p);
  const auto basis = adapted_basis(edge);
  ASSERT_EQ(basis.blocks.size(), 2u);
  EXPECT_EQ(basis.blocks[0].size(), 1u);
  EXPECT_EQ(basis.blocks[1].size(), 1u);
  const auto rebuilt = reconstruct_chain(basis, p);
  for (std::size_t i = 0; i < edge.chain.size(); ++i)
    EXPECT_TRUE(same_lattice(to_rational(rebuilt[i]), to_rational(edge.chain[i]), p));
}

TEST(AdaptedBasis, TypeOneTwoEdgeInRankThree) {
  const long p = 2;
  const auto edge =
      normalize_simplex({canonicalize(IntMatrix::identity(3), p), canonicalize(diag({1, 2, 2}), p)}, p);
  ASSERT_TRUE(edge);
  const auto basis = adapted_basis(*edge);
  std::vector<std::size_t> sizes;
  for (const auto& b : basis.blocks) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2}));
  const auto rebuilt = reconstruct_chain(basis, p);
  for (std::size_t i = 0; i < edge->chain.size(); ++i)
    EXPECT_TRUE(same_lattice(to_rational(rebuilt[i]), to_rational(edge->chain[i]), p));
}

TEST(RelativeExponents, DiagonalPair) {
  EXPECT_EQ(relative_exponents(IntMatrix::identity(3), diag({1, 4, 2}), 2), (std::vector<std::int64_t>{0, 1, 2}));
}
