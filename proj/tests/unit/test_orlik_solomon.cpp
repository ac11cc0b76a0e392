#include <gtest/gtest.h>

#include "btcoh/building.hpp"
#include "btcoh/orlik_solomon.hpp"
#include "oracles.hpp"

using namespace btcoh;

namespace {

Simplex vertex(const GlobalParams& g) { return *normalize_simplex({standard_vertex(g)}, g.p); }

Simplex edge(const GlobalParams& g) {
  IntMatrix m = IntMatrix::identity(g.rank());
  m(g.rank() - 1, g.rank() - 1) = g.p;
  return *normalize_simplex({standard_vertex(g), canonicalize(m, g.p)}, g.p);
}

OrlikSolomonAlgebra algebra(const Simplex& s, const std::vector<HyperplaneRep>& h) {
  return OrlikSolomonAlgebra(s, h, ArrangementOrder::lexicographic().ranks(h));
}

oracle::Element element_of(const Combination& c) {
  oracle::Element out;
  for (const auto& [w, coeff] : c) {
    oracle::Mask m = 0;
    int inv = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      m |= oracle::Mask{1} << w[i];
      for (std::size_t j = i + 1; j < w.size(); ++j) inv += w[i] > w[j];
    }
    oracle::add(out, m, (inv % 2 ? -1 : 1) * coeff);
  }
  return out;
}

}  // namespace

TEST(Algebra, ProjectiveLineOverF2) {
  const GlobalParams g{1, 2};
  const auto alg = algebra(vertex(g), enumerate_H(g, 1));
  EXPECT_EQ(alg.size(), 3u);
  EXPECT_EQ(alg.max_degree(), 2u);
  EXPECT_EQ(alg.special_chains(0).size(), 1u);
  EXPECT_EQ(alg.special_chains(1).size(), 3u);
  EXPECT_EQ(alg.special_chains(2).size(), 2u);
  EXPECT_EQ(alg.a_rank(0), 1u);
  EXPECT_EQ(alg.a_rank(1), 2u);
  EXPECT_TRUE(alg.is_special({}));
}

TEST(Algebra, VertexDegreeOneRankIsP) {
  for (long p : {2L, 3L, 5L}) {
    const GlobalParams g{1, p};
    EXPECT_EQ(algebra(vertex(g), enumerate_H(g, 1)).a_rank(1), static_cast<std::size_t>(p));
  }
}

TEST(Algebra, CountsMatchBruteForceQuotient) {
  for (const GlobalParams g : {GlobalParams{1, 2}, GlobalParams{1, 3}, GlobalParams{2, 2}}) {
    const auto h = enumerate_H(g, 1);
    for (const auto& s : {vertex(g), edge(g)}) {
      const auto alg = algebra(s, h);
      const int top = static_cast<int>(alg.max_degree());
      for (long ell : {0L, 5L}) {
        const auto brute = oracle::os_ranks(alg.strata().stratum, alg.strata().projection, g.p, top, ell);
        for (int k = 0; k <= top; ++k) {
          EXPECT_EQ(alg.special_chains(static_cast<std::size_t>(k)).size(), brute.tilde[static_cast<std::size_t>(k)]);
          EXPECT_EQ(alg.a_rank(static_cast<std::size_t>(k)), brute.a[static_cast<std::size_t>(k)]);
        }
      }
      const auto lib = oracle_ranks(alg.strata(), RingDescriptor::rationals(), static_cast<std::size_t>(top));
      for (int k = 0; k <= top; ++k)
        EXPECT_EQ(lib.tilde[static_cast<std::size_t>(k)], alg.special_chains(static_cast<std::size_t>(k)).size());
    }
  }
}

TEST(Straighten, SpecialWordsAreFixed) {
  const GlobalParams g{2, 2};
  const auto alg = algebra(vertex(g), enumerate_H(g, 1));
  for (std::size_t k = 0; k <= alg.max_degree(); ++k)
    for (const auto& w : alg.special_chains(k)) {
      const auto c = alg.straighten(w);
      ASSERT_EQ(c.size(), 1u);
      EXPECT_EQ(c.begin()->first, w);
      EXPECT_EQ(c.begin()->second, 1);
    }
}

TEST(Straighten, DifferenceLiesInTheIdeal) {
  const GlobalParams g{1, 3};
  const auto h = enumerate_H(g, 1);
  const auto alg = algebra(vertex(g), h);
  const int n = static_cast<int>(alg.size());
  const std::size_t k = 2;
  oracle::ZMat ideal;
  for (const auto& c : all_dependent_sets(alg.strata())) {
    if (c.size() > k + 1) continue;
    oracle::Mask cm = 0;
    for (std::size_t a : c) cm |= oracle::Mask{1} << a;
    const auto dc = oracle::d(oracle::Element{{cm, oracle::Z(1)}});
    for (auto t : oracle::masks_of_size(n, static_cast<int>(k + 1 - c.size()))) {
      auto row = oracle::wedge_mask(t, dc);
      if (!row.empty()) ideal.push_back(oracle::coords(row, n, static_cast<int>(k)));
    }
  }
  const std::size_t base = oracle::rank_q(oracle::to_q(ideal));
  for (std::size_t a = 0; a < alg.size(); ++a)
    for (std::size_t b = 0; b < alg.size(); ++b) {
      if (a == b) continue;
      auto diff = element_of(alg.straighten(Word{a, b}));
      oracle::add(diff, (oracle::Mask{1} << a) | (oracle::Mask{1} << b), a < b ? -1 : 1);
      if (diff.empty()) continue;
      auto with = ideal;
      with.push_back(oracle::coords(diff, n, static_cast<int>(k)));
      EXPECT_EQ(oracle::rank_q(oracle::to_q(with)), base) << a << "," << b;
    }
}

TEST(Straighten, AlternativeOrdersKeepCounts) {
  const GlobalParams g{2, 2};
  const auto h = enumerate_H(g, 1);
  const auto s = edge(g);
  const auto base = algebra(s, h);
  for (const auto& order : {ArrangementOrder::reverse(), ArrangementOrder::shuffled(9),
                            ArrangementOrder::reversed_coordinates()}) {
    const OrlikSolomonAlgebra other(s, h, order.ranks(h));
    for (std::size_t k = 0; k <= base.max_degree(); ++k)
      EXPECT_EQ(other.special_chains(k).size(), base.special_chains(k).size()) << order.name();
  }
}

TEST(Restriction, IdentityAndDegreeZero) {
  const GlobalParams g{1, 2};
  const auto h = enumerate_H(g, 2);
  const auto v = algebra(vertex(g), h);
  const auto e = algebra(edge(g), h);
  EXPECT_EQ(restriction_matrix(v, v, 1), IntMatrix::identity(v.a_rank(1)));
  EXPECT_EQ(restriction_matrix(e, e, 1), IntMatrix::identity(e.a_rank(1)));
  EXPECT_EQ(restriction_matrix(v, e, 0), IntMatrix::identity(1));
  const IntMatrix m = restriction_matrix(v, e, 1);
  EXPECT_EQ(m.rows(), e.a_rank(1));
  EXPECT_EQ(m.cols(), v.a_rank(1));
  EXPECT_LE(oracle::rank_fp(oracle::ZMat(m.to_rows()), 3), 2u);
}

TEST(Matrices, ShapesAndComplexProperty) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 1; k + 1 <= n; ++k) {
      const auto dk = differential_matrix(n, k), dk1 = differential_matrix(n, k + 1);
      EXPECT_TRUE((dk * dk1).is_zero());
      EXPECT_EQ(image_matrix(n, k).rows(), monomial_basis(n, k + 1).size());
    }
  EXPECT_EQ(ideal_matrix({{0, 1, 2}}, 3, 1).rows(), 0u);
  const auto rows = ideal_matrix({{0, 1, 2}}, 3, 2);
  EXPECT_EQ(rows.rows(), 1u);
  EXPECT_EQ(rows.cols(), 3u);
}

TEST(Signature, Examples) {
  const SignatureForm l(std::vector<int>{0, 0, 1, 2}, 2);
  EXPECT_EQ(l.evaluate(Word{0, 1, 2}), 0);
  EXPECT_EQ(l.evaluate(Word{0, 2, 3}), 1);
  EXPECT_EQ(l.evaluate(Word{2, 0, 3}), -1);
  EXPECT_EQ(l.evaluate(Word{3, 2, 1}), -1);
  EXPECT_THROW(l.evaluate(Word{0, 2}), std::invalid_argument);
  EXPECT_EQ(SignatureForm::evaluate_strata({1, 0}, 1), -1);
  EXPECT_EQ(SignatureForm::evaluate_strata({1, 1}, 1), 0);
}
