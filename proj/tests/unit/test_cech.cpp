#include <gtest/gtest.h>

#include "btcoh/arrangement.hpp"
#include "btcoh/cech.hpp"
#include "oracles.hpp"

using namespace btcoh;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kQ = RingDescriptor::rationals();

std::size_t rank_q(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return oracle::rank_q(oracle::to_q(m.to_rows()));
}

}  // namespace

TEST(Complex, ClosureAndIndex) {
  const auto c = SimplicialComplex::closure(4, {{0, 1, 2}, {2, 3}});
  EXPECT_EQ(c.dimension(), 2);
  EXPECT_EQ(c.count(0), 4u);
  EXPECT_EQ(c.count(1), 4u);
  EXPECT_EQ(c.count(2), 1u);
  EXPECT_TRUE(c.contains({1, 2}));
  EXPECT_FALSE(c.contains({0, 3}));
  EXPECT_THROW(c.index({0, 3}), std::out_of_range);
}

TEST(Cech, SingleVertex) {
  const auto y = SimplicialComplex::closure(1, {{0}});
  const auto c = build_cech(y, ConstantSystem(1), kZ);
  EXPECT_EQ(c.term_ranks, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(c.differential(0).is_zero());
  const auto r = cohomology(c);
  ASSERT_EQ(r.degrees.size(), 1u);
  EXPECT_EQ(r.degrees[0].rank, 1u);
}

TEST(Cech, IntervalWithConstantCoefficients) {
  const auto y = SimplicialComplex::closure(2, {{0, 1}});
  const auto c = build_cech(y, ConstantSystem(1), kQ);
  EXPECT_EQ(c.term_ranks, (std::vector<std::size_t>{2, 1}));
  const IntMatrix d = c.differential(0);
  ASSERT_EQ(d.rows(), 1u);
  ASSERT_EQ(d.cols(), 2u);
  EXPECT_EQ(d(0, 0) + d(0, 1), 0);
  EXPECT_EQ(abs(d(0, 0)), 1);
  const auto r = cohomology(c);
  EXPECT_EQ(r.degrees[0].rank, 1u);
  EXPECT_EQ(r.degrees[1].rank, 0u);
}

TEST(Cech, DisjointVertices) {
  const auto y = SimplicialComplex::closure(2, {{0}, {1}});
  const auto r = cohomology(build_cech(y, ConstantSystem(1), kZ));
  EXPECT_EQ(r.degrees[0].rank, 2u);
}

TEST(Cech, HollowTriangleHasOneLoop) {
  const auto y = SimplicialComplex::closure(3, {{0, 1}, {1, 2}, {0, 2}});
  for (const auto& ring : {kQ, kZ, RingDescriptor::prime_field(2), RingDescriptor::residue_ring(4)}) {
    const auto r = cohomology(build_cech(y, ConstantSystem(1), ring));
    EXPECT_EQ(r.degrees[0].rank, 1u) << ring.name();
    EXPECT_EQ(r.degrees[1].rank, 1u) << ring.name();
    EXPECT_TRUE(r.routes_agree);
  }
}

TEST(Cech, TorsionAndUniversalCoefficients) {
  // An edge whose two vertex maps are multiplication by 2: H^0 = Z, H^1 = Z/2.
  const auto y = SimplicialComplex::closure(2, {{0, 1}});
  ExplicitSystem sys({{1, 1}, {1}});
  sys.set_transition(0, 0, 1, 0, IntMatrix::from_rows({{2}}));
  sys.set_transition(0, 1, 1, 0, IntMatrix::from_rows({{2}}));
  const auto z = cohomology(build_cech(y, sys, kZ));
  EXPECT_EQ(z.degrees[0].rank, 1u);
  EXPECT_EQ(z.degrees[1].rank, 0u);
  EXPECT_EQ(z.degrees[1].torsion, (std::vector<Integer>{2}));

  const auto c4 = build_cech(y, sys, RingDescriptor::residue_ring(4));
  const auto r4 = cohomology(c4);
  EXPECT_TRUE(r4.routes_agree);
  // H^0(Z/4) = Z/4 ⊕ Tor(Z/2, Z/4) and H^1(Z/4) = Z/2.
  EXPECT_EQ(residue_cohomology(c4, 0, 4), (std::vector<Integer>{2, 4}));
  EXPECT_EQ(residue_cohomology(c4, 1, 4), (std::vector<Integer>{2}));
  EXPECT_EQ(r4.degrees[0].rank, 1u);

  const auto r3 = cohomology(build_cech(y, sys, RingDescriptor::prime_field(3)));
  EXPECT_EQ(r3.degrees[1].rank, 0u);
}

TEST(Cech, MissingTransitionNamesThePair) {
  const auto y = SimplicialComplex::closure(2, {{0, 1}});
  ExplicitSystem sys({{1, 1}, {1}});
  sys.set_transition(0, 0, 1, 0, IntMatrix::identity(1));
  try {
    build_cech(y, sys, kZ);
    FAIL() << "expected a missing transition";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("missing transition"), std::string::npos);
  }
}

TEST(Cech, NonFunctorialSystemIsRejected) {
  // Triangle where one face map disagrees: D∘D ≠ 0.
  const auto y = SimplicialComplex::closure(3, {{0, 1, 2}});
  std::vector<std::vector<std::size_t>> ranks{{1, 1, 1}, {1, 1, 1}, {1}};
  ExplicitSystem sys(ranks);
  for (std::size_t v = 0; v < 3; ++v)
    for (std::size_t e = 0; e < 3; ++e)
      if (std::count(y.simplices[1][e].begin(), y.simplices[1][e].end(), v))
        sys.set_transition(0, v, 1, e, IntMatrix::identity(1));
  for (std::size_t e = 0; e < 3; ++e) sys.set_transition(1, e, 2, 0, IntMatrix::from_rows({{e == 0 ? 2 : 1}}));
  for (std::size_t v = 0; v < 3; ++v) sys.set_transition(0, v, 2, 0, IntMatrix::identity(1));
  EXPECT_THROW(build_cech(y, sys, kZ), std::logic_error);
}

TEST(Cech, BallEulerCharacteristic) {
  const auto b = ball_complex({1, 2}, 1);
  const auto c = build_cech(SimplicialComplex::from_ball(b), ConstantSystem(1), kQ);
  const auto r = cohomology(c);
  EXPECT_EQ(r.euler_characteristic_terms(), 4 - 3);
  EXPECT_EQ(r.euler_characteristic_ranks(), 1);
}

TEST(Cech, RelabellingPreservesCohomology) {
  const auto y = SimplicialComplex::closure(4, {{0, 1, 2}, {2, 3}});
  const auto moved = relabel(y, {3, 1, 0, 2});
  const auto a = cohomology(build_cech(y, ConstantSystem(2), kZ));
  const auto b = cohomology(build_cech(moved.complex, ConstantSystem(2), kZ));
  ASSERT_EQ(a.degrees.size(), b.degrees.size());
  for (std::size_t i = 0; i < a.degrees.size(); ++i) EXPECT_EQ(a.degrees[i].rank, b.degrees[i].rank);
}

TEST(Cech, OrlikSolomonOnTheUnitBall) {
  const GlobalParams g{1, 2};
  const auto b = ball_complex(g, 1);
  const OrlikSolomonFamily family(b, enumerate_H(g, 2), ArrangementOrder::lexicographic());
  const OrlikSolomonSystem a1(family, 1);
  const auto y = SimplicialComplex::from_ball(b);
  const auto cz = build_cech(y, a1, kZ);
  const auto rq = cohomology(build_cech(y, a1, kQ));
  EXPECT_EQ(rq.degrees[1].rank, 0u);
  const std::size_t h0 = cz.term_ranks[0] - rank_q(cz.differential(0));
  EXPECT_EQ(rq.degrees[0].rank, h0);
  EXPECT_EQ(h0, 5u);
  for (long ell : {3L, 5L}) {
    const auto r = cohomology(build_cech(y, a1, RingDescriptor::prime_field(ell)));
    EXPECT_EQ(r.degrees[0].rank, h0);
    EXPECT_EQ(r.degrees[1].rank, 0u);
  }
  const IntMatrix basis = integral_h0_basis(cz);
  EXPECT_EQ(basis.cols(), h0);
  EXPECT_TRUE((cz.differential(0) * basis).is_zero());
}

TEST(Cech, SubballPullsBack) {
  const GlobalParams g{1, 3};
  const auto big = ball_complex(g, 2), small = ball_complex(g, 1);
  const auto map = subball(small, big);
  EXPECT_EQ(map.complex.count(0), small.vertices.size());
  EXPECT_EQ(map.complex.count(1), small.simplices[1].size());
  for (std::size_t i = 0; i < map.complex.count(0); ++i)
    EXPECT_EQ(big.vertices[map.origin[0][i]], small.vertices[map.complex.simplices[0][i][0]]);
  const ConstantSystem one(1);
  const PulledBackSystem pulled(one, map);
  EXPECT_EQ(cohomology(build_cech(map.complex, pulled, kZ)).degrees[0].rank, 1u);
}
