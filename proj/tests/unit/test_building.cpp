#include <gtest/gtest.h>

#include <set>

#include "btcoh/building.hpp"
#include "oracles.hpp"

using namespace btcoh;

namespace {

oracle::QMat q_of(const IntMatrix& m) {
  oracle::QMat out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].emplace_back(m(i, j));
  return out;
}

long tree_ball_size(long p, int n) {
  long total = 1, shell = p + 1;
  for (int r = 1; r <= n; ++r) {
    total += shell;
    shell *= p;
  }
  return total;
}

}  // namespace

TEST(Ball, Examples) {
  const auto b0 = ball_complex({1, 2}, 0);
  EXPECT_EQ(b0.vertices.size(), 1u);
  EXPECT_EQ(b0.simplices.size() > 1 ? b0.simplices[1].size() : 0u, 0u);
  const auto b1 = ball_complex({1, 2}, 1);
  EXPECT_EQ(b1.vertices.size(), 4u);
  EXPECT_EQ(b1.simplices[1].size(), 3u);
  EXPECT_EQ(ball_complex({1, 3}, 2).vertices.size(), 17u);
}

TEST(Ball, TreeCounts) {
  for (long p : {2L, 3L, 5L})
    for (int n = 0; n <= 3; ++n) {
      const auto b = ball_complex({1, p}, n);
      EXPECT_EQ(static_cast<long>(b.vertices.size()), tree_ball_size(p, n));
      if (n > 0) EXPECT_EQ(b.simplices[1].size(), b.vertices.size() - 1);
      EXPECT_EQ(static_cast<long>(ball_vertices({1, p}, n).size()), tree_ball_size(p, n));
    }
}

TEST(Ball, NeighbourCountsAreSubspaceCounts) {
  // Nonzero proper subspaces of F_p^3: two Gaussian binomials p^2 + p + 1.
  for (long p : {2L, 3L}) {
    const auto n = neighbours_of(canonicalize(IntMatrix::identity(3), p), p);
    EXPECT_EQ(static_cast<long>(n.size()), 2 * (p * p + p + 1));
    EXPECT_EQ(static_cast<long>(proper_subspaces(3, p).size()), 2 * (p * p + p + 1));
    EXPECT_EQ(static_cast<long>(proper_subspaces(2, p).size()), p + 1);
  }
  EXPECT_EQ(proper_subspaces(4, 2).size(), 15u + 35u + 15u);
}

TEST(Ball, NeighboursSatisfyInclusionOracle) {
  for (const GlobalParams g : {GlobalParams{1, 3}, GlobalParams{2, 2}}) {
    const auto s0 = standard_vertex(g);
    for (const auto& n : neighbours_of(s0, g.p)) {
      EXPECT_TRUE(oracle::adjacent(q_of(s0.rep()), q_of(n.rep()), g.p));
      EXPECT_EQ(distance(s0, n, g.p), 1);
    }
  }
}

TEST(Ball, SimplicesAreCliquesOfTheFlagComplex) {
  const auto b = ball_complex({2, 2}, 1);
  ASSERT_EQ(b.simplices.size(), 3u);
  EXPECT_EQ(b.vertices.size(), 15u);
  EXPECT_EQ(b.simplices[1].size(), 14u + 21u);
  EXPECT_EQ(b.simplices[2].size(), 21u);
  for (const auto& t : b.simplices[2]) {
    const auto s = b.simplex(t);
    EXPECT_EQ(s.dimension(), 2);
    EXPECT_EQ(b.simplex_index(t), static_cast<std::size_t>(&t - b.simplices[2].data()));
  }
  EXPECT_THROW(b.simplex_index({0, 1, 2, 3}), std::out_of_range);
  EXPECT_THROW(b.vertex_index(canonicalize(IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 8}}), 2)),
               std::out_of_range);
}

TEST(Ball, DepthsAreDistances) {
  const auto b = ball_complex({1, 3}, 3);
  const auto s0 = standard_vertex({1, 3});
  for (std::size_t i = 0; i < b.vertices.size(); ++i) EXPECT_EQ(b.depth[i], distance(s0, b.vertices[i], 3));
}

TEST(Ball, CapIsEnforced) {
  try {
    ball_complex({2, 3}, 3, 50);
    FAIL() << "expected the cap to trigger";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("ball too large"), std::string::npos);
  }
}

TEST(Apartment, StandardValues) {
  const GlobalParams g{1, 2};
  const auto a = standard_apartment(g);
  EXPECT_EQ(apartment_f_value(a, {0, 0}, 2), 0);
  EXPECT_EQ(apartment_f_value(a, {0, 3}, 2), 3);
  EXPECT_EQ(apartment_vertex(a, {0, 3}, 2), canonicalize(IntMatrix::from_rows({{1, 0}, {0, 8}}), 2));
  // Standard apartment in rank 3: max - min of the coordinates.
  const auto a3 = standard_apartment({2, 3});
  for (std::int64_t x = -3; x <= 3; ++x)
    for (std::int64_t y = -3; y <= 3; ++y)
      EXPECT_EQ(apartment_f_value(a3, {0, x, y}, 3), std::max<std::int64_t>({0, x, y}) - std::min<std::int64_t>({0, x, y}));
}

TEST(Apartment, PermutedBasisMatchesDistance) {
  const GlobalParams g{2, 2};
  const auto a = make_apartment(RatMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {1, 1, 1}}));
  const auto s0 = standard_vertex(g);
  for (std::int64_t x = -2; x <= 2; ++x)
    for (std::int64_t y = -2; y <= 2; ++y) {
      const std::vector<std::int64_t> v{0, x, y};
      EXPECT_EQ(apartment_f_value(a, v, 2), distance(s0, apartment_vertex(a, v, 2), 2));
    }
}

TEST(Apartment, SeededApartmentsAreReproducible) {
  const GlobalParams g{2, 3};
  const auto a = random_apartments(g, 5, 42);
  const auto b = random_apartments(g, 5, 42);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].forward, b[i].forward);
  for (const auto& ap : a) EXPECT_EQ(ap.forward * ap.backward, RatMatrix::identity(3));
}
