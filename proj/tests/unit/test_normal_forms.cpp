#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "btcoh/normal_forms.hpp"
#include "oracles.hpp"

using namespace btcoh;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

oracle::QMat q_of(const IntMatrix& m) {
  oracle::QMat out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].emplace_back(m(i, j));
  return out;
}

Integer det_q(oracle::QMat a) {
  const std::size_t n = a.size();
  oracle::Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const oracle::Q f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return Integer(det);
}

// gcd of all k×k minors, the k-th determinantal divisor.
Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t i, std::size_t from) {
    if (i == k) return pick_cols(0, 0);
    for (std::size_t r = from; r < m.rows(); ++r) {
      rows[i] = r;
      pick_rows(i + 1, r + 1);
    }
  };
  pick_cols = [&](std::size_t i, std::size_t from) {
    if (i == k) {
      oracle::QMat sub(k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub[a].emplace_back(m(rows[a], cols[b]));
      Integer d = det_q(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t c = from; c < m.cols(); ++c) {
      cols[i] = c;
      pick_cols(i + 1, c + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

// Every Z/N-combination of the rows, by exhaustion.
std::set<std::vector<long>> brute_span(const IntMatrix& m, long n) {
  std::set<std::vector<long>> span;
  std::vector<long> coeff(m.rows(), 0);
  while (true) {
    std::vector<long> v(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        v[j] = oracle::mod(v[j] + coeff[i] * static_cast<long>(mpz_fdiv_ui(m(i, j).get_mpz_t(), n)), n);
    span.insert(v);
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == n) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  return span;
}

}  // namespace

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix::from_rows({{4, 0}, {0, 6}})).d, IntMatrix::from_rows({{2, 0}, {0, 12}}));
  EXPECT_TRUE(smith_normal_form(IntMatrix(2, 2)).d.is_zero());
}

TEST(Smith, TransformsAndDivisorsMatchMinors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix m = random_matrix(rng, r, c, 6);
    const auto s = smith_normal_form(m);
    EXPECT_EQ(s.u * m * s.v, s.d);
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    EXPECT_EQ(s.divisors, elementary_divisors(m));
    Integer prefix = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      prefix *= s.divisors[k - 1];
      EXPECT_EQ(prefix, determinantal_divisor(m, k)) << "k=" << k;
      if (k < std::min(r, c) && s.divisors[k] != 0) EXPECT_EQ(s.divisors[k] % s.divisors[k - 1], 0);
    }
  }
}

TEST(Rank, AgreesWithOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, 3);
    if (trial % 3 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
    EXPECT_EQ(rational_rank(m), oracle::rank_q(q_of(m)));
    for (long ell : {2L, 3L, 5L}) {
      oracle::ZMat z(r);
      for (std::size_t i = 0; i < r; ++i) z[i] = m.row(i);
      EXPECT_EQ(rank_mod(m, ell), oracle::rank_fp(z, ell));
    }
  }
}

TEST(FieldKernel, Examples) {
  const auto id = rank_and_kernel(ExactMatrix(RingDescriptor::rationals(), IntMatrix::identity(3)));
  EXPECT_EQ(id.rank, 3u);
  EXPECT_TRUE(id.kernel.empty());
  const auto f2 = rank_and_kernel(ExactMatrix(RingDescriptor::prime_field(2), IntMatrix::from_rows({{1, 1}, {1, 1}})));
  EXPECT_EQ(f2.rank, 1u);
  ASSERT_EQ(f2.kernel.size(), 1u);
  EXPECT_EQ(f2.kernel[0], (RatVector{1, 1}));
  EXPECT_EQ(rank_and_kernel(ExactMatrix(RingDescriptor::rationals(), IntMatrix(1, 4))).rank, 0u);
  EXPECT_THROW(rank_and_kernel(ExactMatrix(RingDescriptor::integers(), IntMatrix::identity(2))), std::invalid_argument);
}

TEST(FieldKernel, KernelVectorsAreAnnihilated) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix m = random_matrix(rng, 3, 5, 4);
    for (const auto& ring : {RingDescriptor::rationals(), RingDescriptor::prime_field(3)}) {
      const ExactMatrix e(ring, m);
      const auto rk = rank_and_kernel(e);
      EXPECT_EQ(rk.rank + rk.kernel.size(), 5u);
      for (const auto& v : rk.kernel)
        for (std::size_t i = 0; i < 3; ++i) {
          Rational s = 0;
          for (std::size_t j = 0; j < 5; ++j) s += e(i, j) * v[j];
          EXPECT_TRUE(ring.is_zero(s));
        }
    }
  }
}

TEST(Residue, Examples) {
  const auto id = residue_normal_form(ExactMatrix(RingDescriptor::residue_ring(4), IntMatrix::identity(2)));
  EXPECT_EQ(id.howell, IntMatrix::identity(2));
  EXPECT_EQ(id.span_size, 16);
  const auto two = residue_normal_form(ExactMatrix(RingDescriptor::residue_ring(4), IntMatrix::from_rows({{2}})));
  EXPECT_EQ(two.span_size, 2);
  EXPECT_EQ(two.invariants, (std::vector<Integer>{2}));
  const auto zero = residue_normal_form(ExactMatrix(RingDescriptor::residue_ring(4), IntMatrix::from_rows({{0}})));
  EXPECT_EQ(zero.span_size, 1);
  EXPECT_EQ(zero.howell.rows(), 0u);
}

TEST(Residue, SpanSizeAndKernelAgainstEnumeration) {
  std::mt19937_64 rng(21);
  for (long n : {4L, 6L, 8L, 9L, 12L}) {
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
      const IntMatrix m = random_matrix(rng, r, c, static_cast<int>(n));
      const auto span = brute_span(m, n);
      const IntMatrix h = howell_form(m, n);
      EXPECT_EQ(howell_span_size(h, n), Integer(static_cast<unsigned long>(span.size())));
      EXPECT_EQ(brute_span(h.rows() ? h : IntMatrix(1, c), n), span);
      const auto inv = span_invariants(m, n);
      const Integer product = std::accumulate(inv.begin(), inv.end(), Integer(1), std::multiplies<>());
      EXPECT_EQ(product, Integer(static_cast<unsigned long>(span.size())));

      // Kernel of x ↦ m x on column vectors, counted by exhaustion.
      std::size_t kernel_count = 0;
      std::vector<long> x(c, 0);
      while (true) {
        bool zero = true;
        for (std::size_t i = 0; i < r && zero; ++i) {
          long s = 0;
          for (std::size_t j = 0; j < c; ++j) s += static_cast<long>(mpz_fdiv_ui(m(i, j).get_mpz_t(), n)) * x[j];
          zero = oracle::mod(s, n) == 0;
        }
        kernel_count += zero;
        std::size_t i = 0;
        while (i < c && ++x[i] == n) x[i++] = 0;
        if (i == c) break;
      }
      const IntMatrix k = residue_kernel(m, n);
      EXPECT_EQ(brute_span(k.rows() ? k : IntMatrix(1, c), n).size(), kernel_count);
    }
  }
}

TEST(Residue, QuotientInvariants) {
  // span{(2,0),(0,4)} inside (Z/8)^2 has index 2·4: Z/2 ⊕ Z/4.
  const auto q = quotient_invariants(IntMatrix::from_rows({{2, 0}, {0, 4}}), IntMatrix::identity(2), 8);
  EXPECT_EQ(q, (std::vector<Integer>{2, 4}));
  EXPECT_EQ(primary_decomposition({Integer(12)}), (std::vector<Integer>{3, 4}));
  EXPECT_EQ(primary_decomposition({Integer(2), Integer(6)}), (std::vector<Integer>{2, 2, 3}));
}

TEST(Determinant, InverseAndSingular) {
  const auto m = RatMatrix::from_rows({{2, 1}, {1, 1}});
  EXPECT_EQ(determinant(m), 1);
  EXPECT_EQ(inverse(m) * m, RatMatrix::identity(2));
  EXPECT_THROW(inverse(RatMatrix::from_rows({{1, 2}, {2, 4}})), std::domain_error);
}
