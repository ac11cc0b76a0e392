#include "btcoh/normal_forms.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace btcoh {

namespace {

struct SmithWork {
  IntMatrix a;
  IntMatrix u;
  IntMatrix v;
  bool track = false;

  void row_swap(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (track) u.swap_rows(i, j);
  }
  void col_swap(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (track) v.swap_cols(i, j);
  }
  // row_i += q * row_j
  void row_add(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (sgn(a(j, c)) != 0) a(i, c) += q * a(j, c);
    if (track)
      for (std::size_t c = 0; c < u.cols(); ++c)
        if (sgn(u(j, c)) != 0) u(i, c) += q * u(j, c);
  }
  // col_i += q * col_j
  void col_add(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (sgn(a(r, j)) != 0) a(r, i) += q * a(r, j);
    if (track)
      for (std::size_t r = 0; r < v.rows(); ++r)
        if (sgn(v(r, j)) != 0) v(r, i) += q * v(r, j);
  }
  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    if (track)
      for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
  }
};

bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (sgn(x) == 0) continue;
      if (!found || cmpabs(x, best) < 0) {
        found = true;
        best = abs(x);
        pi = i;
        pj = j;
        if (best == 1) return true;
      }
    }
  return found;
}

void smith_reduce(SmithWork& w) {
  IntMatrix& a = w.a;
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(a, t, pi, pj)) break;
    for (;;) {
      w.row_swap(t, pi);
      w.col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (sgn(a(i, t)) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        if (sgn(q) != 0) w.row_add(i, t, -q);
        if (sgn(a(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (sgn(a(t, j)) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        if (sgn(q) != 0) w.col_add(j, t, -q);
        if (sgn(a(t, j)) != 0) clean = false;
      }
      if (clean) {
        bool divides = true;
        for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
          for (std::size_t j = t + 1; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              w.row_add(t, i, Integer(1));
              divides = false;
              break;
            }
          }
        if (divides) break;
      }
      find_pivot(a, t, pi, pj);
    }
    if (sgn(a(t, t)) < 0) w.row_negate(t);
  }
}

std::vector<Integer> diagonal(const IntMatrix& a) {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) d.push_back(a(i, i));
  return d;
}

void require_field(const RingDescriptor& ring) {
  if (!ring.is_field()) throw std::invalid_argument("field required");
}

bool small_prime_field(const RingDescriptor& ring) {
  return ring.kind() == RingKind::PrimeField && ring.modulus().fits_slong_p() && ring.modulus() < (Integer(1) << 31);
}

std::int64_t inv_mod64(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = a % m;
  if (nr < 0) nr += m;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += m;
  return t;
}

EchelonForm echelon_mod(const IntMatrix& m, std::int64_t ell) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::int64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = mod_floor(m(i, j), ell).get_si();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    std::int64_t inv = inv_mod64(a[r * cols + c], ell);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = a[r * cols + j] * inv % ell;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::int64_t f = a[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        std::int64_t x = (a[i * cols + j] - f * a[r * cols + j]) % ell;
        a[i * cols + j] = x < 0 ? x + ell : x;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  EchelonForm e{RatMatrix(rows, cols), pivots};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) e.rref(i, j) = Rational(static_cast<long>(a[i * cols + j]));
  return e;
}

EchelonForm echelon_generic(const ExactMatrix& m) {
  const RingDescriptor& ring = m.ring();
  RatMatrix a = m.entries();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    Rational inv = *ring.inverse(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = ring.reduce(a(r, j) * inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = ring.reduce(a(i, j) - f * a(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return {a, pivots};
}

// Extended gcd normalised so that g >= 0.
void gcdext(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Unit u of Z/N with u * a == gcd(a, N) (mod N).
Integer normalising_unit(const Integer& a, const Integer& n) {
  Integer g = gcd(a, n);
  Integer ng = n / g;
  Integer u = ng == 1 ? Integer(1) : *inverse_mod(a / g, ng);
  while (gcd(u, n) != 1) u += ng;
  return u;
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const Integer& x : divisors)
    if (sgn(x) != 0) ++r;
  return r;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), true};
  smith_reduce(w);
  SmithDecomposition out{std::move(w.u), std::move(w.a), std::move(w.v), {}};
  out.divisors = diagonal(out.d);
  return out;
}

std::vector<Integer> elementary_divisors(const IntMatrix& m) {
  SmithWork w{m, {}, {}, false};
  smith_reduce(w);
  return diagonal(w.a);
}

std::size_t rational_rank(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, rank);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        a(i, j) = a(rank, c) * a(i, j) - a(i, c) * a(rank, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(rank, c);
    ++rank;
  }
  return rank;
}

std::size_t rank_mod(const IntMatrix& m, long ell) { return echelon_mod(m, ell).pivots.size(); }

EchelonForm row_echelon(const ExactMatrix& m) {
  require_field(m.ring());
  if (small_prime_field(m.ring())) return echelon_mod(m.integers(), m.ring().modulus().get_si());
  return echelon_generic(m);
}

RankKernel rank_and_kernel(const ExactMatrix& m) {
  EchelonForm e = row_echelon(m);
  RankKernel out;
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector k(m.cols(), Rational(0));
    k[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k[e.pivots[r]] = m.ring().reduce(-e.rref(r, free));
    out.kernel.push_back(std::move(k));
  }
  return out;
}

std::size_t field_rank(const ExactMatrix& m) {
  require_field(m.ring());
  if (m.ring().kind() == RingKind::Rationals) {
    // Clear denominators row by row; the fraction-free path avoids mpq churn.
    IntMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Integer l = 1;
      for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
      for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    return rational_rank(a);
  }
  return row_echelon(m).pivots.size();
}

IntMatrix howell_form(const IntMatrix& m, const Integer& n) {
  const std::size_t cols = m.cols();
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVector r(cols);
    bool nonzero = false;
    for (std::size_t j = 0; j < cols; ++j) {
      r[j] = mod_floor(m(i, j), n);
      nonzero = nonzero || sgn(r[j]) != 0;
    }
    if (nonzero) rows.push_back(std::move(r));
  }
  auto reduce_row = [&](IntVector& r) {
    for (Integer& x : r) x = mod_floor(x, n);
  };
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (top == rows.size()) rows.emplace_back(cols, Integer(0));
    for (std::size_t i = top + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Integer a = rows[top][c], b = rows[i][c], g, s, t;
      gcdext(a, b, g, s, t);
      Integer ag = a / g, bg = b / g;
      IntVector& x = rows[top];
      IntVector& y = rows[i];
      for (std::size_t j = c; j < cols; ++j) {
        Integer nx = s * x[j] + t * y[j];
        Integer ny = ag * y[j] - bg * x[j];
        x[j] = std::move(nx);
        y[j] = std::move(ny);
      }
      reduce_row(x);
      reduce_row(y);
    }
    if (sgn(rows[top][c]) == 0) continue;
    Integer u = normalising_unit(rows[top][c], n);
    for (std::size_t j = c; j < cols; ++j) rows[top][j] *= u;
    reduce_row(rows[top]);
    const Integer pivot = rows[top][c];
    for (std::size_t i = 0; i < top; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), pivot.get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[top][j];
      reduce_row(rows[i]);
    }
    Integer ann = n / pivot;
    if (ann != n) {
      IntVector extra(cols);
      bool nonzero = false;
      for (std::size_t j = 0; j < cols; ++j) {
        extra[j] = mod_floor(ann * rows[top][j], n);
        nonzero = nonzero || sgn(extra[j]) != 0;
      }
      if (nonzero) rows.push_back(std::move(extra));
    }
    ++top;
  }
  IntMatrix h(0, cols);
  for (std::size_t i = 0; i < top; ++i) {
    bool nonzero = std::any_of(rows[i].begin(), rows[i].end(), [](const Integer& x) { return sgn(x) != 0; });
    if (nonzero) h.append_row(rows[i]);
  }
  return h;
}

Integer howell_span_size(const IntMatrix& h, const Integer& n) {
  Integer size = 1;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (sgn(h(i, j)) != 0) {
        size *= n / gcd(h(i, j), n);
        break;
      }
  return size;
}

std::vector<Integer> span_invariants(const IntMatrix& rows, const Integer& n) {
  IntMatrix lattice(0, rows.cols());
  lattice.append_rows(rows);
  IntMatrix scaled = IntMatrix::identity(rows.cols());
  for (std::size_t i = 0; i < rows.cols(); ++i) scaled(i, i) = n;
  lattice.append_rows(scaled);
  std::vector<Integer> out;
  for (const Integer& d : elementary_divisors(lattice))
    if (d != n) out.push_back(n / d);
  std::sort(out.begin(), out.end());
  return out;
}

ResidueForm residue_normal_form(const ExactMatrix& m) {
  if (!m.ring().is_modular()) throw std::invalid_argument("residue ring required");
  const Integer& n = m.ring().modulus();
  ResidueForm f;
  f.howell = howell_form(m.integers(), n);
  f.span_size = howell_span_size(f.howell, n);
  f.invariants = span_invariants(f.howell, n);
  return f;
}

IntMatrix residue_kernel(const IntMatrix& m, const Integer& n) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix aug(c, r + c);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug(i, j) = m(j, i);
    aug(i, r + i) = 1;
  }
  IntMatrix h = howell_form(aug, n);
  IntMatrix out(0, c);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool head_zero = true;
    for (std::size_t j = 0; j < r && head_zero; ++j) head_zero = sgn(h(i, j)) == 0;
    if (!head_zero) continue;
    IntVector k(c);
    for (std::size_t j = 0; j < c; ++j) k[j] = h(i, r + j);
    out.append_row(k);
  }
  return out;
}

std::vector<Integer> quotient_invariants(const IntMatrix& sub, const IntMatrix& super, const Integer& n) {
  const std::size_t cols = std::max(sub.cols(), super.cols());
  std::vector<Integer> out;
  for (const auto& [q, e] : factorize(n)) {
    Integer qe = ipow(q.get_si(), e);
    auto stacked_size = [&](unsigned j) {
      IntMatrix m(0, cols);
      Integer scale = ipow(q.get_si(), j);
      for (std::size_t i = 0; i < super.rows(); ++i) {
        IntVector r(cols);
        for (std::size_t c = 0; c < cols; ++c) r[c] = mod_floor(scale * super(i, c), qe);
        m.append_row(r);
      }
      if (sub.rows() > 0) {
        IntMatrix s(sub.rows(), cols);
        for (std::size_t i = 0; i < sub.rows(); ++i)
          for (std::size_t c = 0; c < cols; ++c) s(i, c) = mod_floor(sub(i, c), qe);
        m.append_rows(s);
      }
      return howell_span_size(howell_form(m, qe), qe);
    };
    std::vector<Integer> sizes;
    for (unsigned j = 0; j <= e; ++j) sizes.push_back(stacked_size(j));
    // |q^j Q| = sizes[j] / sizes[e]; count cyclic factors of order >= q^j.
    std::vector<unsigned long> at_least(e + 2, 0);
    for (unsigned j = 1; j <= e; ++j) {
      Integer ratio = sizes[j - 1] / sizes[j];
      unsigned long k = 0;
      while (ratio > 1) {
        ratio /= q;
        ++k;
      }
      at_least[j] = k;
    }
    for (unsigned j = 1; j <= e; ++j)
      for (unsigned long c = 0; c < at_least[j] - at_least[j + 1]; ++c) out.push_back(ipow(q.get_si(), j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> primary_decomposition(const std::vector<Integer>& invariants) {
  std::vector<Integer> out;
  for (const Integer& x : invariants)
    for (const auto& [q, e] : factorize(x)) out.push_back(ipow(q.get_si(), e));
  std::sort(out.begin(), out.end());
  return out;
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::size_t p = c;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) { return determinant(to_rational(m)).get_num(); }

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational f = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a(i, c)) == 0) continue;
      Rational g = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= g * a(c, j);
        inv(i, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace btcoh
