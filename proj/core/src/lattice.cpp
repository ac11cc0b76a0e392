#include "btcoh/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "btcoh/normal_forms.hpp"

namespace btcoh {

namespace {

Integer p_prime_part(Integer x, long p) {
  Integer out;
  Integer pp(p);
  mpz_remove(out.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
  return abs(out);
}

// Column Hermite form: upper triangular, positive diagonal, entries right of
// each diagonal entry reduced into [0, diagonal).
IntMatrix column_hermite(IntMatrix a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> active(a.cols());
  std::iota(active.begin(), active.end(), 0);
  IntMatrix h(n, n);
  for (std::size_t r = n; r-- > 0;) {
    for (;;) {
      std::size_t best = a.cols();
      std::size_t nonzero = 0;
      for (std::size_t c : active) {
        if (sgn(a(r, c)) == 0) continue;
        ++nonzero;
        if (best == a.cols() || cmpabs(a(r, c), a(r, best)) < 0) best = c;
      }
      if (best == a.cols()) throw std::invalid_argument("not a lattice");
      if (nonzero == 1) {
        if (sgn(a(r, best)) < 0)
          for (std::size_t i = 0; i < n; ++i) a(i, best) = -a(i, best);
        for (std::size_t i = 0; i < n; ++i) h(i, r) = a(i, best);
        active.erase(std::find(active.begin(), active.end(), best));
        break;
      }
      for (std::size_t c : active) {
        if (c == best || sgn(a(r, c)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(r, c).get_mpz_t(), a(r, best).get_mpz_t());
        for (std::size_t i = 0; i <= r; ++i) a(i, c) -= q * a(i, best);
      }
    }
  }
  for (std::size_t r = n - 1; r-- > 0;)
    for (std::size_t j = r + 1; j < n; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, r).get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t i = 0; i <= r; ++i) h(i, j) -= q * h(i, r);
    }
  return h;
}

Integer residue_mod_p(const Rational& x, long p) {
  Integer den_inv = *inverse_mod(x.get_den(), p);
  return mod_floor(x.get_num() * den_inv, p);
}

bool p_integral(const Rational& x, long p) { return x.get_den() % p != 0; }

// Rank over F_p of a list of vectors, used for greedy basis extension.
class ModPSpan {
 public:
  ModPSpan(std::size_t dim, long p) : dim_(dim), p_(p) {}

  // Adds v if it is independent of the current span; reports whether it did.
  bool insert(const std::vector<long>& v) {
    std::vector<long> w = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      long c = w[pivots_[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) w[j] = ((w[j] - c * rows_[k][j]) % p_ + p_) % p_;
    }
    std::size_t piv = 0;
    while (piv < dim_ && w[piv] == 0) ++piv;
    if (piv == dim_) return false;
    long inv = inverse_mod(Integer(w[piv]), p_)->get_si();
    for (long& x : w) x = x * inv % p_;
    for (auto& r : rows_) {
      long c = r[piv];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) r[j] = ((r[j] - c * w[j]) % p_ + p_) % p_;
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(piv);
    return true;
  }

 private:
  std::size_t dim_;
  long p_;
  std::vector<std::vector<long>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

void GlobalParams::validate() const {
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

std::vector<int> LatticeClass::diagonal_exponents(long p) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < rep_.rows(); ++i) out.push_back(static_cast<int>(valuation(rep_(i, i), p)));
  return out;
}

std::string LatticeClass::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rep_.rows(); ++i) {
    if (i) os << ';';
    for (std::size_t j = 0; j < rep_.cols(); ++j) os << (j ? "," : "") << rep_(i, j).get_str();
  }
  return os.str();
}

LatticeClass canonicalize(const RatMatrix& generators, long p) {
  const std::size_t n = generators.rows();
  if (n == 0) throw std::invalid_argument("not a lattice");
  RatMatrix g = generators;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i) den = lcm(den, g(i, j).get_den());
    Integer unit = p_prime_part(den, p);
    for (std::size_t i = 0; i < n; ++i) g(i, j) *= unit;
  }
  bool any = false;
  std::int64_t vmin = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (sgn(g(i, j)) == 0) continue;
      std::int64_t v = valuation(g(i, j), p);
      if (!any || v < vmin) vmin = v;
      any = true;
    }
  if (!any) throw std::invalid_argument("not a lattice");
  Rational scale = vmin <= 0 ? Rational(ipow(p, static_cast<unsigned>(-vmin))) : Rational(1, ipow(p, static_cast<unsigned>(vmin)));
  IntMatrix gi(n, g.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      Rational x = g(i, j) * scale;
      x.canonicalize();
      gi(i, j) = x.get_num();
    }
  std::vector<Integer> divs = elementary_divisors(gi);
  if (divs.size() < n || sgn(divs[n - 1]) == 0) throw std::invalid_argument("not a lattice");
  std::int64_t big = valuation(divs[n - 1], p);
  IntMatrix aug(n, gi.cols() + n);
  Integer pn = ipow(p, static_cast<unsigned>(big));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < gi.cols(); ++j) aug(i, j) = gi(i, j);
    aug(i, gi.cols() + i) = pn;
  }
  return LatticeClass(column_hermite(std::move(aug)));
}

LatticeClass canonicalize(const IntMatrix& generators, long p) { return canonicalize(to_rational(generators), p); }

LatticeClass standard_vertex(const GlobalParams& g) { return canonicalize(IntMatrix::identity(g.rank()), g.p); }

std::vector<std::int64_t> relative_exponents(const IntMatrix& m0, const IntMatrix& m1, long p) {
  if (m0.rows() != m1.rows() || m0.rows() != m0.cols() || m1.rows() != m1.cols())
    throw std::invalid_argument("dimension mismatch");
  RatMatrix r = inverse(to_rational(m0)) * to_rational(m1);
  Integer den = 1;
  for (const Rational& x : r.data()) den = lcm(den, x.get_den());
  IntMatrix ri(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) ri(i, j) = r(i, j).get_num() * (den / r(i, j).get_den());
  std::int64_t vden = valuation(den, p);
  std::vector<std::int64_t> e;
  for (const Integer& d : elementary_divisors(ri)) e.push_back(valuation(d, p) - vden);
  std::sort(e.begin(), e.end());
  return e;
}

int distance(const LatticeClass& a, const LatticeClass& b, long p) {
  if (a.rank() != b.rank()) throw std::invalid_argument("dimension mismatch");
  auto e = relative_exponents(a.rep(), b.rep(), p);
  return static_cast<int>(e.back() - e.front());
}

bool lattice_contains(const RatMatrix& outer, const RatMatrix& inner, long p) {
  RatMatrix c = inverse(outer) * inner;
  for (const Rational& x : c.data())
    if (!p_integral(x, p)) return false;
  return true;
}

bool same_lattice(const RatMatrix& a, const RatMatrix& b, long p) {
  return a.rows() == b.rows() && lattice_contains(a, b, p) && lattice_contains(b, a, p);
}

Simplex Simplex::rotated(std::size_t r) const {
  const std::size_t len = chain.size();
  if (r >= len) throw std::out_of_range("rotation index");
  Simplex s;
  s.p = p;
  s.vertices = vertices;
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t src = (r + i) % len;
    IntMatrix m = chain[src];
    if (r + i >= len)
      for (std::size_t a = 0; a < m.rows(); ++a)
        for (std::size_t b = 0; b < m.cols(); ++b) m(a, b) *= p;
    s.chain.push_back(std::move(m));
    s.chain_vertex.push_back(chain_vertex[src]);
    s.type.push_back(type[src]);
  }
  return s;
}

std::optional<Simplex> normalize_simplex(std::vector<LatticeClass> classes, long p) {
  if (classes.empty()) return std::nullopt;
  std::sort(classes.begin(), classes.end());
  if (std::adjacent_find(classes.begin(), classes.end()) != classes.end()) return std::nullopt;
  const std::size_t n = classes.front().rank();
  if (classes.size() > n) return std::nullopt;
  for (const auto& c : classes)
    if (c.rank() != n) throw std::invalid_argument("dimension mismatch");

  struct Member {
    std::size_t vertex;
    std::int64_t depth;
    IntMatrix basis;
  };
  std::vector<Member> members{{0, 0, classes[0].rep()}};
  for (std::size_t j = 1; j < classes.size(); ++j) {
    auto e = relative_exponents(classes[0].rep(), classes[j].rep(), p);
    if (e.back() - e.front() != 1) return std::nullopt;
    std::int64_t c = -e.front();
    IntMatrix b = classes[j].rep();
    Integer scale = ipow(p, static_cast<unsigned>(c));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < n; ++k) b(a, k) *= scale;
    std::int64_t t = std::count(e.begin(), e.end(), e.front() + 1);
    members.push_back({j, t, std::move(b)});
  }
  std::sort(members.begin(), members.end(), [](const Member& x, const Member& y) { return x.depth < y.depth; });
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i].depth == members[i - 1].depth) return std::nullopt;
    if (!lattice_contains(to_rational(members[i - 1].basis), to_rational(members[i].basis), p)) return std::nullopt;
  }
  Simplex s;
  s.p = p;
  s.vertices = std::move(classes);
  for (std::size_t i = 0; i < members.size(); ++i) {
    s.chain.push_back(members[i].basis);
    s.chain_vertex.push_back(members[i].vertex);
    std::int64_t next = i + 1 < members.size() ? members[i + 1].depth : static_cast<std::int64_t>(n);
    s.type.push_back(static_cast<int>(next - members[i].depth));
  }
  return s;
}

AdaptedBasis adapted_basis(const Simplex& s) {
  const std::size_t n = s.rank();
  const std::size_t k = s.chain.size() - 1;
  const long p = s.p;
  RatMatrix b0 = to_rational(s.chain[0]);
  RatMatrix b0_inv = inverse(b0);
  ModPSpan span(n, p);
  std::vector<std::vector<long>> chosen;
  std::vector<std::size_t> chosen_block;
  for (std::size_t i = k + 1; i-- > 0;) {
    RatMatrix coords = b0_inv * to_rational(s.chain[i]);
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<long> v(n);
      for (std::size_t r = 0; r < n; ++r) v[r] = residue_mod_p(coords(r, c), p).get_si();
      if (span.insert(v)) {
        chosen.push_back(v);
        chosen_block.push_back(i);
      }
    }
  }
  AdaptedBasis out{IntMatrix(n, n), std::vector<std::vector<std::size_t>>(k + 1)};
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      Integer acc = 0;
      for (std::size_t m = 0; m < n; ++m) acc += s.chain[0](r, m) * chosen[c][m];
      out.f(r, c) = acc;
    }
    out.blocks[chosen_block[c]].push_back(c);
  }
  return out;
}

std::vector<IntMatrix> reconstruct_chain(const AdaptedBasis& basis, long p) {
  const std::size_t n = basis.f.rows();
  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0; b < basis.blocks.size(); ++b)
    for (std::size_t c : basis.blocks[b]) block_of[c] = b;
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < basis.blocks.size(); ++i) {
    IntMatrix m = basis.f;
    for (std::size_t c = 0; c < n; ++c)
      if (block_of[c] < i)
        for (std::size_t r = 0; r < n; ++r) m(r, c) *= p;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace btcoh
