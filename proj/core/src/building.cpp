#include "btcoh/building.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "btcoh/normal_forms.hpp"
#include "btcoh/parallel.hpp"

namespace btcoh {

namespace {

Rational p_power(long p, std::int64_t e) {
  if (e >= 0) return Rational(ipow(p, static_cast<unsigned>(e)));
  return Rational(Integer(1), ipow(p, static_cast<unsigned>(-e)));
}

void too_large(std::size_t reached) {
  throw std::runtime_error("ball too large: reached " + std::to_string(reached));
}

// Visits every upper-triangular Hermite matrix with diagonal exponents in [0, n].
void for_each_hermite(std::size_t dim, long p, int n, const std::function<void(const IntMatrix&)>& visit) {
  IntMatrix h(dim, dim);
  std::vector<int> a(dim, 0);
  std::function<void(std::size_t)> choose_diag;
  std::function<void(std::size_t, std::size_t)> choose_entry = [&](std::size_t r, std::size_t c) {
    if (r == dim) {
      visit(h);
      return;
    }
    if (c == dim) {
      choose_entry(r + 1, r + 2);
      return;
    }
    Integer bound = ipow(p, static_cast<unsigned>(a[r]));
    for (Integer x = 0; x < bound; ++x) {
      h(r, c) = x;
      choose_entry(r, c + 1);
    }
    h(r, c) = 0;
  };
  choose_diag = [&](std::size_t i) {
    if (i == dim) {
      choose_entry(0, 1);
      return;
    }
    for (int e = 0; e <= n; ++e) {
      a[i] = e;
      h(i, i) = ipow(p, static_cast<unsigned>(e));
      choose_diag(i + 1);
    }
  };
  choose_diag(0);
}

}  // namespace

std::vector<std::vector<std::vector<long>>> proper_subspaces(std::size_t dim, long p) {
  std::vector<std::vector<std::vector<long>>> out;
  for (std::size_t r = 1; r < dim; ++r) {
    std::vector<bool> mask(dim, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
      std::vector<std::size_t> piv;
      for (std::size_t j = 0; j < dim; ++j)
        if (mask[j]) piv.push_back(j);
      // Free positions: (row i, column j) with j > piv[i] and j not a pivot.
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = piv[i] + 1; j < dim; ++j)
          if (!mask[j]) free.emplace_back(i, j);
      std::vector<long> digits(free.size(), 0);
      for (;;) {
        std::vector<std::vector<long>> basis(r, std::vector<long>(dim, 0));
        for (std::size_t i = 0; i < r; ++i) basis[i][piv[i]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) basis[free[f].first][free[f].second] = digits[f];
        out.push_back(std::move(basis));
        std::size_t f = 0;
        while (f < digits.size() && ++digits[f] == p) digits[f++] = 0;
        if (f == digits.size()) break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

std::vector<LatticeClass> ball_vertices(const GlobalParams& g, int n, std::size_t cap) {
  g.validate();
  if (n < 0) throw std::invalid_argument("radius must be non-negative");
  const std::size_t dim = g.rank();
  const Integer pn = ipow(g.p, static_cast<unsigned>(n));
  std::vector<LatticeClass> out;
  for_each_hermite(dim, g.p, n, [&](const IntMatrix& h) {
    bool primitive = false;
    for (const Integer& x : h.data())
      if (x % g.p != 0) primitive = true;
    if (!primitive) return;
    RatMatrix inv = inverse(to_rational(h));
    for (const Rational& x : inv.data())
      if (Rational(x * pn).get_den() != 1) return;
    out.push_back(canonicalize(h, g.p));
    if (out.size() > cap) too_large(out.size());
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LatticeClass> neighbours_of(const LatticeClass& m, long p) {
  const std::size_t dim = m.rank();
  std::vector<LatticeClass> out;
  for (const auto& basis : proper_subspaces(dim, p)) {
    IntMatrix gens(dim, basis.size() + dim);
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (std::size_t r = 0; r < dim; ++r) {
        Integer acc = 0;
        for (std::size_t k = 0; k < dim; ++k) acc += m.rep()(r, k) * basis[c][k];
        gens(r, c) = acc;
      }
    for (std::size_t c = 0; c < dim; ++c)
      for (std::size_t r = 0; r < dim; ++r) gens(r, basis.size() + c) = m.rep()(r, c) * p;
    out.push_back(canonicalize(gens, p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t BallComplex::vertex_index(const LatticeClass& v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) throw std::out_of_range("vertex not in ball");
  return static_cast<std::size_t>(it - vertices.begin());
}

bool BallComplex::contains(const LatticeClass& v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

std::size_t BallComplex::simplex_index(const VertexTuple& t) const {
  if (t.empty() || t.size() > simplices.size()) throw std::out_of_range("simplex not in ball");
  const auto& list = simplices[t.size() - 1];
  auto it = std::lower_bound(list.begin(), list.end(), t);
  if (it == list.end() || *it != t) throw std::out_of_range("simplex not in ball");
  return static_cast<std::size_t>(it - list.begin());
}

std::size_t BallComplex::simplex_count() const {
  std::size_t total = 0;
  for (const auto& s : simplices) total += s.size();
  return total;
}

Simplex BallComplex::simplex(const VertexTuple& t) const {
  std::vector<LatticeClass> classes;
  for (std::size_t v : t) classes.push_back(vertices.at(v));
  auto s = normalize_simplex(std::move(classes), params.p);
  if (!s) throw std::logic_error("ball tuple is not a simplex");
  return *s;
}

std::vector<std::size_t> BallComplex::counts() const {
  std::vector<std::size_t> out;
  for (const auto& s : simplices) out.push_back(s.size());
  return out;
}

BallComplex ball_complex(const GlobalParams& g, int n, std::size_t cap, std::size_t workers) {
  BallComplex b;
  b.params = g;
  b.radius = n;
  b.vertices = ball_vertices(g, n, cap);
  const std::size_t nv = b.vertices.size();
  const LatticeClass s0 = standard_vertex(g);
  b.depth.resize(nv);
  b.neighbours.resize(nv);
  parallel_for(nv, workers, [&](std::size_t i) {
    b.depth[i] = distance(s0, b.vertices[i], g.p);
    if (n == 0) return;
    for (const auto& w : neighbours_of(b.vertices[i], g.p)) {
      auto it = std::lower_bound(b.vertices.begin(), b.vertices.end(), w);
      if (it != b.vertices.end() && *it == w) b.neighbours[i].push_back(static_cast<std::size_t>(it - b.vertices.begin()));
    }
    std::sort(b.neighbours[i].begin(), b.neighbours[i].end());
  });

  std::vector<std::set<VertexTuple>> found(g.rank());
  std::size_t total = 0;
  auto record = [&](const VertexTuple& t) {
    if (found[t.size() - 1].insert(t).second && ++total > cap) too_large(total);
  };
  auto adjacent = [&](std::size_t u, std::size_t v) {
    return std::binary_search(b.neighbours[u].begin(), b.neighbours[u].end(), v);
  };
  for (std::size_t v = 0; v < nv; ++v) record({v});
  std::function<void(VertexTuple&, const std::vector<std::size_t>&)> grow = [&](VertexTuple& clique,
                                                                               const std::vector<std::size_t>& cands) {
    VertexTuple sorted = clique;
    std::sort(sorted.begin(), sorted.end());
    // Every subset of a clique is a clique, hence a face.
    const std::size_t m = sorted.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      VertexTuple face;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t{1} << i)) face.push_back(sorted[i]);
      record(face);
    }
    if (clique.size() == g.rank()) return;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      std::vector<std::size_t> next;
      for (std::size_t j = i + 1; j < cands.size(); ++j)
        if (adjacent(cands[i], cands[j])) next.push_back(cands[j]);
      clique.push_back(cands[i]);
      grow(clique, next);
      clique.pop_back();
    }
  };
  if (n >= 1)
    for (std::size_t c = 0; c < nv; ++c) {
      if (b.depth[c] > n - 1) continue;
      VertexTuple clique{c};
      grow(clique, b.neighbours[c]);
    }
  for (auto& level : found) {
    if (level.empty()) break;
    b.simplices.emplace_back(level.begin(), level.end());
  }
  return b;
}

Apartment make_apartment(const RatMatrix& forward) {
  if (forward.rows() != forward.cols() || sgn(determinant(forward)) == 0)
    throw std::invalid_argument("apartment basis must be invertible");
  return {forward, inverse(forward)};
}

Apartment standard_apartment(const GlobalParams& g) { return make_apartment(RatMatrix::identity(g.rank())); }

std::vector<Apartment> random_apartments(const GlobalParams& g, std::size_t count, std::uint64_t seed) {
  g.validate();
  std::vector<Apartment> out{standard_apartment(g)};
  std::mt19937_64 rng(seed);
  const long bound = ipow(g.p, 3).get_si();
  const std::uint64_t span = static_cast<std::uint64_t>(2 * bound + 1);
  const std::size_t dim = g.rank();
  std::size_t attempts = 0;
  while (out.size() < count + 1) {
    if (++attempts > 1000000) throw std::runtime_error("could not sample apartments");
    IntMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = static_cast<long>(rng() % span) - bound;
    Integer det = determinant(m);
    if (sgn(det) == 0) continue;
    Integer rest;
    Integer pp(g.p);
    mpz_remove(rest.get_mpz_t(), det.get_mpz_t(), pp.get_mpz_t());
    if (abs(rest) != 1) continue;
    out.push_back(make_apartment(to_rational(m)));
  }
  return out;
}

std::int64_t apartment_f_value(const Apartment& a, const std::vector<std::int64_t>& x, long p) {
  const std::size_t dim = a.forward.rows();
  if (x.size() != dim) throw std::invalid_argument("coordinate vector has wrong length");
  std::vector<std::int64_t> y(dim);
  for (std::size_t i = 0; i < dim; ++i) y[i] = x[i] - x[0];
  bool have_max = false, have_min = false;
  std::int64_t hi = 0, lo = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(a.backward(i, j)) != 0) {
        std::int64_t v = y[j] - valuation(a.backward(i, j), p);
        if (!have_max || v > hi) hi = v;
        have_max = true;
      }
      if (sgn(a.forward(i, j)) != 0) {
        std::int64_t v = valuation(a.forward(i, j), p) + y[i];
        if (!have_min || v < lo) lo = v;
        have_min = true;
      }
    }
  return hi - lo;
}

LatticeClass apartment_vertex(const Apartment& a, const std::vector<std::int64_t>& x, long p) {
  const std::size_t dim = a.forward.rows();
  RatMatrix gens(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Rational scale = p_power(p, x.at(i));
    for (std::size_t r = 0; r < dim; ++r) gens(r, i) = a.forward(i, r) * scale;
  }
  return canonicalize(gens, p);
}

}  // namespace btcoh
