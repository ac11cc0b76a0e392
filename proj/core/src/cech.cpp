#include "btcoh/cech.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "btcoh/normal_forms.hpp"
#include "btcoh/parallel.hpp"

namespace btcoh {

namespace {

std::string tuple_text(const VertexTuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

std::size_t count_equal(const std::vector<Integer>& xs, const Integer& v) {
  return static_cast<std::size_t>(std::count(xs.begin(), xs.end(), v));
}

// Splits elementary divisors over Z/m into free summands and the rest.
DegreeCohomology split_residue(std::vector<Integer> divisors, const Integer& m) {
  DegreeCohomology h;
  auto parts = factorize(m);
  std::size_t free = parts.empty() ? 0 : divisors.size();
  for (const auto& [q, e] : parts) free = std::min(free, count_equal(divisors, ipow(q.get_si(), e)));
  h.rank = free;
  for (const auto& [q, e] : parts) {
    Integer full = ipow(q.get_si(), e);
    for (std::size_t i = 0; i < free; ++i) divisors.erase(std::find(divisors.begin(), divisors.end(), full));
  }
  h.torsion = std::move(divisors);
  return h;
}

IntMatrix columns_as_rows(const IntMatrix& m) { return m.transpose(); }

}  // namespace

SimplicialComplex SimplicialComplex::from_ball(const BallComplex& b) {
  SimplicialComplex c;
  c.vertex_count = b.vertices.size();
  c.simplices = b.simplices;
  return c;
}

SimplicialComplex SimplicialComplex::closure(std::size_t vertex_count, const std::vector<VertexTuple>& generators) {
  std::vector<std::set<VertexTuple>> faces;
  for (VertexTuple g : generators) {
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end()) throw std::invalid_argument("repeated vertex in simplex");
    for (std::size_t v : g)
      if (v >= vertex_count) throw std::out_of_range("vertex out of range");
    const std::size_t n = g.size();
    if (n == 0) continue;
    if (faces.size() < n) faces.resize(n);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      VertexTuple f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) f.push_back(g[i]);
      faces[f.size() - 1].insert(std::move(f));
    }
  }
  SimplicialComplex c;
  c.vertex_count = vertex_count;
  for (auto& s : faces) c.simplices.emplace_back(s.begin(), s.end());
  return c;
}

std::size_t SimplicialComplex::index(const VertexTuple& t) const {
  if (t.empty() || t.size() > simplices.size()) throw std::out_of_range("not a simplex: " + tuple_text(t));
  const auto& list = simplices[t.size() - 1];
  auto it = std::lower_bound(list.begin(), list.end(), t);
  if (it == list.end() || *it != t) throw std::out_of_range("not a simplex: " + tuple_text(t));
  return static_cast<std::size_t>(it - list.begin());
}

bool SimplicialComplex::contains(const VertexTuple& t) const {
  if (t.empty() || t.size() > simplices.size()) return false;
  return std::binary_search(simplices[t.size() - 1].begin(), simplices[t.size() - 1].end(), t);
}

ComplexMap relabel(const SimplicialComplex& c, const std::vector<std::size_t>& perm) {
  if (perm.size() != c.vertex_count) throw std::invalid_argument("permutation size mismatch");
  ComplexMap out;
  out.complex.vertex_count = c.vertex_count;
  for (const auto& list : c.simplices) {
    std::vector<std::pair<VertexTuple, std::size_t>> moved;
    moved.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      VertexTuple t;
      for (std::size_t v : list[i]) t.push_back(perm.at(v));
      std::sort(t.begin(), t.end());
      moved.emplace_back(std::move(t), i);
    }
    std::sort(moved.begin(), moved.end());
    auto& tuples = out.complex.simplices.emplace_back();
    auto& origin = out.origin.emplace_back();
    for (auto& [t, i] : moved) {
      tuples.push_back(std::move(t));
      origin.push_back(i);
    }
  }
  return out;
}

ComplexMap subball(const BallComplex& small, const BallComplex& big) {
  ComplexMap out;
  out.complex = SimplicialComplex::from_ball(small);
  std::vector<std::size_t> where(small.vertices.size());
  for (std::size_t i = 0; i < where.size(); ++i) where[i] = big.vertex_index(small.vertices[i]);
  for (const auto& list : small.simplices) {
    auto& origin = out.origin.emplace_back();
    for (const auto& t : list) {
      VertexTuple u;
      for (std::size_t v : t) u.push_back(where[v]);
      origin.push_back(big.simplex_index(u));
    }
  }
  return out;
}

void ExplicitSystem::set_transition(std::size_t face_dim, std::size_t face, std::size_t dim, std::size_t index,
                                    IntMatrix m) {
  maps_[{face_dim, face, dim, index}] = std::move(m);
}

std::optional<IntMatrix> ExplicitSystem::transition(std::size_t face_dim, std::size_t face, std::size_t dim,
                                                    std::size_t index) const {
  if (face_dim == dim && face == index) return IntMatrix::identity(rank(dim, index));
  auto it = maps_.find({face_dim, face, dim, index});
  if (it == maps_.end()) return std::nullopt;
  return it->second;
}

OrlikSolomonFamily::OrlikSolomonFamily(const BallComplex& ball, std::vector<HyperplaneRep> arrangement,
                                       ArrangementOrder order, std::size_t workers)
    : arrangement_(std::move(arrangement)), order_(order), top_degree_(static_cast<std::size_t>(ball.params.d)) {
  const auto ranks = order_.ranks(arrangement_);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  algebras_.resize(ball.simplices.size());
  for (std::size_t k = 0; k < ball.simplices.size(); ++k) {
    algebras_[k].resize(ball.simplices[k].size());
    for (std::size_t i = 0; i < ball.simplices[k].size(); ++i) jobs.emplace_back(k, i);
  }
  parallel_for(jobs.size(), workers, [&](std::size_t j) {
    auto [k, i] = jobs[j];
    algebras_[k][i] = std::make_unique<OrlikSolomonAlgebra>(ball.simplex(ball.simplices[k][i]), arrangement_, ranks);
  });
}

IntMatrix CechComplex::differential(std::size_t k) const {
  if (k < boundary.size()) return boundary[k];
  const std::size_t cols = k < term_ranks.size() ? term_ranks[k] : 0;
  const std::size_t rows = k + 1 < term_ranks.size() ? term_ranks[k + 1] : 0;
  return IntMatrix(rows, cols);
}

CechComplex build_cech(const SimplicialComplex& y, const CoefficientSystem& system, const RingDescriptor& ring,
                       std::size_t workers) {
  CechComplex c;
  c.ring = ring;
  const std::size_t levels = y.simplices.size();
  c.offsets.resize(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < y.simplices[k].size(); ++i) {
      c.offsets[k].push_back(total);
      total += system.rank(k, i);
    }
    c.term_ranks.push_back(total);
  }
  for (std::size_t k = 0; k + 1 < levels; ++k) {
    IntMatrix d(c.term_ranks[k + 1], c.term_ranks[k]);
    const auto& cofaces = y.simplices[k + 1];
    parallel_for(cofaces.size(), workers, [&](std::size_t j) {
      const VertexTuple& sigma = cofaces[j];
      const std::size_t row0 = c.offsets[k + 1][j];
      const std::size_t rows = system.rank(k + 1, j);
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        VertexTuple tau = sigma;
        tau.erase(tau.begin() + static_cast<std::ptrdiff_t>(i));
        const std::size_t t = y.index(tau);
        auto m = system.transition(k, t, k + 1, j);
        if (!m)
          throw std::invalid_argument("missing transition " + tuple_text(tau) + " -> " + tuple_text(sigma));
        if (m->rows() != rows || m->cols() != system.rank(k, t))
          throw std::invalid_argument("transition " + tuple_text(tau) + " -> " + tuple_text(sigma) +
                                      " has the wrong shape");
        const std::size_t col0 = c.offsets[k][t];
        const int sign = i % 2 == 0 ? 1 : -1;
        for (std::size_t r = 0; r < m->rows(); ++r)
          for (std::size_t s = 0; s < m->cols(); ++s)
            if (sgn((*m)(r, s)) != 0) d(row0 + r, col0 + s) = sign * (*m)(r, s);
      }
    });
    c.boundary.push_back(std::move(d));
  }
  for (std::size_t k = 0; k + 1 < c.boundary.size(); ++k)
    if (!(c.boundary[k + 1] * c.boundary[k]).is_zero())
      throw std::logic_error("D^" + std::to_string(k + 1) + " D^" + std::to_string(k) + " != 0");
  return c;
}

long CohomologyReport::euler_characteristic_terms() const {
  long chi = 0;
  for (std::size_t k = 0; k < term_ranks.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(term_ranks[k]);
  return chi;
}

long CohomologyReport::euler_characteristic_ranks() const {
  long chi = 0;
  for (std::size_t k = 0; k < degrees.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(degrees[k].rank);
  return chi;
}

IntMatrix integral_h0_basis(const CechComplex& c) {
  const std::size_t n = c.term_ranks.empty() ? 0 : c.term_ranks[0];
  IntMatrix d = c.differential(0);
  if (d.rows() == 0) return IntMatrix::identity(n);
  SmithDecomposition s = smith_normal_form(d);
  const std::size_t r = s.rank();
  IntMatrix basis(n, n - r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = r; j < n; ++j) basis(i, j - r) = s.v(i, j);
  return basis;
}

std::vector<Integer> residue_cohomology(const CechComplex& c, std::size_t k, const Integer& m) {
  const std::size_t n = k < c.term_ranks.size() ? c.term_ranks[k] : 0;
  IntMatrix kernel = residue_kernel(c.differential(k), m);
  IntMatrix image = k == 0 ? IntMatrix(0, n) : columns_as_rows(c.differential(k - 1));
  if (kernel.rows() == 0) return {};
  return quotient_invariants(image, kernel, m);
}

CohomologyReport cohomology(const CechComplex& c) {
  CohomologyReport rep;
  rep.ring = c.ring.name();
  rep.term_ranks = c.term_ranks;
  const std::size_t levels = c.term_ranks.size();
  rep.degrees.resize(levels);

  std::vector<std::size_t> out_rank(levels, 0);
  std::vector<std::vector<Integer>> divisors(levels);
  for (std::size_t k = 0; k + 1 < levels; ++k) {
    const IntMatrix& d = c.boundary[k];
    switch (c.ring.kind()) {
      case RingKind::Rationals:
        out_rank[k] = rational_rank(d);
        break;
      case RingKind::PrimeField:
        out_rank[k] = rank_mod(d, c.ring.modulus().get_si());
        break;
      default:
        divisors[k] = elementary_divisors(d);
        out_rank[k] = static_cast<std::size_t>(
            std::count_if(divisors[k].begin(), divisors[k].end(), [](const Integer& x) { return sgn(x) != 0; }));
        break;
    }
  }

  std::vector<DegreeCohomology> integral_h(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    DegreeCohomology& h = integral_h[k];
    h.rank = c.term_ranks[k] - out_rank[k] - (k > 0 ? out_rank[k - 1] : 0);
    if (k > 0)
      for (const Integer& x : divisors[k - 1])
        if (x > 1) h.torsion.push_back(x);
  }

  if (c.ring.kind() != RingKind::ResidueRing) {
    rep.degrees = integral_h;
    if (c.ring.is_field())
      for (auto& h : rep.degrees) h.torsion.clear();
    return rep;
  }

  const Integer& m = c.ring.modulus();
  for (std::size_t k = 0; k < levels; ++k) {
    std::vector<Integer> direct = residue_cohomology(c, k, m);
    std::vector<Integer> cyclic;
    for (std::size_t i = 0; i < integral_h[k].rank; ++i) cyclic.push_back(m);
    for (const Integer& t : integral_h[k].torsion) cyclic.push_back(gcd(t, m));
    if (k + 1 < levels)
      for (const Integer& t : integral_h[k + 1].torsion) cyclic.push_back(gcd(t, m));
    std::vector<Integer> uct;
    for (const Integer& x : primary_decomposition(cyclic))
      if (x > 1) uct.push_back(x);
    std::sort(uct.begin(), uct.end());
    if (uct != direct) rep.routes_agree = false;
    rep.degrees[k] = split_residue(direct, m);
    rep.direct_invariants.push_back(std::move(direct));
    rep.uct_invariants.push_back(std::move(uct));
  }
  return rep;
}

}  // namespace btcoh
