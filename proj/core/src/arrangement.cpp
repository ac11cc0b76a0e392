#include "btcoh/arrangement.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "btcoh/normal_forms.hpp"

namespace btcoh {

namespace {

long mod_p(long x, long p) {
  long r = x % p;
  return r < 0 ? r + p : r;
}

// Coefficients c with sum c_i basis[i] = x over F_p, or nullopt when x is not
// in the span. The basis must be independent.
std::optional<std::vector<long>> solve_mod_p(const std::vector<std::vector<long>>& basis, const std::vector<long>& x,
                                             long p) {
  const std::size_t m = basis.size(), n = x.size();
  // Augmented system with unknowns as columns: rows are coordinates.
  std::vector<std::vector<long>> a(n, std::vector<long>(m + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) a[r][c] = basis[c][r];
    a[r][m] = x[r];
  }
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m && row < n; ++c) {
    std::size_t k = row;
    while (k < n && a[k][c] == 0) ++k;
    if (k == n) continue;
    std::swap(a[k], a[row]);
    long inv = inverse_mod(Integer(a[row][c]), p)->get_si();
    for (auto& v : a[row]) v = mod_p(v * inv, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][c] == 0) continue;
      long f = a[r][c];
      for (std::size_t j = 0; j <= m; ++j) a[r][j] = mod_p(a[r][j] - f * a[row][j], p);
    }
    piv.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (a[r][m] != 0) return std::nullopt;
  std::vector<long> coef(m, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) coef[piv[r]] = a[r][m];
  return coef;
}

std::vector<std::size_t> order_by(const std::vector<HyperplaneRep>& a,
                                  const std::function<bool(const HyperplaneRep&, const HyperplaneRep&)>& less) {
  std::vector<std::size_t> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return less(a[x], a[y]); });
  return idx;
}

}  // namespace

HyperplaneRep canonical_hyperplane(const std::vector<Integer>& v, long p, int level) {
  const Integer n = ipow(p, static_cast<unsigned>(level));
  std::vector<Integer> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = mod_floor(v[i], n);
  std::size_t last = v.size();
  for (std::size_t i = v.size(); i-- > 0;)
    if (c[i] % p != 0) {
      last = i;
      break;
    }
  if (last == v.size()) throw std::invalid_argument("vector is not unimodular");
  Integer inv = *inverse_mod(c[last], n);
  for (Integer& x : c) x = mod_floor(x * inv, n);
  return {level, std::move(c)};
}

Integer projective_count(const GlobalParams& g, int level) {
  const Integer n = ipow(g.p, static_cast<unsigned>(level));
  const Integer np = n / g.p;
  Integer total = 0;
  for (int j = 0; j <= g.d; ++j) {
    Integer term = 1;
    for (int k = 0; k < j; ++k) term *= n;
    for (int k = j + 1; k <= g.d; ++k) term *= np;
    total += term;
  }
  return total;
}

std::vector<HyperplaneRep> enumerate_H(const GlobalParams& g, int level, std::size_t cap) {
  g.validate();
  if (level < 1) throw std::invalid_argument("level must be at least 1");
  if (projective_count(g, level) > cap) throw std::runtime_error("arrangement too large");
  const std::size_t dim = g.rank();
  const Integer n = ipow(g.p, static_cast<unsigned>(level));
  std::vector<HyperplaneRep> out;
  for (std::size_t last = 0; last < dim; ++last) {
    std::vector<Integer> c(dim, 0);
    c[last] = 1;
    std::function<void(std::size_t)> fill = [&](std::size_t i) {
      if (i == dim) {
        out.push_back({level, c});
        return;
      }
      if (i == last) {
        fill(i + 1);
        return;
      }
      Integer step = i < last ? Integer(1) : Integer(g.p);
      for (Integer x = 0; x < n; x += step) {
        c[i] = x;
        fill(i + 1);
      }
      c[i] = 0;
    };
    fill(0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string ArrangementOrder::name() const {
  switch (kind) {
    case OrderKind::Lexicographic: return "lex";
    case OrderKind::Reverse: return "reverse-lex";
    case OrderKind::Shuffled: return "shuffled:" + std::to_string(seed);
    case OrderKind::ReversedCoordinates: return "reversed-coordinates";
  }
  return "?";
}

std::vector<std::size_t> ArrangementOrder::ranks(const std::vector<HyperplaneRep>& a) const {
  std::vector<std::size_t> seq;
  switch (kind) {
    case OrderKind::Lexicographic:
      seq = order_by(a, [](const HyperplaneRep& x, const HyperplaneRep& y) { return x.coords < y.coords; });
      break;
    case OrderKind::Reverse:
      seq = order_by(a, [](const HyperplaneRep& x, const HyperplaneRep& y) { return y.coords < x.coords; });
      break;
    case OrderKind::Shuffled: {
      seq = order_by(a, [](const HyperplaneRep& x, const HyperplaneRep& y) { return x.coords < y.coords; });
      std::mt19937_64 rng(seed);
      for (std::size_t i = seq.size(); i > 1; --i) std::swap(seq[i - 1], seq[rng() % i]);
      break;
    }
    case OrderKind::ReversedCoordinates:
      seq = order_by(a, [](const HyperplaneRep& x, const HyperplaneRep& y) {
        return std::lexicographical_compare(x.coords.rbegin(), x.coords.rend(), y.coords.rbegin(), y.coords.rend());
      });
      break;
  }
  std::vector<std::size_t> rank(a.size());
  for (std::size_t pos = 0; pos < seq.size(); ++pos) rank[seq[pos]] = pos;
  return rank;
}

StratifiedArrangement stratify(const std::vector<HyperplaneRep>& a, const Simplex& s) {
  const long p = s.p;
  const AdaptedBasis ab = adapted_basis(s);
  const std::size_t dim = ab.f.rows();
  const RatMatrix finv = inverse(to_rational(ab.f));
  std::vector<int> block_of(dim);
  for (std::size_t b = 0; b < ab.blocks.size(); ++b)
    for (std::size_t c : ab.blocks[b]) block_of[c] = static_cast<int>(b);

  StratifiedArrangement out;
  out.p = p;
  out.type = s.type;
  out.strata.resize(s.type.size());
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    const auto& h = a[idx];
    if (h.coords.size() != dim) throw std::invalid_argument("hyperplane dimension mismatch");
    RatVector x(dim, Rational(0));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) x[r] += finv(r, c) * h.coords[c];
    bool any = false;
    std::int64_t vmin = 0;
    for (const Rational& xi : x) {
      if (sgn(xi) == 0) continue;
      std::int64_t v = valuation(xi, p);
      if (!any || v < vmin) vmin = v;
      any = true;
    }
    if (!any) throw std::logic_error("zero hyperplane vector");
    int stratum = static_cast<int>(ab.blocks.size());
    for (std::size_t c = 0; c < dim; ++c)
      if (sgn(x[c]) != 0 && valuation(x[c], p) == vmin) stratum = std::min(stratum, block_of[c]);
    if (stratum == static_cast<int>(ab.blocks.size())) throw std::logic_error("hyperplane lies in no stratum");
    Rational scale = vmin >= 0 ? Rational(Integer(1), ipow(p, static_cast<unsigned>(vmin)))
                               : Rational(ipow(p, static_cast<unsigned>(-vmin)));
    std::vector<long> proj;
    for (std::size_t c : ab.blocks[static_cast<std::size_t>(stratum)]) {
      Rational y = x[c] * scale;
      Integer r = sgn(y) == 0 ? Integer(0) : mod_floor(y.get_num() * *inverse_mod(y.get_den(), p), p);
      proj.push_back(r.get_si());
    }
    // Projective point id: scale the last nonzero coordinate to 1.
    std::size_t last = proj.size();
    for (std::size_t k = proj.size(); k-- > 0;)
      if (proj[k] != 0) {
        last = k;
        break;
      }
    if (last == proj.size()) throw std::logic_error("zero residue projection");
    long inv = inverse_mod(Integer(proj[last]), p)->get_si();
    std::size_t id = 0;
    for (std::size_t k = proj.size(); k-- > 0;) id = id * static_cast<std::size_t>(p) + static_cast<std::size_t>(mod_p(proj[k] * inv, p));
    out.stratum.push_back(stratum);
    out.projection.push_back(std::move(proj));
    out.point.push_back(id);
    out.strata[static_cast<std::size_t>(stratum)].push_back(idx);
  }
  return out;
}

std::vector<std::vector<std::vector<std::size_t>>> circuits(const StratifiedArrangement& s) {
  const long p = s.p;
  std::vector<std::vector<std::vector<std::size_t>>> out(s.stratum_count());
  for (std::size_t i = 0; i < s.stratum_count(); ++i) {
    const auto& members = s.strata[i];
    std::vector<std::size_t> chosen;
    std::vector<std::vector<long>> vecs;
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
      for (std::size_t k = from; k < members.size(); ++k) {
        const auto& x = s.projection[members[k]];
        auto coef = solve_mod_p(vecs, x, p);
        if (coef) {
          if (std::all_of(coef->begin(), coef->end(), [](long c) { return c != 0; })) {
            std::vector<std::size_t> c = chosen;
            c.push_back(members[k]);
            out[i].push_back(std::move(c));
          }
          continue;
        }
        chosen.push_back(members[k]);
        vecs.push_back(x);
        extend(k + 1);
        chosen.pop_back();
        vecs.pop_back();
      }
    };
    extend(0);
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

std::size_t projective_points(int e, long p) {
  std::size_t total = 0, pw = 1;
  for (int k = 0; k < e; ++k) {
    total += pw;
    pw *= static_cast<std::size_t>(p);
  }
  return total;
}

bool covers_all_points(const StratifiedArrangement& s) {
  for (std::size_t i = 0; i < s.stratum_count(); ++i) {
    std::set<std::size_t> seen;
    for (std::size_t a : s.strata[i]) seen.insert(s.point[a]);
    if (seen.size() != projective_points(s.type[i], s.p)) return false;
  }
  return true;
}

int faithful_level(const GlobalParams& g, const Simplex& s, int max_level) {
  for (int n = 1; n <= max_level; ++n)
    if (covers_all_points(stratify(enumerate_H(g, n), s))) return n;
  throw std::runtime_error("no faithful arrangement level found");
}

std::vector<std::size_t> reduced_subset(const StratifiedArrangement& s, const std::vector<std::size_t>& ranks) {
  std::map<std::pair<int, std::size_t>, std::size_t> best;
  for (std::size_t a = 0; a < s.size(); ++a) {
    auto key = std::make_pair(s.stratum[a], s.point[a]);
    auto it = best.find(key);
    if (it == best.end() || ranks[a] > ranks[it->second]) best[key] = a;
  }
  std::vector<std::size_t> out;
  for (const auto& [key, a] : best) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace btcoh
