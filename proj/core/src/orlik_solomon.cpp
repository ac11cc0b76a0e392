#include "btcoh/orlik_solomon.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include "btcoh/normal_forms.hpp"

namespace btcoh {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

long mod_p(long x, long p) {
  long r = x % p;
  return r < 0 ? r + p : r;
}

// Reduced row echelon form over F_p of a list of vectors; zero rows dropped.
std::vector<std::vector<long>> rref_mod_p(std::vector<std::vector<long>> rows, long p) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && mod_p(rows[k][c], p) == 0) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[k], rows[r]);
    long inv = inverse_mod(Integer(mod_p(rows[r][c], p)), p)->get_si();
    for (long& x : rows[r]) x = mod_p(x * inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      long f = mod_p(rows[i][c], p);
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = mod_p(rows[i][j] - f * rows[r][j], p);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

bool in_span(const std::vector<std::vector<long>>& rref, std::vector<long> v, long p) {
  for (const auto& row : rref) {
    std::size_t piv = 0;
    while (row[piv] == 0) ++piv;
    long f = mod_p(v[piv], p);
    if (f == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = mod_p(v[j] - f * row[j], p);
  }
  return std::all_of(v.begin(), v.end(), [p](long x) { return mod_p(x, p) == 0; });
}

void add_into(Combination& acc, const Word& w, const Integer& c) {
  if (sgn(c) == 0) return;
  Integer& slot = acc[w];
  slot += c;
  if (sgn(slot) == 0) acc.erase(w);
}

IntVector ext_row(const ExtElement& x, std::size_t n, std::size_t k) {
  IntVector row(monomial_basis(n, k).size(), Integer(0));
  for (const auto& [m, c] : x.terms()) row[monomial_index(m, n)] = c.get_num();
  return row;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

OrlikSolomonAlgebra::OrlikSolomonAlgebra(StratifiedArrangement strata, std::vector<std::size_t> ranks,
                                         std::vector<LatticeClass> vertices)
    : strata_(std::move(strata)), ranks_(std::move(ranks)), vertices_(std::move(vertices)) {
  if (ranks_.size() != strata_.size()) throw std::invalid_argument("order does not match arrangement");
  top_ = kNone;
  if (!strata_.strata.empty())
    for (std::size_t a : strata_.strata[0])
      if (top_ == kNone || ranks_[a] > ranks_[top_]) top_ = a;
  build_special_chains();
}

OrlikSolomonAlgebra::OrlikSolomonAlgebra(const Simplex& s, const std::vector<HyperplaneRep>& arrangement,
                                         std::vector<std::size_t> ranks)
    : OrlikSolomonAlgebra(stratify(arrangement, s), std::move(ranks), s.vertices) {}

bool OrlikSolomonAlgebra::independent(int stratum, const Word& members) const {
  std::vector<std::vector<long>> rows;
  for (std::size_t a : members) rows.push_back(strata_.projection[a]);
  (void)stratum;
  return rref_mod_p(rows, strata_.p).size() == members.size();
}

std::size_t OrlikSolomonAlgebra::closure_max(int stratum, const Word& members) const {
  std::vector<std::vector<long>> rows;
  for (std::size_t a : members) rows.push_back(strata_.projection[a]);
  auto key = std::make_pair(stratum, rref_mod_p(rows, strata_.p));
  {
    std::lock_guard lock(*cache_mutex_);
    auto it = closure_cache_.find(key);
    if (it != closure_cache_.end()) return it->second;
  }
  std::size_t best = kNone;
  for (std::size_t a : strata_.strata[static_cast<std::size_t>(stratum)])
    if ((best == kNone || ranks_[a] > ranks_[best]) && in_span(key.second, strata_.projection[a], strata_.p)) best = a;
  std::lock_guard lock(*cache_mutex_);
  closure_cache_.emplace(std::move(key), best);
  return best;
}

void OrlikSolomonAlgebra::build_special_chains() {
  const std::size_t strata_count = strata_.stratum_count();
  std::size_t top_degree = 0;
  // per_stratum[i][m]: special decreasing words of length m inside stratum i.
  std::vector<std::vector<std::vector<Word>>> per_stratum(strata_count);
  for (std::size_t i = 0; i < strata_count; ++i) {
    const int e = strata_.type[i];
    top_degree += static_cast<std::size_t>(e);
    per_stratum[i].push_back({Word{}});
    for (int m = 1; m <= e; ++m) {
      std::vector<Word> next;
      for (const Word& tail : per_stratum[i][static_cast<std::size_t>(m - 1)])
        for (std::size_t a : strata_.strata[i]) {
          if (!tail.empty() && ranks_[a] <= ranks_[tail.front()]) continue;
          Word w{a};
          w.insert(w.end(), tail.begin(), tail.end());
          if (!independent(static_cast<int>(i), w)) continue;
          if (closure_max(static_cast<int>(i), w) != a) continue;
          next.push_back(std::move(w));
        }
      std::sort(next.begin(), next.end());
      per_stratum[i].push_back(std::move(next));
    }
  }
  special_.assign(top_degree + 1, {});
  std::function<void(std::size_t, Word&)> combine = [&](std::size_t i, Word& acc) {
    if (i == strata_count) {
      special_[acc.size()].push_back(acc);
      return;
    }
    for (const auto& by_len : per_stratum[i])
      for (const Word& w : by_len) {
        std::size_t old = acc.size();
        acc.insert(acc.end(), w.begin(), w.end());
        combine(i + 1, acc);
        acc.resize(old);
      }
  };
  Word acc;
  combine(0, acc);
  for (auto& level : special_) {
    std::sort(level.begin(), level.end());
    for (std::size_t j = 0; j < level.size(); ++j) special_lookup_.emplace(level[j], j);
  }
  a_basis_.assign(top_degree + 1, {});
  if (top_ != kNone)
    for (std::size_t k = 0; k < top_degree; ++k)
      for (const Word& s : special_[k])
        if (std::find(s.begin(), s.end(), top_) == s.end()) {
          Word w{top_};
          w.insert(w.end(), s.begin(), s.end());
          a_basis_[k].push_back(std::move(w));
        }
}

const std::vector<Word>& OrlikSolomonAlgebra::special_chains(std::size_t k) const {
  if (k >= special_.size()) throw std::out_of_range("degree exceeds the top degree");
  return special_[k];
}

bool OrlikSolomonAlgebra::is_special(const Word& w) const { return special_lookup_.count(w) > 0; }

const std::vector<Word>& OrlikSolomonAlgebra::a_basis(std::size_t k) const {
  if (top_ == kNone) throw std::logic_error("stratum 0 is empty");
  if (k >= a_basis_.size()) throw std::out_of_range("degree exceeds the top degree");
  return a_basis_[k];
}

int OrlikSolomonAlgebra::normalize(Word& w) const {
  auto before = [&](std::size_t x, std::size_t y) {
    if (strata_.stratum[x] != strata_.stratum[y]) return strata_.stratum[x] < strata_.stratum[y];
    return ranks_[x] > ranks_[y];
  };
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0; --j) {
      if (w[j - 1] == w[j]) return 0;
      if (!before(w[j], w[j - 1])) break;
      std::swap(w[j - 1], w[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i - 1] == w[i]) return 0;
  return sign;
}

Combination OrlikSolomonAlgebra::straighten_block(const Word& block) const {
  {
    std::lock_guard lock(*cache_mutex_);
    auto it = block_cache_.find(block);
    if (it != block_cache_.end()) return it->second;
  }
  Combination out;
  const int stratum = block.empty() ? 0 : strata_.stratum[block.front()];
  if (block.empty()) {
    out.emplace(block, Integer(1));
  } else if (independent(stratum, block)) {
    bool rewritten = false;
    for (std::size_t j = block.size(); j-- > 0 && !rewritten;) {
      Word suffix(block.begin() + static_cast<std::ptrdiff_t>(j), block.end());
      std::size_t b = closure_max(stratum, suffix);
      if (b == block[j]) continue;
      rewritten = true;
      // e_u ≡ sum_m (-1)^{m+1} e_{b·u^{(m)}} since b·u is dependent.
      for (std::size_t m = 0; m < suffix.size(); ++m) {
        Word w(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(j));
        w.push_back(b);
        for (std::size_t t = 0; t < suffix.size(); ++t)
          if (t != m) w.push_back(suffix[t]);
        int s = normalize(w);
        if (s == 0) continue;
        Integer coeff = (m % 2 == 0 ? 1 : -1) * s;
        for (const auto& [word, c] : straighten_block(w)) add_into(out, word, coeff * c);
      }
    }
    if (!rewritten) out.emplace(block, Integer(1));
  }
  std::lock_guard lock(*cache_mutex_);
  block_cache_.emplace(block, out);
  return out;
}

Combination OrlikSolomonAlgebra::straighten(const Word& input) const {
  Word w = input;
  for (std::size_t a : w)
    if (a >= size()) throw std::out_of_range("word entry outside the arrangement");
  int sign = normalize(w);
  if (sign == 0) return {};
  Combination result{{Word{}, Integer(sign)}};
  std::size_t start = 0;
  while (start < w.size()) {
    std::size_t end = start;
    while (end < w.size() && strata_.stratum[w[end]] == strata_.stratum[w[start]]) ++end;
    Word block(w.begin() + static_cast<std::ptrdiff_t>(start), w.begin() + static_cast<std::ptrdiff_t>(end));
    Combination part = straighten_block(block);
    Combination next;
    for (const auto& [w1, c1] : result)
      for (const auto& [w2, c2] : part) {
        Word joined = w1;
        joined.insert(joined.end(), w2.begin(), w2.end());
        add_into(next, joined, c1 * c2);
      }
    result = std::move(next);
    if (result.empty()) break;
    start = end;
  }
  return result;
}

Combination OrlikSolomonAlgebra::straighten(const Combination& c) const {
  Combination out;
  for (const auto& [w, coeff] : c)
    for (const auto& [sw, sc] : straighten(w)) add_into(out, sw, coeff * sc);
  return out;
}

Combination OrlikSolomonAlgebra::straighten_differential(const Word& w) const {
  Combination out;
  for (const auto& [sign, term] : differential_terms(w))
    for (const auto& [sw, sc] : straighten(term)) add_into(out, sw, sc * sign);
  return out;
}

IntVector OrlikSolomonAlgebra::a_coordinates(const Combination& straightened, std::size_t k) const {
  const auto& basis = a_basis(k);
  IntVector out(basis.size(), Integer(0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Word s(basis[i].begin() + 1, basis[i].end());
    auto it = straightened.find(s);
    if (it != straightened.end()) out[i] = -it->second;
  }
  return out;
}

StratifiedArrangement restrict_arrangement(const StratifiedArrangement& s, const std::vector<std::size_t>& keep) {
  StratifiedArrangement out;
  out.p = s.p;
  out.type = s.type;
  out.strata.resize(s.stratum_count());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    std::size_t a = keep[i];
    out.stratum.push_back(s.stratum.at(a));
    out.projection.push_back(s.projection.at(a));
    out.point.push_back(s.point.at(a));
    out.strata[static_cast<std::size_t>(s.stratum[a])].push_back(i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> all_circuits(const StratifiedArrangement& s) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& per : circuits(s))
    for (auto& c : per) out.push_back(std::move(c));
  return out;
}

std::vector<std::vector<std::size_t>> all_dependent_sets(const StratifiedArrangement& s) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < s.stratum_count(); ++i) {
    const auto& members = s.strata[i];
    if (members.size() > 20) throw std::invalid_argument("stratum too large for subset enumeration");
    for (std::size_t mask = 1; mask < (std::size_t{1} << members.size()); ++mask) {
      std::vector<std::size_t> subset;
      std::vector<std::vector<long>> rows;
      for (std::size_t j = 0; j < members.size(); ++j)
        if (mask & (std::size_t{1} << j)) {
          subset.push_back(members[j]);
          rows.push_back(s.projection[members[j]]);
        }
      if (rref_mod_p(rows, s.p).size() < subset.size()) out.push_back(std::move(subset));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix ideal_matrix(const std::vector<std::vector<std::size_t>>& generators, std::size_t n, std::size_t k) {
  const auto z = RingDescriptor::integers();
  IntMatrix out(0, binomial(n, k));
  for (const auto& c : generators) {
    if (c.empty() || c.size() - 1 > k) continue;
    ExtElement dc = differential(ExtElement::word(z, c));
    for (const Monomial& t : monomial_basis(n, k + 1 - c.size())) {
      ExtElement g = wedge(ExtElement::word(z, t), dc);
      if (g.is_zero()) continue;
      out.append_row(ext_row(g, n, k));
    }
  }
  return out;
}

IntMatrix image_matrix(std::size_t n, std::size_t k) {
  const auto z = RingDescriptor::integers();
  IntMatrix out(0, binomial(n, k));
  for (const Monomial& u : monomial_basis(n, k + 1)) out.append_row(ext_row(differential(ExtElement::word(z, u)), n, k));
  return out;
}

IntMatrix differential_matrix(std::size_t n, std::size_t k) {
  if (k == 0) return IntMatrix(0, 1);
  return image_matrix(n, k - 1).transpose();
}

IntVector monomial_coordinates(const OrlikSolomonAlgebra& a, const Combination& c, std::size_t k) {
  const auto z = RingDescriptor::integers();
  ExtElement x(z);
  for (const auto& [w, coeff] : c) x += ExtElement::word(z, w, Rational(coeff));
  return ext_row(x, a.size(), k);
}

OracleRanks oracle_ranks(const StratifiedArrangement& s, const RingDescriptor& ring, std::size_t max_degree) {
  const std::size_t n = s.size();
  const auto gens = all_circuits(s);
  OracleRanks out;
  out.ring = ring.name();
  auto rank_of = [&](const IntMatrix& m) -> std::size_t {
    if (m.rows() == 0) return 0;
    switch (ring.kind()) {
      case RingKind::Integers:
      case RingKind::Rationals: return rational_rank(m);
      case RingKind::PrimeField: return rank_mod(m, ring.modulus().get_si());
      case RingKind::ResidueRing: break;
    }
    throw std::invalid_argument("oracle ranks need Z, Q or a prime field");
  };
  for (std::size_t k = 0; k <= max_degree; ++k) {
    IntMatrix ideal = ideal_matrix(gens, n, k);
    IntMatrix both = image_matrix(n, k);
    both.append_rows(ideal);
    const std::size_t ri = rank_of(ideal);
    out.tilde.push_back(binomial(n, k) - ri);
    out.a.push_back(rank_of(both) - ri);
    std::vector<Integer> tors;
    if (ring.kind() == RingKind::Integers && ideal.rows() > 0)
      for (const Integer& dv : elementary_divisors(ideal))
        if (dv > 1) tors.push_back(dv);
    out.torsion.push_back(std::move(tors));
  }
  return out;
}

IntMatrix restriction_matrix(const OrlikSolomonAlgebra& tau, const OrlikSolomonAlgebra& sigma, std::size_t k) {
  if (tau.size() != sigma.size()) throw std::invalid_argument("algebras use different arrangements");
  if (!tau.vertices().empty() && !sigma.vertices().empty())
    for (const auto& v : tau.vertices())
      if (std::find(sigma.vertices().begin(), sigma.vertices().end(), v) == sigma.vertices().end())
        throw std::invalid_argument("not a face");
  const auto& source = tau.a_basis(k);
  IntMatrix m(sigma.a_rank(k), source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    IntVector col = sigma.a_coordinates(sigma.straighten_differential(source[j]), k);
    for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
  }
  return m;
}

}  // namespace btcoh
