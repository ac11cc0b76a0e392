#include "btcoh/exterior.hpp"

#include <algorithm>
#include <functional>

namespace btcoh {

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int sort_with_sign(Word& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j - 1] >= w[j]; --j) {
      if (w[j - 1] == w[j]) return 0;
      std::swap(w[j - 1], w[j]);
      sign = -sign;
    }
  return sign;
}

ExtElement ExtElement::word(const RingDescriptor& ring, Word w, const Rational& coeff) {
  ExtElement x(ring);
  int s = sort_with_sign(w);
  if (s != 0) x.add_term(w, coeff * s);
  return x;
}

std::optional<std::size_t> ExtElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  std::size_t k = terms_.begin()->first.size();
  for (const auto& [m, c] : terms_)
    if (m.size() != k) return std::nullopt;
  return k;
}

Rational ExtElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ExtElement::add_term(const Monomial& m, const Rational& c) {
  Rational& slot = terms_[m];
  slot = ring_.reduce(slot + c);
  if (sgn(slot) == 0) terms_.erase(m);
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExtElement& ExtElement::operator*=(const Rational& c) {
  std::map<Monomial, Rational> out;
  for (const auto& [m, x] : terms_) {
    Rational y = ring_.reduce(x * c);
    if (sgn(y) != 0) out.emplace(m, y);
  }
  terms_ = std::move(out);
  return *this;
}

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
  ExtElement out(a.ring());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Word w = ma;
      w.insert(w.end(), mb.begin(), mb.end());
      int s = sort_with_sign(w);
      if (s != 0) out.add_term(w, ca * cb * s);
    }
  return out;
}

std::vector<std::pair<int, Word>> differential_terms(const Word& w) {
  std::vector<std::pair<int, Word>> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word r;
    r.reserve(w.size() - 1);
    for (std::size_t j = 0; j < w.size(); ++j)
      if (j != i) r.push_back(w[j]);
    // Removing the (i+1)-th entry carries the sign (-1)^{i+1}.
    out.emplace_back(i % 2 == 0 ? -1 : 1, std::move(r));
  }
  return out;
}

ExtElement differential(const ExtElement& x) {
  ExtElement out(x.ring());
  for (const auto& [m, c] : x.terms())
    for (auto& [s, w] : differential_terms(m)) out.add_term(w, c * s);
  return out;
}

std::vector<Monomial> monomial_basis(std::size_t n, std::size_t k) {
  std::vector<Monomial> out;
  if (k > n) return out;
  Monomial cur(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      cur[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::size_t monomial_index(const Monomial& m, std::size_t n) {
  // Count k-subsets that precede m lexicographically.
  const std::size_t k = m.size();
  std::size_t idx = 0, prev = 0;
  for (std::size_t pos = 0; pos < k; ++pos) {
    for (std::size_t v = prev; v < m[pos]; ++v) idx += binomial(n - v - 1, k - pos - 1);
    prev = m[pos] + 1;
  }
  return idx;
}

}  // namespace btcoh
