#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "btcoh/ring.hpp"

namespace btcoh {

/// Strictly increasing generator indices.
using Monomial = std::vector<std::size_t>;
/// Arbitrary sequence of generator indices; e_w = ±e_{sorted(w)}.
using Word = std::vector<std::size_t>;

/// Sorts w ascending and returns the signature of the sorting permutation,
/// or 0 (leaving w unspecified) when w has a repeated entry.
int sort_with_sign(Word& w);

/// Element of the exterior algebra on generators e_0, e_1, ... over a ring.
class ExtElement {
 public:
  explicit ExtElement(RingDescriptor ring = RingDescriptor::integers()) : ring_(std::move(ring)) {}

  /// coeff * e_w for an arbitrary word w.
  static ExtElement word(const RingDescriptor& ring, Word w, const Rational& coeff = 1);

  const RingDescriptor& ring() const { return ring_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Common degree of all terms; nullopt for zero or mixed elements.
  std::optional<std::size_t> degree() const;
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  ExtElement& operator+=(const ExtElement& o);
  ExtElement& operator-=(const ExtElement& o);
  ExtElement& operator*=(const Rational& c);

  friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
  friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
  friend ExtElement operator*(const Rational& c, ExtElement a) { return a *= c; }
  friend bool operator==(const ExtElement& a, const ExtElement& b) { return a.terms_ == b.terms_; }

 private:
  RingDescriptor ring_;
  std::map<Monomial, Rational> terms_;
};

ExtElement wedge(const ExtElement& a, const ExtElement& b);
/// d(e_s) = sum_{i=1}^{r} (-1)^i e_{s without its i-th entry}.
ExtElement differential(const ExtElement& x);

/// The terms of d(e_w) for a word w, before sorting: (sign, word).
std::vector<std::pair<int, Word>> differential_terms(const Word& w);

/// All k-subsets of {0..n-1}, lexicographic.
std::vector<Monomial> monomial_basis(std::size_t n, std::size_t k);
/// Position of m in monomial_basis(n, |m|).
std::size_t monomial_index(const Monomial& m, std::size_t n);

}  // namespace btcoh
