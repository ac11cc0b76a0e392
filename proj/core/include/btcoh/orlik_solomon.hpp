#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "btcoh/arrangement.hpp"
#include "btcoh/exterior.hpp"
#include "btcoh/matrix.hpp"

namespace btcoh {

/// Integer combination of words in normal form (strata ascending, ranks
/// descending inside each stratum).
using Combination = std::map<Word, Integer>;

/// The quotient of the exterior algebra on a stratified arrangement by the
/// ideal generated by d(e_s) over sequences s dependent inside one stratum,
/// with its basis of special chains and the sub-quotient spanned by d-images.
class OrlikSolomonAlgebra {
 public:
  OrlikSolomonAlgebra(StratifiedArrangement strata, std::vector<std::size_t> ranks,
                      std::vector<LatticeClass> vertices = {});
  OrlikSolomonAlgebra(const Simplex& s, const std::vector<HyperplaneRep>& arrangement, std::vector<std::size_t> ranks);

  const StratifiedArrangement& strata() const { return strata_; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const std::vector<LatticeClass>& vertices() const { return vertices_; }
  std::size_t size() const { return strata_.size(); }
  /// Sum of the type, the top degree of the algebra.
  std::size_t max_degree() const { return special_.size() - 1; }

  /// Special chains of degree k as normal-form words.
  const std::vector<Word>& special_chains(std::size_t k) const;
  bool is_special(const Word& w) const;
  /// The largest element of stratum 0.
  std::size_t top() const { return top_; }
  /// Words a·s with s special of degree k not containing a = top(); their
  /// d-images form a basis of the degree-k part A^k.
  const std::vector<Word>& a_basis(std::size_t k) const;
  std::size_t a_rank(std::size_t k) const { return a_basis(k).size(); }

  /// Sign-adjusts w into normal form; returns 0 for words with repeats.
  int normalize(Word& w) const;
  /// Combination of special chains congruent to e_w modulo the ideal.
  Combination straighten(const Word& w) const;
  Combination straighten(const Combination& c) const;
  /// straighten(d(e_w)).
  Combination straighten_differential(const Word& w) const;
  /// Coordinates in the a_basis(k) basis of an element of the degree-k part
  /// of the image of d, given by its straightened form.
  IntVector a_coordinates(const Combination& straightened, std::size_t k) const;

 private:
  Combination straighten_block(const Word& block) const;
  std::size_t closure_max(int stratum, const Word& members) const;
  bool independent(int stratum, const Word& members) const;
  void build_special_chains();

  StratifiedArrangement strata_;
  std::vector<std::size_t> ranks_;
  std::vector<LatticeClass> vertices_;
  std::size_t top_ = 0;
  std::vector<std::vector<Word>> special_;
  std::vector<std::vector<Word>> a_basis_;
  std::map<Word, std::size_t> special_lookup_;

  mutable std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
  mutable std::map<Word, Combination> block_cache_;
  mutable std::map<std::pair<int, std::vector<std::vector<long>>>, std::size_t> closure_cache_;
};

/// Restriction of the arrangement to the given elements (re-indexed 0..m-1).
StratifiedArrangement restrict_arrangement(const StratifiedArrangement& s, const std::vector<std::size_t>& keep);

/// Circuits of every stratum, flattened.
std::vector<std::vector<std::size_t>> all_circuits(const StratifiedArrangement& s);
/// Every dependent subset of every stratum (exponential; small inputs only).
std::vector<std::vector<std::size_t>> all_dependent_sets(const StratifiedArrangement& s);

/// Rows e_t ∧ d(e_c) for every generator c and every k+1-|c| subset t, in the
/// monomial basis of degree k on n generators.
IntMatrix ideal_matrix(const std::vector<std::vector<std::size_t>>& generators, std::size_t n, std::size_t k);
/// Rows d(e_u) for |u| = k+1 in the monomial basis of degree k.
IntMatrix image_matrix(std::size_t n, std::size_t k);
/// Matrix of d from degree k to degree k-1 (columns indexed by degree k).
IntMatrix differential_matrix(std::size_t n, std::size_t k);
/// Coordinates of a straightened combination in the monomial basis.
IntVector monomial_coordinates(const OrlikSolomonAlgebra& a, const Combination& c, std::size_t k);

struct OracleRanks {
  std::string ring;
  /// Ranks (over fields) or free ranks (over Z) of the quotient and its d-image part.
  std::vector<std::size_t> tilde;
  std::vector<std::size_t> a;
  /// Over Z: invariant factors > 1 of each graded piece of the quotient.
  std::vector<std::vector<Integer>> torsion;
};

/// Ranks by elimination on the ideal generated by the circuits.
OracleRanks oracle_ranks(const StratifiedArrangement& s, const RingDescriptor& ring, std::size_t max_degree);

/// Matrix of A^k(τ) -> A^k(σ) in the a_basis coordinates. Both algebras must be
/// built on the same arrangement; vertex sets, when known, must satisfy τ ⊆ σ.
IntMatrix restriction_matrix(const OrlikSolomonAlgebra& tau, const OrlikSolomonAlgebra& sigma, std::size_t k);

/// l_σ(e_{a_0 ... a_m}) = sgn(i_σ(a_0), ..., i_σ(a_m)), zero unless the strata
/// indices are a permutation of 0..m.
class SignatureForm {
 public:
  explicit SignatureForm(const StratifiedArrangement& s);
  SignatureForm(std::vector<int> stratum_of, int dimension);

  int dimension() const { return dimension_; }
  /// Throws std::invalid_argument on words of degree other than dimension+1.
  int evaluate(const Word& w) const;
  Rational evaluate(const ExtElement& x) const;
  /// The same value computed from a sequence of stratum indices.
  static int evaluate_strata(const std::vector<int>& strata, int dimension);

 private:
  std::vector<int> stratum_of_;
  int dimension_;
};

}  // namespace btcoh
