#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btcoh/matrix.hpp"

namespace btcoh {

/// The building of PGL_{d+1}(Q_p): dimension d and residue characteristic p.
struct GlobalParams {
  int d = 1;
  long p = 2;

  std::size_t rank() const { return static_cast<std::size_t>(d) + 1; }
  /// Throws std::invalid_argument when d < 1 or p is not prime.
  void validate() const;
};

/// Homothety class of a Z_p-lattice in Q_p^{d+1}.
///
/// The representative is the upper-triangular column Hermite form of the
/// unique member M with p^N O ⊆ M ⊆ O and M ⊄ pO: diagonal entries are
/// p-powers and each entry right of a diagonal entry lies in [0, diagonal).
class LatticeClass {
 public:
  LatticeClass() = default;

  const IntMatrix& rep() const { return rep_; }
  std::size_t rank() const { return rep_.rows(); }
  /// Exponents a_i of the diagonal entries p^{a_i}.
  std::vector<int> diagonal_exponents(long p) const;
  std::string to_string() const;

  friend bool operator==(const LatticeClass& a, const LatticeClass& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const LatticeClass& a, const LatticeClass& b) { return !(a == b); }
  /// Lexicographic on the row-major entries of the representative.
  friend bool operator<(const LatticeClass& a, const LatticeClass& b) { return a.rep_.data() < b.rep_.data(); }

 private:
  friend LatticeClass canonicalize(const RatMatrix&, long);
  explicit LatticeClass(IntMatrix rep) : rep_(std::move(rep)) {}

  IntMatrix rep_;
};

/// Columns of `generators` span the lattice. Throws std::invalid_argument
/// ("not a lattice") when they do not have full rank.
LatticeClass canonicalize(const RatMatrix& generators, long p);
LatticeClass canonicalize(const IntMatrix& generators, long p);
LatticeClass standard_vertex(const GlobalParams& g);

/// Exponents e_i (sorted) with M1 = ⊕ p^{e_i} O g_i for a suitable basis g of M0.
std::vector<std::int64_t> relative_exponents(const IntMatrix& m0, const IntMatrix& m1, long p);
/// Length of a shortest edge path between the two vertices.
int distance(const LatticeClass& a, const LatticeClass& b, long p);

/// Is the O-lattice spanned by the columns of `inner` inside the one spanned by
/// the columns of the square basis `outer`?
bool lattice_contains(const RatMatrix& outer, const RatMatrix& inner, long p);
bool same_lattice(const RatMatrix& a, const RatMatrix& b, long p);

/// Simplex of the building stored as a decreasing periodic chain
/// M_0 ⊋ M_1 ⊋ ... ⊋ M_k ⊋ pM_0 with dim_{F_p} M_i/M_{i+1} = type[i].
struct Simplex {
  long p = 2;
  /// Vertex classes sorted lexicographically.
  std::vector<LatticeClass> vertices;
  /// chain[i] is a basis (columns) of M_i.
  std::vector<IntMatrix> chain;
  /// chain_vertex[i] is the index in `vertices` of the class of M_i.
  std::vector<std::size_t> chain_vertex;
  std::vector<int> type;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }
  std::size_t rank() const { return vertices.front().rank(); }
  /// The same simplex with its chain started at position r:
  /// M_r ⊋ ... ⊋ M_k ⊋ pM_0 ⊋ ... ⊋ pM_{r-1}.
  Simplex rotated(std::size_t r) const;
};

/// Builds the simplex spanned by the given classes, or nullopt if they do not
/// form one. The chain starts at the lexicographically smallest class.
std::optional<Simplex> normalize_simplex(std::vector<LatticeClass> classes, long p);

/// Basis f (columns) of M_0 adapted to the chain: blocks[i] lists the columns
/// forming N_i, and M_i = <f_j : j in N_i ∪ ... ∪ N_k> + p<f_j : j in N_0 ∪ ... ∪ N_{i-1}>.
/// Columns are ordered N_k, N_{k-1}, ..., N_0.
struct AdaptedBasis {
  IntMatrix f;
  std::vector<std::vector<std::size_t>> blocks;
};

AdaptedBasis adapted_basis(const Simplex& s);
/// The lattices M_0, ..., M_k rebuilt from the blocks.
std::vector<IntMatrix> reconstruct_chain(const AdaptedBasis& basis, long p);

}  // namespace btcoh
