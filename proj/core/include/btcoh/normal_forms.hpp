#pragma once

#include <cstddef>
#include <vector>

#include "btcoh/matrix.hpp"

namespace btcoh {

/// U * M * V = D with U, V unimodular and diag(D) a divisibility chain.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  /// The min(rows, cols) diagonal entries of d, non-negative, d_i | d_{i+1}.
  std::vector<Integer> divisors;

  std::size_t rank() const;
};

/// Pivoting picks the smallest nonzero absolute value of the active block,
/// ties broken by the lowest row-major index, so output is reproducible.
SmithDecomposition smith_normal_form(const IntMatrix& m);
/// Same diagonal as smith_normal_form without building the transforms.
std::vector<Integer> elementary_divisors(const IntMatrix& m);

std::size_t rational_rank(const IntMatrix& m);
/// Rank over F_ell for a prime ell below 2^31.
std::size_t rank_mod(const IntMatrix& m, long ell);

struct RankKernel {
  std::size_t rank = 0;
  /// Basis of {x : M x = 0}, entries canonical in the ring.
  std::vector<RatVector> kernel;
};

/// Reduced row echelon form over a field with the pivot column of each row.
struct EchelonForm {
  RatMatrix rref;
  std::vector<std::size_t> pivots;
};

/// Throws std::invalid_argument("field required") unless the ring is Q or F_ell.
EchelonForm row_echelon(const ExactMatrix& m);
RankKernel rank_and_kernel(const ExactMatrix& m);
std::size_t field_rank(const ExactMatrix& m);

/// Canonical generating rows of a submodule of (Z/N)^c together with its size
/// and cyclic decomposition Z/n_1 + ... (n_i | n_{i+1}, n_i > 1).
struct ResidueForm {
  IntMatrix howell;
  Integer span_size;
  std::vector<Integer> invariants;
};

ResidueForm residue_normal_form(const ExactMatrix& m);
/// Howell form of the row span of m over Z/N; zero rows are dropped.
IntMatrix howell_form(const IntMatrix& m, const Integer& modulus);
Integer howell_span_size(const IntMatrix& howell, const Integer& modulus);
/// Invariant factors of the row span of `rows` inside (Z/N)^c.
std::vector<Integer> span_invariants(const IntMatrix& rows, const Integer& modulus);
/// Rows generating {x in (Z/N)^c : m x = 0}.
IntMatrix residue_kernel(const IntMatrix& m, const Integer& modulus);
/// Elementary divisors (prime powers, ascending) of span(super)/span(sub)
/// over Z/N; requires span(sub) to lie inside span(super).
std::vector<Integer> quotient_invariants(const IntMatrix& sub, const IntMatrix& super, const Integer& modulus);
/// Splits invariant factors into prime-power elementary divisors, ascending.
std::vector<Integer> primary_decomposition(const std::vector<Integer>& invariants);

Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);
/// Throws std::domain_error for singular input.
RatMatrix inverse(const RatMatrix& m);

}  // namespace btcoh
