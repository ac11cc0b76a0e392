#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "btcoh/building.hpp"
#include "btcoh/matrix.hpp"
#include "btcoh/orlik_solomon.hpp"

namespace btcoh {

/// Finite simplicial complex on vertices 0..n-1; simplices[k] holds the sorted
/// vertex tuples of dimension k in increasing order, closed under faces.
struct SimplicialComplex {
  std::size_t vertex_count = 0;
  std::vector<std::vector<VertexTuple>> simplices;

  static SimplicialComplex from_ball(const BallComplex& b);
  /// Face closure of the given simplices.
  static SimplicialComplex closure(std::size_t vertex_count, const std::vector<VertexTuple>& generators);

  int dimension() const { return static_cast<int>(simplices.size()) - 1; }
  std::size_t count(std::size_t k) const { return k < simplices.size() ? simplices[k].size() : 0; }
  /// Throws std::out_of_range when t is not a simplex.
  std::size_t index(const VertexTuple& t) const;
  bool contains(const VertexTuple& t) const;
};

/// A complex re-expressed through a vertex relabelling or an inclusion, with
/// origin[k][i] the index of its i-th k-simplex in the source complex.
struct ComplexMap {
  SimplicialComplex complex;
  std::vector<std::vector<std::size_t>> origin;
};

/// Vertex v becomes perm[v]; tuples are re-sorted.
ComplexMap relabel(const SimplicialComplex& c, const std::vector<std::size_t>& perm);
/// B(n) as a subcomplex of B(m) for n <= m; origin indexes the simplices of big.
ComplexMap subball(const BallComplex& small, const BallComplex& big);

/// Functor from the face poset to free modules; transitions go from a face to
/// the simplex containing it.
class CoefficientSystem {
 public:
  virtual ~CoefficientSystem() = default;
  virtual std::string name() const = 0;
  virtual std::size_t rank(std::size_t dim, std::size_t index) const = 0;
  /// rank(σ) × rank(τ) matrix of M_τ -> M_σ, or nullopt if undefined.
  virtual std::optional<IntMatrix> transition(std::size_t face_dim, std::size_t face, std::size_t dim,
                                              std::size_t index) const = 0;
};

class ConstantSystem : public CoefficientSystem {
 public:
  explicit ConstantSystem(std::size_t rank = 1) : rank_(rank) {}
  std::string name() const override { return "constant"; }
  std::size_t rank(std::size_t, std::size_t) const override { return rank_; }
  std::optional<IntMatrix> transition(std::size_t, std::size_t, std::size_t, std::size_t) const override {
    return IntMatrix::identity(rank_);
  }

 private:
  std::size_t rank_;
};

/// Ranks and transition matrices supplied explicitly, keyed by simplex index.
class ExplicitSystem : public CoefficientSystem {
 public:
  explicit ExplicitSystem(std::vector<std::vector<std::size_t>> ranks) : ranks_(std::move(ranks)) {}
  void set_transition(std::size_t face_dim, std::size_t face, std::size_t dim, std::size_t index, IntMatrix m);
  std::string name() const override { return "explicit"; }
  std::size_t rank(std::size_t dim, std::size_t index) const override { return ranks_.at(dim).at(index); }
  std::optional<IntMatrix> transition(std::size_t face_dim, std::size_t face, std::size_t dim,
                                      std::size_t index) const override;

 private:
  std::vector<std::vector<std::size_t>> ranks_;
  std::map<std::array<std::size_t, 4>, IntMatrix> maps_;
};

/// Pulls a system back along a ComplexMap.
class PulledBackSystem : public CoefficientSystem {
 public:
  PulledBackSystem(const CoefficientSystem& base, const ComplexMap& map) : base_(base), map_(map) {}
  std::string name() const override { return base_.name(); }
  std::size_t rank(std::size_t dim, std::size_t index) const override {
    return base_.rank(dim, map_.origin.at(dim).at(index));
  }
  std::optional<IntMatrix> transition(std::size_t face_dim, std::size_t face, std::size_t dim,
                                      std::size_t index) const override {
    return base_.transition(face_dim, map_.origin.at(face_dim).at(face), dim, map_.origin.at(dim).at(index));
  }

 private:
  const CoefficientSystem& base_;
  const ComplexMap& map_;
};

/// The Orlik–Solomon algebras of every simplex of a ball over one common
/// arrangement, shared by the systems A^k for all k.
class OrlikSolomonFamily {
 public:
  OrlikSolomonFamily(const BallComplex& ball, std::vector<HyperplaneRep> arrangement, ArrangementOrder order,
                     std::size_t workers = 0);

  const std::vector<HyperplaneRep>& arrangement() const { return arrangement_; }
  const ArrangementOrder& order() const { return order_; }
  const OrlikSolomonAlgebra& algebra(std::size_t dim, std::size_t index) const { return *algebras_.at(dim).at(index); }
  std::size_t top_degree() const { return top_degree_; }

 private:
  std::vector<HyperplaneRep> arrangement_;
  ArrangementOrder order_;
  std::size_t top_degree_ = 0;
  std::vector<std::vector<std::unique_ptr<OrlikSolomonAlgebra>>> algebras_;
};

/// σ ↦ A^k(σ) with the restriction maps of the quotient projections.
class OrlikSolomonSystem : public CoefficientSystem {
 public:
  OrlikSolomonSystem(const OrlikSolomonFamily& family, std::size_t degree) : family_(family), degree_(degree) {}
  std::string name() const override { return "A^" + std::to_string(degree_); }
  std::size_t rank(std::size_t dim, std::size_t index) const override {
    return family_.algebra(dim, index).a_rank(degree_);
  }
  std::optional<IntMatrix> transition(std::size_t face_dim, std::size_t face, std::size_t dim,
                                      std::size_t index) const override {
    return restriction_matrix(family_.algebra(face_dim, face), family_.algebra(dim, index), degree_);
  }

 private:
  const OrlikSolomonFamily& family_;
  std::size_t degree_;
};

/// Čech cochains C^k = ⊕_{σ ∈ Y_k} M_σ with D^k: C^k -> C^{k+1} the
/// alternating sum over faces, signs (-1)^i for dropping the i-th vertex.
struct CechComplex {
  RingDescriptor ring = RingDescriptor::integers();
  std::vector<std::size_t> term_ranks;
  /// boundary[k] has term_ranks[k+1] rows and term_ranks[k] columns.
  std::vector<IntMatrix> boundary;
  /// offsets[k][i]: first coordinate of the i-th k-simplex block in C^k.
  std::vector<std::vector<std::size_t>> offsets;

  /// D^k as an integer matrix, the zero map past the top degree.
  IntMatrix differential(std::size_t k) const;
};

/// Throws std::invalid_argument naming the face pair when a transition is
/// missing, and std::logic_error if D∘D ≠ 0.
CechComplex build_cech(const SimplicialComplex& y, const CoefficientSystem& system, const RingDescriptor& ring,
                       std::size_t workers = 0);

struct DegreeCohomology {
  /// Field dimension, free rank over Z, or number of free Z/m summands.
  std::size_t rank = 0;
  /// Over Z: invariant factors > 1. Over Z/m: elementary divisors of the
  /// non-free part.
  std::vector<Integer> torsion;
};

struct CohomologyReport {
  std::string ring;
  std::vector<std::size_t> term_ranks;
  std::vector<DegreeCohomology> degrees;
  /// Over Z/m: elementary divisors of each H^i by the universal coefficient
  /// route, and whether they agree with the direct computation.
  std::vector<std::vector<Integer>> direct_invariants;
  std::vector<std::vector<Integer>> uct_invariants;
  bool routes_agree = true;

  long euler_characteristic_terms() const;
  long euler_characteristic_ranks() const;
};

CohomologyReport cohomology(const CechComplex& c);

/// Basis over Z of H^0 = ker D^0 (columns), saturated.
IntMatrix integral_h0_basis(const CechComplex& c);
/// Elementary divisors of the quotient ker D^k / im D^{k-1} over Z/m.
std::vector<Integer> residue_cohomology(const CechComplex& c, std::size_t k, const Integer& m);

}  // namespace btcoh
