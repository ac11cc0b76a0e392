#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "btcoh/lattice.hpp"

namespace btcoh {

inline constexpr std::size_t kDefaultSizeCap = 500000;

/// Sorted vertex indices of one simplex.
using VertexTuple = std::vector<std::size_t>;

/// The closed ball B(n): the union of the closed stars of the vertices at
/// distance at most n-1 from the standard vertex (B(0) is that vertex alone).
struct BallComplex {
  GlobalParams params;
  int radius = 0;
  /// Sorted lexicographically; this is the global vertex order.
  std::vector<LatticeClass> vertices;
  std::vector<int> depth;  // distance from the standard vertex
  std::vector<std::vector<std::size_t>> neighbours;
  /// simplices[k] lists the k-dimensional simplices, sorted.
  std::vector<std::vector<VertexTuple>> simplices;

  std::size_t vertex_index(const LatticeClass& v) const;  // throws std::out_of_range
  bool contains(const LatticeClass& v) const;
  std::size_t simplex_index(const VertexTuple& t) const;  // throws std::out_of_range
  std::size_t simplex_count() const;
  Simplex simplex(const VertexTuple& t) const;
  std::vector<std::size_t> counts() const;
};

/// All classes within distance n of the standard vertex, sorted.
std::vector<LatticeClass> ball_vertices(const GlobalParams& g, int n, std::size_t cap = kDefaultSizeCap);
/// Classes L with pM ⊊ L ⊊ M.
std::vector<LatticeClass> neighbours_of(const LatticeClass& m, long p);
/// Throws std::runtime_error("ball too large: ...") when more than `cap`
/// vertices or simplices would be produced.
BallComplex ball_complex(const GlobalParams& g, int n, std::size_t cap = kDefaultSizeCap, std::size_t workers = 0);

/// Nonzero proper subspaces of F_p^dim, each given by a basis of row vectors.
std::vector<std::vector<std::vector<long>>> proper_subspaces(std::size_t dim, long p);

/// Basis f_i = sum_j forward(i, j) e_j of Q_p^{d+1} and the inverse matrix.
struct Apartment {
  RatMatrix forward;
  RatMatrix backward;
};

Apartment make_apartment(const RatMatrix& forward);
Apartment standard_apartment(const GlobalParams& g);
/// The standard apartment followed by `count` apartments from integer
/// matrices with entries in [-p^3, p^3] and determinant ±p^k.
std::vector<Apartment> random_apartments(const GlobalParams& g, std::size_t count, std::uint64_t seed);

/// Convexity function of the apartment at the vertex with coordinates x.
std::int64_t apartment_f_value(const Apartment& a, const std::vector<std::int64_t>& x, long p);
/// The class of <p^{x_0} f_0, ..., p^{x_d} f_d>.
LatticeClass apartment_vertex(const Apartment& a, const std::vector<std::int64_t>& x, long p);

}  // namespace btcoh
