#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "btcoh/lattice.hpp"

namespace btcoh {

/// A point of P^d(Z/p^n): unimodular coordinates with the last unit entry
/// equal to 1, later entries divisible by p, every entry in [0, p^n).
struct HyperplaneRep {
  int level = 1;
  std::vector<Integer> coords;

  friend bool operator==(const HyperplaneRep& a, const HyperplaneRep& b) {
    return a.level == b.level && a.coords == b.coords;
  }
  friend bool operator<(const HyperplaneRep& a, const HyperplaneRep& b) { return a.coords < b.coords; }
};

/// Canonical representative of the projective class of a unimodular vector.
HyperplaneRep canonical_hyperplane(const std::vector<Integer>& v, long p, int level);
/// |P^d(Z/p^n)|.
Integer projective_count(const GlobalParams& g, int level);
/// H_n sorted lexicographically. Throws std::runtime_error past `cap` points.
std::vector<HyperplaneRep> enumerate_H(const GlobalParams& g, int level, std::size_t cap = 5000000);

enum class OrderKind { Lexicographic, Reverse, Shuffled, ReversedCoordinates };

/// Total order on a working arrangement.
struct ArrangementOrder {
  OrderKind kind = OrderKind::Lexicographic;
  std::uint64_t seed = 0;

  static ArrangementOrder lexicographic() { return {}; }
  static ArrangementOrder reverse() { return {OrderKind::Reverse, 0}; }
  static ArrangementOrder shuffled(std::uint64_t seed) { return {OrderKind::Shuffled, seed}; }
  static ArrangementOrder reversed_coordinates() { return {OrderKind::ReversedCoordinates, 0}; }

  std::string name() const;
  /// rank[i] is the position of element i in the order; larger is greater.
  std::vector<std::size_t> ranks(const std::vector<HyperplaneRep>& a) const;
};

/// The arrangement split along the decreasing chain of a simplex.
struct StratifiedArrangement {
  long p = 2;
  std::vector<int> type;
  /// stratum[a] = i with a in M_i \ M_{i+1} after rescaling into M_0 \ pM_0.
  std::vector<int> stratum;
  /// Image of a in M_i/M_{i+1} ≅ F_p^{e_i}, never zero.
  std::vector<std::vector<long>> projection;
  /// Identifier of the projective point of the projection: the projection
  /// scaled so its last nonzero coordinate is 1, read as a base-p number.
  std::vector<std::size_t> point;
  /// strata[i] lists the elements of stratum i in increasing index order.
  std::vector<std::vector<std::size_t>> strata;

  std::size_t size() const { return stratum.size(); }
  std::size_t stratum_count() const { return type.size(); }
};

StratifiedArrangement stratify(const std::vector<HyperplaneRep>& a, const Simplex& s);

/// Minimal dependent subsets of each stratum (global element indices, ascending).
std::vector<std::vector<std::vector<std::size_t>>> circuits(const StratifiedArrangement& s);

/// Number of points of P^{e-1}(F_p).
std::size_t projective_points(int e, long p);
/// Does every stratum meet every point of its projective space?
bool covers_all_points(const StratifiedArrangement& s);
/// Smallest n such that H_n meets every point of every stratum of s.
int faithful_level(const GlobalParams& g, const Simplex& s, int max_level = 8);

/// For each (stratum, point) the element of largest rank, ascending indices.
std::vector<std::size_t> reduced_subset(const StratifiedArrangement& s, const std::vector<std::size_t>& ranks);

template <class T>
std::vector<T> select(const std::vector<T>& items, const std::vector<std::size_t>& indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(items.at(i));
  return out;
}

}  // namespace btcoh
