#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "btcoh/building.hpp"
#include "btcoh/json_io.hpp"
#include "btcoh/ring.hpp"

namespace btcoh {

struct ClauseResult {
  std::string id;
  bool pass = false;
  /// Ranks, torsion, counts; a "witness" entry on failure.
  Json detail = Json::object();
};

struct VerifyConfig {
  GlobalParams params;
  int radius = 1;
  /// Empty means Q, F_l, Z/l^2 and Z with l the smallest prime in {2, 3} other than p.
  std::vector<RingDescriptor> rings;
  std::size_t cap = kDefaultSizeCap;
  std::size_t workers = 0;
  std::size_t apartments = 20;
  std::uint64_t seed = 1;
  int window = 4;
  int apartment_radius = 3;
};

std::vector<RingDescriptor> default_rings(long p);
/// Primes in {2, 3, 5, 7} other than p.
std::vector<long> small_primes_except(long p, long bound = 7);

/// Invariant-factor distance against breadth-first search on the 1-skeleton
/// of B(radius), for every vertex pair.
ClauseResult distance_suite(const GlobalParams& g, int radius, std::size_t cap = kDefaultSizeCap,
                            std::size_t workers = 0);

/// For each apartment and every x in {0} × [-window, window]^d:
/// f(x) <= n exactly when the vertex lies in B(n), for n = 0..max_radius.
ClauseResult apartment_suite(const GlobalParams& g, int max_radius, std::size_t count, std::uint64_t seed,
                             int window = 4, std::size_t cap = kDefaultSizeCap);

/// Special-chain counts against elimination oracles on every simplex of B(1):
/// ranks over Q and small prime fields, integral straightening, invariance
/// under alternative orders, p-power torsion and the additivity of ideals.
std::vector<ClauseResult> nbc_suite(const GlobalParams& g, std::uint64_t seed = 1, std::size_t workers = 0);

/// d = 1: the degree-one rank at every vertex of B(1) is p.
ClauseResult vertex_suite(const GlobalParams& g);

/// Acyclicity, freeness, flatness, base change and the B(n) ⊆ B(n+1)
/// restriction for every n <= radius, k <= d and configured ring; plus
/// functoriality on B(1) and invariance under a permuted vertex order.
std::vector<ClauseResult> cech_suite(const VerifyConfig& config);

/// For every τ in B(1) with k = dim τ: the forms l_σ over contiguous σ vanish
/// on the degree k+1 relations, span the dual of A^k(τ), and each basis word
/// t has a pointed contiguous σ with l_σ(e_t) = 1 and l_σ(e_s) = 0 for s > t.
std::vector<ClauseResult> signature_suite(const GlobalParams& g, std::size_t workers = 0);

/// Ẽ^2 -> Ẽ^1 -> Ẽ^0 is exact in the middle for n generators, n <= max_size,
/// over Z, Q, F_2 and F_3.
ClauseResult exactness_suite(std::size_t max_size = 7);

struct VerifyReport {
  std::vector<ClauseResult> clauses;
  bool all_pass() const;
  std::size_t failures() const;
  Json to_json() const;
};

/// Every suite above for one parameter set.
VerifyReport verify_suites(const VerifyConfig& config);

}  // namespace btcoh
