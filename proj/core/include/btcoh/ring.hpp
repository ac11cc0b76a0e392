#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace btcoh {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { Integers, Rationals, PrimeField, ResidueRing };

/// Coefficient ring: Z, Q, F_l or Z/m. Elements are carried as Rationals and
/// reduced to a canonical representative by reduce(); residues live in [0, m).
class RingDescriptor {
 public:
  static RingDescriptor integers();
  static RingDescriptor rationals();
  /// Throws std::invalid_argument unless ell is prime.
  static RingDescriptor prime_field(const Integer& ell);
  /// Throws std::invalid_argument unless m >= 2.
  static RingDescriptor residue_ring(const Integer& m);
  /// Accepts "Z", "Q", "F3", "F_3", "Z/9".
  static RingDescriptor parse(std::string_view text);

  RingKind kind() const { return kind_; }
  /// Zero for Z and Q.
  const Integer& modulus() const { return modulus_; }
  bool is_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField; }
  bool is_modular() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::ResidueRing; }

  /// Canonical representative. Throws std::domain_error when a denominator is
  /// not invertible in the ring (or the ring is Z and x is not integral).
  Rational reduce(const Rational& x) const;
  bool is_zero(const Rational& x) const { return sgn(reduce(x)) == 0; }
  /// Multiplicative inverse, or nullopt for non-units.
  std::optional<Rational> inverse(const Rational& x) const;

  std::string name() const;

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  RingDescriptor(RingKind kind, Integer modulus) : kind_(kind), modulus_(std::move(modulus)) {}

  RingKind kind_;
  Integer modulus_;
};

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Non-negative residue of a modulo m (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);
std::optional<Integer> inverse_mod(const Integer& a, const Integer& m);
bool is_prime(const Integer& n);
bool is_prime(long n);
Integer ipow(long base, unsigned exponent);
/// Prime factorisation as (prime, exponent) pairs, ascending.
std::vector<std::pair<Integer, unsigned>> factorize(Integer n);

/// Exponent of p in x. Throws std::domain_error("valuation of zero") when x = 0;
/// callers treat v(0) = +infinity explicitly.
std::int64_t valuation(const Integer& x, long p);
std::int64_t valuation(const Rational& x, long p);

/// x with every factor p removed (numerator and denominator).
Rational unit_part(const Rational& x, long p);

}  // namespace btcoh
