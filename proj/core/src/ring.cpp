#include "btcoh/ring.hpp"

#include <cctype>
#include <stdexcept>

namespace btcoh {

RingDescriptor RingDescriptor::integers() { return {RingKind::Integers, 0}; }

RingDescriptor RingDescriptor::rationals() { return {RingKind::Rationals, 0}; }

RingDescriptor RingDescriptor::prime_field(const Integer& ell) {
  if (!is_prime(ell)) throw std::invalid_argument("prime field modulus must be prime: " + ell.get_str());
  return {RingKind::PrimeField, ell};
}

RingDescriptor RingDescriptor::residue_ring(const Integer& m) {
  if (m < 2) throw std::invalid_argument("residue ring modulus must be >= 2");
  return {RingKind::ResidueRing, m};
}

RingDescriptor RingDescriptor::parse(std::string_view text) {
  auto digits = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("bad ring: " + std::string(text));
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad ring: " + std::string(text));
    return Integer(std::string(s));
  };
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.starts_with("Z/")) return residue_ring(digits(text.substr(2)));
  if (text.starts_with("F_")) return prime_field(digits(text.substr(2)));
  if (text.starts_with("F")) return prime_field(digits(text.substr(1)));
  throw std::invalid_argument("bad ring: " + std::string(text));
}

Rational RingDescriptor::reduce(const Rational& x) const {
  switch (kind_) {
    case RingKind::Rationals:
      return x;
    case RingKind::Integers:
      if (x.get_den() != 1) throw std::domain_error("non-integral value over Z");
      return x;
    case RingKind::PrimeField:
    case RingKind::ResidueRing: {
      Integer num = mod_floor(x.get_num(), modulus_);
      if (x.get_den() == 1) return Rational(num);
      auto inv = inverse_mod(x.get_den(), modulus_);
      if (!inv) throw std::domain_error("denominator not invertible in " + name());
      return Rational(mod_floor(num * *inv, modulus_));
    }
  }
  return x;
}

std::optional<Rational> RingDescriptor::inverse(const Rational& x) const {
  switch (kind_) {
    case RingKind::Rationals:
      if (sgn(x) == 0) return std::nullopt;
      return Rational(1) / x;
    case RingKind::Integers:
      if (x == 1 || x == -1) return x;
      return std::nullopt;
    default: {
      auto inv = inverse_mod(reduce(x).get_num(), modulus_);
      if (!inv) return std::nullopt;
      return Rational(*inv);
    }
  }
}

std::string RingDescriptor::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + modulus_.get_str();
    case RingKind::ResidueRing: return "Z/" + modulus_.get_str();
  }
  return "?";
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
  if (m == 1) return Integer(0);
  Integer r;
  Integer reduced = mod_floor(a, m);
  if (mpz_invert(r.get_mpz_t(), reduced.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(long n) { return is_prime(Integer(n)); }

Integer ipow(long base, unsigned exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exponent);
  return r;
}

std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  for (Integer q = 2; q * q <= n; ++q) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t valuation(const Integer& x, long p) {
  if (sgn(x) == 0) throw std::domain_error("valuation of zero");
  Integer pp(p);
  return static_cast<std::int64_t>(mpz_remove(Integer().get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

std::int64_t valuation(const Rational& x, long p) {
  if (sgn(x) == 0) throw std::domain_error("valuation of zero");
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Rational unit_part(const Rational& x, long p) {
  if (sgn(x) == 0) return x;
  Integer pp(p), num, den;
  mpz_remove(num.get_mpz_t(), x.get_num_mpz_t(), pp.get_mpz_t());
  mpz_remove(den.get_mpz_t(), x.get_den_mpz_t(), pp.get_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace btcoh
