#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kw1/rng.hpp"

namespace kw1 {

/// The rationals Q with arbitrary-precision numerator and denominator.
/// gmpxx keeps every value canonical (lowest terms, positive denominator).
class RationalField {
 public:
  using Element = mpq_class;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  Element pow(const Element& a, std::uint64_t k) const;
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  Element from_rational(const mpq_class& q) const { return q; }
  Element random(Rng& rng) const;

  std::uint64_t characteristic() const { return 0; }
  std::uint64_t tag() const { return 0; }
  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string describe() const { return "Q"; }
  bool operator==(const RationalField&) const { return true; }
};

/// The finite field F_{p^e}.  An element is the polynomial c_0 + c_1 a + ... +
/// c_{e-1} a^{e-1} reduced modulo the defining polynomial, packed as the
/// integer c_0 + c_1 p + ... + c_{e-1} p^{e-1}.  Prime-field elements are
/// therefore the integers 0..p-1 in every extension of F_p.
class GaloisField {
 public:
  using Element = std::uint32_t;

  /// F_{p^e} with a deterministic defining polynomial: the first random monic
  /// irreducible (and, when log tables are built, primitive) candidate drawn
  /// from a generator seeded by (p, e).
  explicit GaloisField(std::uint32_t p, unsigned e = 1);
  /// F_p[a]/(modulus); modulus is monic, low-to-high coefficients, irreducible.
  GaloisField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  Element zero() const { return 0; }
  Element one() const { return 1; }

  Element add(Element a, Element b) const {
    if (e_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Element neg(Element a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (e_ == 1) return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
    return mul_ext(a, b);
  }
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t k) const;
  Element frobenius(Element a) const { return pow(a, p_); }
  bool is_zero(Element a) const { return a == 0; }

  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  /// Throws DenominatorDivisibleByP when the denominator vanishes mod p.
  Element from_rational(const mpq_class& q) const;
  Element random(Rng& rng) const { return static_cast<Element>(uniform_below(rng, q_)); }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t order() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::uint64_t tag() const { return tag_; }

  std::string to_string(Element a) const;
  /// "GF(p)" or "GF(p^e)".
  std::string describe() const;
  /// The defining polynomial in the variable a, e.g. "a^2+4*a+2".
  std::string modulus_string() const;

  /// Base-p digits (polynomial coefficients) of an element, low to high.
  std::vector<std::uint32_t> digits(Element a) const;
  Element pack(const std::vector<std::uint32_t>& digits) const;

  bool operator==(const GaloisField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

  /// Smallest e with p^e >= bound (at least 1).
  static unsigned degree_for_size(std::uint32_t p, std::uint64_t bound);

 private:
  struct Tables;

  void init();
  Element add_ext(Element a, Element b) const;
  Element neg_ext(Element a) const;
  Element mul_ext(Element a, Element b) const;
  Element mul_slow(Element a, Element b) const;

  std::uint32_t p_;
  unsigned e_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::uint64_t tag_ = 0;
  std::shared_ptr<const Tables> tables_;
};

bool is_prime(std::uint64_t n);

/// Rabin's test: is the monic polynomial (low-to-high coefficients) irreducible over F_p?
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p);

}  // namespace kw1
