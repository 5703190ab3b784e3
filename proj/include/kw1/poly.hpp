#pragma once

#include <cstdint>
#include <vector>

#include "kw1/field.hpp"
#include "kw1/matrix.hpp"
#include "kw1/rng.hpp"

namespace kw1 {

/// Univariate polynomial over a finite field, coefficients low to high,
/// without trailing zeros (the zero polynomial is empty).
using Poly = std::vector<GaloisField::Element>;

namespace poly {

void trim(Poly& a);
int degree(const Poly& a);
Poly add(const GaloisField& f, const Poly& a, const Poly& b);
Poly sub(const GaloisField& f, const Poly& a, const Poly& b);
Poly mul(const GaloisField& f, const Poly& a, const Poly& b);
/// Quotient and remainder; throws ZeroElement when b = 0.
std::pair<Poly, Poly> divmod(const GaloisField& f, const Poly& a, const Poly& b);
Poly mod(const GaloisField& f, const Poly& a, const Poly& b);
Poly monic(const GaloisField& f, const Poly& a);
/// Monic gcd (zero when both are zero).
Poly gcd(const GaloisField& f, Poly a, Poly b);
Poly derivative(const GaloisField& f, const Poly& a);
/// base^k mod m, with k given as a multiprecision integer.
Poly powmod(const GaloisField& f, const Poly& base, const mpz_class& k, const Poly& m);
Poly x();

/// Distinct monic irreducible factors of a nonzero polynomial, sorted by
/// degree and then coefficients.
std::vector<Poly> irreducible_factors(const GaloisField& f, const Poly& a, Rng& rng);

/// Characteristic polynomial det(tI - A), via Hessenberg reduction.
Poly charpoly(const GaloisField& f, const Matrix<GaloisField>& a);
/// g(A) by Horner's rule.
Matrix<GaloisField> evaluate(const GaloisField& f, const Poly& g, const Matrix<GaloisField>& a);

}  // namespace poly
}  // namespace kw1
