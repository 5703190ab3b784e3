#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kw1/field.hpp"
#include "kw1/lie_algebra.hpp"
#include "kw1/pbw.hpp"

namespace kw1 {

using ModularElement = EnvelopingElement<GaloisField>;
/// Commutative polynomial in the formal variables xi_0, ..., xi_{n-1}.
using XiPolynomial = SymmetricPolynomial<GaloisField>;

/// U(g_k) together with the restricted structure of g_k.
class ModularEnvelope {
 public:
  /// Computes the p-map when `alg` does not carry one yet.
  explicit ModularEnvelope(ModularLieAlgebra alg);

  const ModularLieAlgebra& algebra() const { return alg_; }
  const EnvelopingAlgebra<GaloisField>& U() const { return U_; }
  const GaloisField& field() const { return alg_.field(); }
  const RestrictedStructure& pmap() const { return *alg_.restricted; }
  std::uint32_t p() const { return alg_.p(); }
  std::size_t dim() const { return alg_.dim(); }

 private:
  ModularLieAlgebra alg_;
  EnvelopingAlgebra<GaloisField> U_;
};

/// xi_i = x_i^p - x_i^{[p]}.
struct PCenterGenerators {
  std::vector<ModularElement> xi;
};

/// Coordinates of an element of U(g_k) in the free Z_p-module with basis the
/// reduced monomials (all exponents < p); each coordinate is a polynomial in xi.
struct ZpCoordinateVector {
  std::map<Monomial, XiPolynomial, DegLexLess> coordinates;

  bool operator==(const ZpCoordinateVector& o) const { return coordinates == o.coordinates; }
};

struct CenterBasis {
  unsigned degree_bound = 0;
  /// Reduced echelon basis (monic leading coefficients), sorted by leading monomial.
  std::vector<ModularElement> elements;
  /// True iff the rank over Z_p did not change from degree_bound - 1 to degree_bound.
  bool stabilized = false;
  std::uint64_t rank_at_bound = 0;
  std::uint64_t rank_below_bound = 0;
  std::string sampling_field;
};

struct CenterOptions {
  std::size_t monomial_cap = 6000;
  std::uint64_t seed = 0;
  /// Field used for random specialization; chosen automatically when empty.
  std::optional<GaloisField> sampling;
  /// Skip the two rank computations that decide `stabilized`.
  bool skip_stabilization = false;
};

struct RankResult {
  std::uint64_t rank = 0;
  unsigned rounds = 0;
  bool stabilized = false;
  std::string sampling_field;
  /// Elements whose coordinates were independent at the best specialization.
  std::vector<ModularElement> independent;
};

struct FractionDegreeResult {
  /// Degree of Frac(Z_p)(phi/psi) over Frac(Z_p), or power_bound + 1 when inconclusive.
  unsigned degree = 0;
  unsigned power_bound = 0;
  unsigned exponent = 0;  // N: v_j = phi^j psi^(N - j)
  bool conclusive = false;
  std::string sampling_field;
};

PCenterGenerators p_center_generators(const ModularEnvelope& env);

ZpCoordinateVector zp_coordinates(const ModularEnvelope& env, const ModularElement& a);
/// Inverse of zp_coordinates: substitute xi_i = x_i^p - x_i^[p] and expand.
ModularElement reassemble(const ModularEnvelope& env, const ZpCoordinateVector& v);
/// Exact membership in the subalgebra generated by the xi_i.
bool in_p_center_subalgebra(const ModularEnvelope& env, const ModularElement& a);

/// Default degree bound: 2p - 2 for dim <= 3, p otherwise.
unsigned default_degree_bound(std::size_t dim, std::uint32_t p);

/// Field size that gives every random specialization of a coordinate matrix
/// with up to `columns_bound` independent columns and xi-degree up to
/// `xi_degree` failure probability at most 1/4.
std::uint64_t specialization_bound(std::uint64_t columns_bound, std::uint64_t xi_degree);
/// Sampling field shared by index and rank computations at degree bound D.
GaloisField default_sampling_field(std::uint32_t p, std::size_t dim, unsigned degree_bound);

/// Basis of Z(U(g_k)) intersected with the span of monomials of degree <= D.
/// Throws DegreeBoundTooLargeForMemory.
CenterBasis center_basis_bounded(const ModularEnvelope& env, unsigned degree_bound, const CenterOptions& options = {});

/// Rank over Frac(Z_p) of the Z_p-subalgebra generated by `cb`, closing under
/// products with the basis for at most 3 rounds.
RankResult rank_over_p_center(const ModularEnvelope& env, const CenterBasis& cb, std::uint64_t seed,
                              std::optional<GaloisField> sampling = std::nullopt);

/// Rank over Frac(Z_p) of the span of Z_p-subalgebra generated by `generators`
/// (1 is always included), closing under products for at most `max_rounds` rounds.
RankResult closure_rank(const ModularEnvelope& env, const std::vector<ModularElement>& generators,
                        const GaloisField& sampling, std::uint64_t seed, unsigned max_rounds, unsigned trials = 3);

/// Throws WeightMismatch unless phi, psi are commuting semi-invariants of one weight.
FractionDegreeResult fraction_field_degree(const ModularEnvelope& env, const ModularElement& phi,
                                           const ModularElement& psi, unsigned power_bound, std::uint64_t seed);

/// Rank of A = F_p[x_1..x_n] over B A^p, computed as p^n / [A^p[B] : A^p].
/// Generators must live in Sym of an n-dimensional space over GF(p).
/// Throws StabilizationNotReached.
std::uint64_t rank_over_frobenius_subring(std::size_t num_vars, const std::vector<XiPolynomial>& b_generators,
                                          std::uint32_t p, unsigned stabilization_bound, std::uint64_t seed);

/// Abelian algebra with zero p-map; its enveloping algebra is the polynomial ring.
ModularEnvelope polynomial_ring(std::size_t num_vars, std::uint32_t p, std::vector<std::string> labels = {});

/// Integer power with overflow check.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

}  // namespace kw1
