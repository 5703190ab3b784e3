#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "kw1/center.hpp"
#include "kw1/meataxe.hpp"

namespace kw1 {

inline constexpr std::uint64_t kDefaultReducedCap = 625;

/// u_chi(g) = U(g_k) / (x_i^p - x_i^[p] - chi_i^p), with basis the reduced monomials.
class ReducedEnvelopingAlgebra {
 public:
  /// Throws DimensionCap when p^n exceeds cap.
  ReducedEnvelopingAlgebra(const ModularEnvelope& env, Vector<GaloisField> chi, std::uint64_t cap = kDefaultReducedCap);

  const ModularEnvelope& envelope() const { return env_; }
  const Vector<GaloisField>& chi() const { return chi_; }
  std::size_t dimension() const { return basis_.size(); }
  /// Reduced monomials in ascending degree-lexicographic order.
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t index_of(const Monomial& m) const { return index_.at(m); }

  /// Image of an element of U(g_k).
  Vector<GaloisField> reduce(const ModularElement& a) const;
  /// Coordinates of a coordinate vector of the p-center decomposition after xi_i -> chi_i^p.
  Vector<GaloisField> specialize(const ZpCoordinateVector& v) const;
  ModularElement lift(const Vector<GaloisField>& v) const;
  Vector<GaloisField> multiply(const Vector<GaloisField>& a, const Vector<GaloisField>& b) const;

 private:
  ModularEnvelope env_;
  Vector<GaloisField> chi_;
  Vector<GaloisField> xi_values_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

ReducedEnvelopingAlgebra reduced_algebra(const ModularEnvelope& env, Vector<GaloisField> chi,
                                         std::uint64_t cap = kDefaultReducedCap);

/// Left-regular action of the basis elements x_i on u_chi.
AlgebraModule regular_representation(const ReducedEnvelopingAlgebra& u);

/// Left multiplication by every x_i on every reduced monomial, in p-center
/// coordinates; specializing at chi gives the regular representation of u_chi.
class RegularActionFamily {
 public:
  explicit RegularActionFamily(const ModularEnvelope& env, std::uint64_t cap = kDefaultReducedCap);
  AlgebraModule specialize(const Vector<GaloisField>& chi) const;

 private:
  ModularEnvelope env_;
  std::uint64_t cap_;
  std::vector<Monomial> basis_;
  std::vector<std::vector<ZpCoordinateVector>> products_;  // [generator][basis column]
};

struct OracleOptions {
  unsigned samples = 10;
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultReducedCap;
  bool allow_escalation = true;
};

struct OracleSample {
  std::vector<std::string> chi;
  std::string field;
  std::size_t max_dimension = 0;
  bool degraded = false;
};

struct OracleResult {
  /// Largest composition-factor dimension seen, a lower bound for M(g).
  std::size_t estimate = 0;
  std::vector<std::string> witness;
  std::string witness_field;
  unsigned samples = 0;
  bool escalated = false;
  bool degraded = false;
  std::uint64_t seed = 0;
  std::vector<OracleSample> runs;
};

/// Characters tried: chi = 0, the coordinate characters, and `samples` random ones.
OracleResult max_irreducible_dim(const ModularEnvelope& env, const OracleOptions& options = {});

/// Base change of a restricted algebra over F_p to F_{p^e}.
ModularLieAlgebra extend_scalars(const ModularLieAlgebra& alg, unsigned e);

}  // namespace kw1
