#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kw1/field.hpp"
#include "kw1/matrix.hpp"

namespace kw1 {

/// A Lie algebra given by a basis and rational structure constants
/// [x_i, x_j] = sum_k c_{ij}^k x_k, stored sparsely for i < j.
struct LieAlgebraPresentation {
  using Key = std::array<std::size_t, 3>;  // (i, j, k) with i < j

  std::string name;
  std::vector<std::string> labels;
  std::map<Key, mpq_class> constants;
  /// Optional user-supplied p-map rows: label index -> (label index -> coefficient).
  std::map<std::size_t, std::map<std::size_t, mpq_class>> pmap_override;

  std::size_t dim() const { return labels.size(); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Adds c to the coefficient of x_k in [x_i, x_j]; i > j is stored with the sign flipped.
  void add_bracket(std::size_t i, std::size_t j, std::size_t k, const mpq_class& c);
  /// Coefficient of x_k in [x_i, x_j] for any i, j.
  mpq_class constant(std::size_t i, std::size_t j, std::size_t k) const;

  bool operator==(const LieAlgebraPresentation& o) const {
    return name == o.name && labels == o.labels && constants == o.constants && pmap_override == o.pmap_override;
  }
};

/// A triple i < j < l whose Jacobi sum [[x_i,x_j],x_l] + cyclic is nonzero.
template <class F>
struct JacobiViolation {
  std::size_t i, j, l;
  Vector<F> defect;
};

/// Structure constants over a concrete field, stored densely with
/// antisymmetry filled in.  Immutable after construction.
template <class F>
class LieAlgebra {
 public:
  using Element = typename F::Element;
  struct Entry {
    std::size_t i, j, k;
    Element value;
  };

  LieAlgebra(F field, std::string name, std::vector<std::string> labels, const std::vector<Entry>& brackets);

  const F& field() const { return field_; }
  std::size_t dim() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }

  const Element& constant(std::size_t i, std::size_t j, std::size_t k) const { return table_[(i * n_ + j) * n_ + k]; }
  /// Nonzero terms (k, c) of [x_i, x_j].
  const std::vector<std::pair<std::size_t, Element>>& bracket(std::size_t i, std::size_t j) const {
    return sparse_[i * n_ + j];
  }
  bool is_abelian() const;

  Vector<F> bracket(const Vector<F>& x, const Vector<F>& y) const;
  /// Matrix of ad(x_i): column j holds the coordinates of [x_i, x_j].
  Matrix<F> ad(std::size_t i) const;
  Matrix<F> ad(const Vector<F>& x) const;
  Vector<F> basis_vector(std::size_t i) const;

  std::vector<JacobiViolation<F>> jacobi_violations() const;

 private:
  F field_;
  std::size_t n_;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Element> table_;
  std::vector<std::vector<std::pair<std::size_t, Element>>> sparse_;
};

/// x_i^{[p]} for every basis element, as coordinate vectors.
struct RestrictedStructure {
  std::vector<Vector<GaloisField>> pmap;
};

/// A presentation base-changed to F_{p^e}, optionally with its p-map.
struct ModularLieAlgebra {
  LieAlgebra<GaloisField> lie;
  std::optional<RestrictedStructure> restricted;
  /// Override rows carried over from the presentation, already reduced mod p.
  std::map<std::size_t, Vector<GaloisField>> pmap_override;

  std::uint32_t p() const { return lie.field().characteristic(); }
  unsigned e() const { return lie.field().degree(); }
  std::size_t dim() const { return lie.dim(); }
  const GaloisField& field() const { return lie.field(); }
  /// The p-map table; throws std::logic_error when it has not been computed.
  const RestrictedStructure& pmap() const;
};

/// Empty result means the presentation is a Lie algebra.
std::vector<JacobiViolation<RationalField>> validate_presentation(const LieAlgebraPresentation& pres);

LieAlgebra<RationalField> rational_algebra(const LieAlgebraPresentation& pres);

/// Reduces every constant into F_p inside F_{p^e}.  Throws DenominatorDivisibleByP
/// when p divides a denominator and JacobiError if the reduction is not a Lie algebra.
ModularLieAlgebra base_change_mod_p(const LieAlgebraPresentation& pres, std::uint32_t p, unsigned e = 1);

/// Canonical solution y of ad(y) = (ad x)^p: free coordinates of the echelon
/// solve are zero.  nullopt when (ad x)^p is not inner.
std::optional<Vector<GaloisField>> solve_p_power(const LieAlgebra<GaloisField>& lie, const Vector<GaloisField>& x);

/// p-map on the basis; override rows are taken verbatim.  Throws NotRestrictable.
RestrictedStructure compute_p_map(const ModularLieAlgebra& alg);

/// base_change_mod_p followed by compute_p_map.
ModularLieAlgebra restricted_reduction(const LieAlgebraPresentation& pres, std::uint32_t p, unsigned e = 1);

struct IndexResult {
  std::size_t index = 0;
  std::size_t generic_rank = 0;
  unsigned trials = 0;
  std::uint64_t seed = 0;
  std::string sampling_field;
};

/// Monte Carlo index: dim minus the largest rank of B_chi = (chi([x_i,x_j]))
/// seen over `trials` random chi plus the all-ones and coordinate functionals.
/// Over a finite field the samples come from `sampling` (an extension of the
/// algebra's prime field, or the algebra's own field).
IndexResult index_generic(const LieAlgebra<GaloisField>& lie, const GaloisField& sampling, unsigned trials,
                          std::uint64_t seed);
/// Same, choosing the smallest sampling field with at least 4 n^3 elements.
IndexResult index_generic(const LieAlgebra<GaloisField>& lie, unsigned trials, std::uint64_t seed);
/// Over Q the samples are random integers in [-100, 100].
IndexResult index_generic(const LieAlgebra<RationalField>& lie, unsigned trials, std::uint64_t seed);

/// Field size targeted by index sampling: 4 n^2 times the minor degree bound n.
std::uint64_t index_sampling_bound(std::size_t n);

/// B_chi for a functional chi with coordinates in `f` (constants embedded from the prime field).
template <class F>
Matrix<F> coadjoint_form(const LieAlgebra<F>& lie, const Vector<F>& chi);
Matrix<GaloisField> coadjoint_form(const LieAlgebra<GaloisField>& lie, const GaloisField& f,
                                   const Vector<GaloisField>& chi);

extern template class LieAlgebra<RationalField>;
extern template class LieAlgebra<GaloisField>;

}  // namespace kw1
