#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kw1/field.hpp"
#include "kw1/matrix.hpp"

namespace kw1 {

/// A module over a finitely generated algebra: one d x d action matrix per generator.
struct AlgebraModule {
  GaloisField field;
  std::size_t dimension = 0;
  std::vector<Matrix<GaloisField>> action;
};

struct CompositionFactor {
  /// Dimension over the working field.
  std::size_t dimension = 0;
  /// Degree over the working field of the endomorphism field End(S).
  unsigned endomorphism_degree = 1;
  /// False when the split budget ran out before the factor was certified.
  bool certified = true;
  std::optional<AlgebraModule> module;
};

struct SplitResult {
  /// Absolute composition-factor dimensions, ascending: a factor S splits over
  /// the algebraic closure into endomorphism_degree pieces of dimension dim S / endomorphism_degree.
  std::vector<std::size_t> dimensions;
  std::vector<CompositionFactor> factors;
  std::string working_field;
  bool degraded = false;
};

struct SplitOptions {
  /// Random algebra elements tried per module before giving up.
  unsigned attempts = 128;
  /// Largest characteristic-polynomial factor degree examined.
  unsigned max_factor_degree = 16;
  /// Record unsplit modules as single factors instead of throwing SplitBudgetExceeded.
  bool allow_degraded = false;
  bool keep_modules = false;
};

/// MeatAxe: composition factors of m.  Throws SplitBudgetExceeded.
SplitResult split_simples(const AlgebraModule& m, std::uint64_t seed, const SplitOptions& options = {});

/// Dimension of the smallest submodule containing v.
std::size_t spin_dimension(const AlgebraModule& m, const Vector<GaloisField>& v);

}  // namespace kw1
