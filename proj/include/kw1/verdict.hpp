#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kw1/center.hpp"
#include "kw1/redenv.hpp"

namespace kw1 {

enum class Verdict { Verified, Inconclusive };

std::string to_string(Verdict v);

struct OracleSummary {
  std::uint64_t estimate = 0;
  std::vector<std::string> witness;
  std::string witness_field;
  unsigned samples = 0;
  std::uint64_t seed = 0;
  bool escalated = false;
  bool degraded = false;
};

struct KW1Report {
  std::string algebra;
  std::uint32_t p = 0;
  /// Extension degree of the sampling field F_{p^e} and its defining polynomial.
  unsigned e = 1;
  std::string defining_polynomial;
  std::size_t dim = 0;
  std::size_t ind = 0;
  unsigned degree_bound = 0;
  bool stabilized = false;
  std::uint64_t rank = 0;
  std::uint64_t rank_below_bound = 0;
  std::uint64_t p_to_dim = 0;
  /// Exact M upper bound when p^dim / rank is a perfect square, else empty.
  std::optional<std::uint64_t> m_upper;
  /// "5" or a formal value such as "sqrt(27)" or "sqrt(27/2)".
  std::string m_upper_text;
  std::uint64_t m_lower = 0;
  std::optional<OracleSummary> oracle;
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t seed = 0;
  unsigned index_trials = 0;
  std::vector<std::string> notes;
};

struct VerdictOptions {
  std::optional<unsigned> degree_bound;
  std::optional<unsigned> extension_degree;
  std::uint64_t seed = 0;
  unsigned index_trials = 3;
  bool with_oracle = false;
  unsigned oracle_samples = 10;
  std::size_t monomial_cap = 6000;
  std::uint64_t oracle_cap = kDefaultReducedCap;
};

/// Sampling field of a verdict run: F_{p^ext} when given, else default_sampling_field.
GaloisField verdict_sampling_field(std::uint32_t p, std::size_t dim, unsigned degree_bound,
                                   std::optional<unsigned> extension_degree);

KW1Report kw1_verdict(const ModularEnvelope& env, const VerdictOptions& options = {});

}  // namespace kw1
