#include "kw1/verdict.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kw1 {

namespace {

std::optional<std::uint64_t> exact_sqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r == v) return r;
  return std::nullopt;
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::Verified ? "verified" : "inconclusive"; }

GaloisField verdict_sampling_field(std::uint32_t p, std::size_t dim, unsigned degree_bound,
                                   std::optional<unsigned> extension_degree) {
  if (extension_degree) {
    if (*extension_degree < 1) throw std::invalid_argument("extension degree must be at least 1");
    return GaloisField(p, *extension_degree);
  }
  return default_sampling_field(p, dim, degree_bound);
}

KW1Report kw1_verdict(const ModularEnvelope& env, const VerdictOptions& options) {
  const std::uint32_t p = env.p();
  const std::size_t n = env.dim();
  KW1Report rep;
  rep.algebra = env.algebra().lie.name();
  rep.p = p;
  rep.dim = n;
  rep.seed = options.seed;
  rep.index_trials = options.index_trials;
  rep.degree_bound = options.degree_bound ? *options.degree_bound : default_degree_bound(n, p);

  const GaloisField sampling = verdict_sampling_field(p, n, rep.degree_bound, options.extension_degree);
  rep.e = sampling.degree();
  rep.defining_polynomial = sampling.modulus_string();

  const IndexResult idx = index_generic(env.algebra().lie, sampling, options.index_trials, options.seed);
  rep.ind = idx.index;
  if ((n - rep.ind) % 2 != 0) throw std::logic_error("dim - ind is odd");

  CenterOptions co;
  co.monomial_cap = options.monomial_cap;
  co.seed = options.seed;
  co.sampling = sampling;
  const CenterBasis cb = center_basis_bounded(env, rep.degree_bound, co);
  rep.rank = cb.rank_at_bound;
  rep.rank_below_bound = cb.rank_below_bound;
  rep.stabilized = cb.stabilized;

  rep.p_to_dim = checked_pow(p, static_cast<unsigned>(n));
  const std::uint64_t p_to_ind = checked_pow(p, static_cast<unsigned>(rep.ind));
  if (rep.rank > p_to_ind)
    throw std::logic_error("rank over the p-center exceeds p^ind: " + std::to_string(rep.rank) + " > " +
                           std::to_string(p_to_ind));
  rep.m_lower = checked_pow(p, static_cast<unsigned>((n - rep.ind) / 2));
  if (rep.p_to_dim % rep.rank == 0) {
    const std::uint64_t q = rep.p_to_dim / rep.rank;
    rep.m_upper = exact_sqrt(q);
    rep.m_upper_text = rep.m_upper ? std::to_string(*rep.m_upper) : "sqrt(" + std::to_string(q) + ")";
  } else {
    const std::uint64_t g = std::gcd(rep.p_to_dim, rep.rank);
    rep.m_upper_text = "sqrt(" + std::to_string(rep.p_to_dim / g) + "/" + std::to_string(rep.rank / g) + ")";
  }
  rep.verdict = rep.rank == p_to_ind ? Verdict::Verified : Verdict::Inconclusive;

  if (options.with_oracle) {
    OracleOptions oo;
    oo.samples = options.oracle_samples;
    oo.seed = options.seed;
    oo.cap = options.oracle_cap;
    const OracleResult o = max_irreducible_dim(env, oo);
    rep.oracle = OracleSummary{o.estimate, o.witness, o.witness_field, o.samples, o.seed, o.escalated, o.degraded};
  }

  rep.notes.push_back("index and rank are Monte Carlo values over " + sampling.describe() +
                      " (failure probability at most 1/4 per trial)");
  rep.notes.push_back("M(g)^2 * r = p^dim is the convention relating M to the rank r of Z over Z_p");
  rep.notes.push_back("empirical certificate for this algebra and prime; algebraicity of g is not checked");
  if (rep.verdict == Verdict::Inconclusive)
    rep.notes.push_back("center not fully seen in degree <= " + std::to_string(rep.degree_bound) +
                        "; raise the degree bound");
  if (!rep.stabilized) rep.notes.push_back("rank changed between degree bounds D-1 and D");
  if (rep.oracle && rep.oracle->degraded) rep.notes.push_back("oracle split budget exhausted; estimate degraded");
  return rep;
}

}  // namespace kw1
