#include "kw1/redenv.hpp"

#include <algorithm>

#include "kw1/errors.hpp"
#include "kw1/rng.hpp"

namespace kw1 {

namespace {

using GF = GaloisField;

std::uint64_t reduced_dimension(std::uint32_t p, std::size_t n, std::uint64_t cap) {
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < n; ++i) {
    d *= p;
    if (d > cap) throw DimensionCap(d, cap);
  }
  return d;
}

std::vector<Monomial> reduced_monomials(std::size_t n, std::uint32_t p) {
  std::vector<Monomial> out{Monomial()};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial> next;
    for (const auto& m : out)
      for (unsigned a = 0; a < p; ++a) {
        Monomial t = m;
        t.set(i, a);
        next.push_back(t);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), deglex_less);
  return out;
}

Vector<GF> xi_values(const GF& f, const Vector<GF>& chi) {
  Vector<GF> out;
  for (auto c : chi) out.push_back(f.frobenius(c));
  return out;
}

// Value of every coordinate after xi_i -> values[i], placed at the basis index.
template <class IndexOf>
Vector<GF> specialize_coordinates(const GF& f, const ZpCoordinateVector& v, const Vector<GF>& values,
                                  std::size_t dim, IndexOf index_of) {
  Vector<GF> out(dim, f.zero());
  for (const auto& [beta, poly] : v.coordinates) {
    GF::Element acc = f.zero();
    for (const auto& [alpha, c] : poly.terms()) {
      GF::Element term = c;
      for (std::size_t i = 0; i < values.size() && term; ++i)
        if (alpha[i]) term = f.mul(term, f.pow(values[i], alpha[i]));
      acc = f.add(acc, term);
    }
    out[index_of(beta)] = acc;
  }
  return out;
}

std::vector<std::string> render_chi(const GF& f, const Vector<GF>& chi) {
  std::vector<std::string> out;
  for (auto c : chi) out.push_back(f.to_string(c));
  return out;
}

}  // namespace

ReducedEnvelopingAlgebra::ReducedEnvelopingAlgebra(const ModularEnvelope& env, Vector<GaloisField> chi,
                                                   std::uint64_t cap)
    : env_(env), chi_(std::move(chi)) {
  if (chi_.size() != env.dim()) throw std::invalid_argument("character length differs from the algebra dimension");
  reduced_dimension(env.p(), env.dim(), cap);
  xi_values_ = xi_values(env.field(), chi_);
  basis_ = reduced_monomials(env.dim(), env.p());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

Vector<GaloisField> ReducedEnvelopingAlgebra::specialize(const ZpCoordinateVector& v) const {
  return specialize_coordinates(env_.field(), v, xi_values_, basis_.size(),
                                [this](const Monomial& m) { return index_.at(m); });
}

Vector<GaloisField> ReducedEnvelopingAlgebra::reduce(const ModularElement& a) const {
  return specialize(zp_coordinates(env_, a));
}

ModularElement ReducedEnvelopingAlgebra::lift(const Vector<GaloisField>& v) const {
  if (v.size() != basis_.size()) throw std::invalid_argument("vector length differs from dim u_chi");
  TermAccumulator<GF> acc(env_.field());
  for (std::size_t i = 0; i < v.size(); ++i) acc.add(basis_[i], v[i]);
  return acc.finish<EnvelopingKind>(env_.dim(), env_.U().tag());
}

Vector<GaloisField> ReducedEnvelopingAlgebra::multiply(const Vector<GaloisField>& a,
                                                       const Vector<GaloisField>& b) const {
  return reduce(env_.U().multiply(lift(a), lift(b)));
}

ReducedEnvelopingAlgebra reduced_algebra(const ModularEnvelope& env, Vector<GaloisField> chi, std::uint64_t cap) {
  return ReducedEnvelopingAlgebra(env, std::move(chi), cap);
}

AlgebraModule regular_representation(const ReducedEnvelopingAlgebra& u) {
  const auto& env = u.envelope();
  const auto& U = env.U();
  const GF& f = env.field();
  const std::size_t d = u.dimension();
  AlgebraModule m{f, d, {}};
  for (std::size_t i = 0; i < env.dim(); ++i) {
    Matrix<GF> a(d, d, f.zero());
    for (std::size_t j = 0; j < d; ++j) {
      const auto col = u.reduce(U.left_multiply(i, U.monomial(u.basis()[j], f.one())));
      for (std::size_t r = 0; r < d; ++r) a(r, j) = col[r];
    }
    m.action.push_back(std::move(a));
  }
  return m;
}

RegularActionFamily::RegularActionFamily(const ModularEnvelope& env, std::uint64_t cap) : env_(env), cap_(cap) {
  reduced_dimension(env.p(), env.dim(), cap);
  basis_ = reduced_monomials(env.dim(), env.p());
  const auto& U = env.U();
  products_.resize(env.dim());
  for (std::size_t i = 0; i < env.dim(); ++i)
    for (const auto& b : basis_)
      products_[i].push_back(zp_coordinates(env, U.left_multiply(i, U.monomial(b, env.field().one()))));
}

AlgebraModule RegularActionFamily::specialize(const Vector<GaloisField>& chi) const {
  const ReducedEnvelopingAlgebra u(env_, chi, cap_);
  const std::size_t d = basis_.size();
  AlgebraModule m{env_.field(), d, {}};
  for (const auto& row : products_) {
    Matrix<GF> a(d, d, env_.field().zero());
    for (std::size_t j = 0; j < d; ++j) {
      const auto col = u.specialize(row[j]);
      for (std::size_t r = 0; r < d; ++r) a(r, j) = col[r];
    }
    m.action.push_back(std::move(a));
  }
  return m;
}

ModularLieAlgebra extend_scalars(const ModularLieAlgebra& alg, unsigned e) {
  if (!alg.field().is_prime_field()) throw std::invalid_argument("extend_scalars expects an algebra over F_p");
  const GF big(alg.p(), e);
  const auto& lie = alg.lie;
  std::vector<LieAlgebra<GF>::Entry> entries;
  for (std::size_t i = 0; i < lie.dim(); ++i)
    for (std::size_t j = i + 1; j < lie.dim(); ++j)
      for (const auto& [k, c] : lie.bracket(i, j)) entries.push_back({i, j, k, c});
  ModularLieAlgebra out{LieAlgebra<GF>(big, lie.name(), lie.labels(), entries), alg.restricted, alg.pmap_override};
  return out;
}

OracleResult max_irreducible_dim(const ModularEnvelope& env, const OracleOptions& options) {
  OracleResult result;
  result.seed = options.seed;
  const std::size_t n = env.dim();
  std::uint64_t run_index = 0;

  auto run_family = [&](const ModularEnvelope& e, const std::vector<Vector<GF>>& chars) {
    const RegularActionFamily family(e, options.cap);
    for (const auto& chi : chars) {
      const AlgebraModule m = family.specialize(chi);
      SplitOptions so;
      so.allow_degraded = true;
      const SplitResult split = split_simples(m, mix_seed(options.seed, 0x100 + run_index++), so);
      OracleSample sample{render_chi(e.field(), chi), e.field().describe(), split.dimensions.back(), split.degraded};
      if (sample.max_dimension > result.estimate) {
        result.estimate = sample.max_dimension;
        result.witness = sample.chi;
        result.witness_field = sample.field;
      }
      result.degraded = result.degraded || split.degraded;
      result.runs.push_back(std::move(sample));
    }
  };

  const GF& f = env.field();
  Rng rng(mix_seed(options.seed, 0x0c));
  std::vector<Vector<GF>> chars{Vector<GF>(n, f.zero())};
  for (std::size_t i = 0; i < n; ++i) {
    Vector<GF> chi(n, f.zero());
    chi[i] = f.one();
    chars.push_back(std::move(chi));
  }
  for (unsigned s = 0; s < options.samples; ++s) {
    Vector<GF> chi;
    for (std::size_t i = 0; i < n; ++i) chi.push_back(f.random(rng));
    chars.push_back(std::move(chi));
  }
  result.samples = options.samples;
  run_family(env, chars);

  const bool all_equal = std::all_of(result.runs.begin(), result.runs.end(),
                                     [&](const OracleSample& s) { return s.max_dimension == result.estimate; });
  // below the coadjoint lower bound p^((n - ind)/2) the F_p-rational characters missed the generic stratum
  const std::size_t ind = index_generic(env.algebra().lie, 3, options.seed).index;
  if (options.allow_escalation && f.is_prime_field() && all_equal &&
      result.estimate < checked_pow(env.p(), static_cast<unsigned>((n - ind) / 2))) {
    const ModularEnvelope wide(extend_scalars(env.algebra(), 2));
    const GF& g = wide.field();
    std::vector<Vector<GF>> wide_chars;
    for (unsigned s = 0; s < options.samples; ++s) {
      Vector<GF> chi;
      for (std::size_t i = 0; i < n; ++i) chi.push_back(g.random(rng));
      wide_chars.push_back(std::move(chi));
    }
    result.escalated = true;
    run_family(wide, wide_chars);
  }
  return result;
}

}  // namespace kw1
