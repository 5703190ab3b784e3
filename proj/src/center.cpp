#include "kw1/center.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "kw1/errors.hpp"
#include "kw1/rng.hpp"

namespace kw1 {

namespace {

using GF = GaloisField;
using Elem = ModularElement;

constexpr std::uint64_t kMaxFreeRank = std::uint64_t{1} << 22;

ModularLieAlgebra with_p_map(ModularLieAlgebra alg) {
  if (!alg.restricted) alg.restricted = compute_p_map(alg);
  return alg;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Row of a reduced monomial in the free Z_p-module of rank p^n.
std::size_t reduced_index(const Monomial& m, std::uint32_t p, std::size_t n) {
  std::size_t idx = 0;
  for (std::size_t i = n; i-- > 0;) idx = idx * p + m[i];
  return idx;
}

// Evaluates xi-coordinates at fixed random points of the sampling field.
class Specializer {
 public:
  Specializer(const ModularEnvelope& env, const GF& sampling, std::uint64_t seed, unsigned trials)
      : env_(env), sampling_(sampling) {
    const GF& base = env.field();
    if (sampling.characteristic() != base.characteristic() || (!base.is_prime_field() && !(sampling == base)))
      throw std::invalid_argument("sampling field must extend the prime field of the algebra");
    const std::uint64_t free_rank = checked_pow(env.p(), static_cast<unsigned>(env.dim()));
    if (free_rank > kMaxFreeRank) throw DimensionCap(free_rank, kMaxFreeRank);
    ambient_ = static_cast<std::size_t>(free_rank);
    Rng rng(mix_seed(seed, 0x5eed));
    points_.resize(trials);
    powers_.resize(trials);
    for (unsigned t = 0; t < trials; ++t) {
      for (std::size_t i = 0; i < env.dim(); ++i) points_[t].push_back(sampling.random(rng));
      powers_[t].assign(env.dim(), {sampling.one()});
    }
  }

  unsigned trials() const { return static_cast<unsigned>(points_.size()); }
  std::size_t ambient() const { return ambient_; }
  const GF& field() const { return sampling_; }

  Vector<GF> evaluate(const ZpCoordinateVector& v, unsigned trial) {
    Vector<GF> out(ambient_, sampling_.zero());
    for (const auto& [beta, poly] : v.coordinates) {
      GF::Element acc = sampling_.zero();
      for (const auto& [alpha, c] : poly.terms()) {
        GF::Element term = c;
        for (std::size_t i = 0; i < env_.dim(); ++i)
          if (alpha[i]) term = sampling_.mul(term, power(trial, i, alpha[i]));
        acc = sampling_.add(acc, term);
      }
      out[reduced_index(beta, env_.p(), env_.dim())] = acc;
    }
    return out;
  }

 private:
  const GF::Element& power(unsigned trial, std::size_t i, unsigned k) {
    auto& table = powers_[trial][i];
    while (table.size() <= k) table.push_back(sampling_.mul(table.back(), points_[trial][i]));
    return table[k];
  }

  const ModularEnvelope& env_;
  GF sampling_;
  std::size_t ambient_ = 0;
  std::vector<Vector<GF>> points_;
  std::vector<std::vector<std::vector<GF::Element>>> powers_;
};

void enumerate_monomials(std::size_t n, unsigned max_degree, std::size_t var, Monomial& cur, unsigned used,
                         std::vector<Monomial>& out) {
  if (var == n) {
    out.push_back(cur);
    return;
  }
  for (unsigned a = 0; a + used <= max_degree; ++a) {
    cur.set(var, a);
    enumerate_monomials(n, max_degree, var + 1, cur, used + a, out);
  }
  cur.set(var, 0);
}

std::uint64_t count_monomials(std::size_t n, unsigned d, std::uint64_t cap) {
  // C(d + n, n), saturating at cap + 1
  std::uint64_t c = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    c = c * (d + k) / k;
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace

ModularEnvelope::ModularEnvelope(ModularLieAlgebra alg) : alg_(with_p_map(std::move(alg))), U_(alg_.lie) {}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

PCenterGenerators p_center_generators(const ModularEnvelope& env) {
  const auto& U = env.U();
  PCenterGenerators out;
  for (std::size_t i = 0; i < env.dim(); ++i) {
    Elem xi = U.sub(U.monomial(Monomial::unit(i, env.p()), env.field().one()), U.from_vector(env.pmap().pmap[i]));
    for (std::size_t j = 0; j < env.dim(); ++j)
      if (!U.bracket(U.generator(j), xi).is_zero()) throw CentralityFailure(i, j);
    out.xi.push_back(std::move(xi));
  }
  return out;
}

ZpCoordinateVector zp_coordinates(const ModularEnvelope& env, const Elem& a) {
  const auto& U = env.U();
  const auto& f = env.field();
  const std::size_t n = env.dim();
  const std::uint32_t p = env.p();
  std::vector<Elem> pmap_elems;
  for (std::size_t i = 0; i < n; ++i) pmap_elems.push_back(U.from_vector(env.pmap().pmap[i]));

  std::map<Monomial, Elem, DegLexLess> pending;
  pending.emplace(Monomial(), a);
  std::unordered_map<Monomial, TermAccumulator<GF>, MonomialHash> out;

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Monomial alpha = node.key();
    const Elem work = std::move(node.mapped());
    TermAccumulator<GF> same(f);
    std::map<std::size_t, TermAccumulator<GF>> raised;
    for (const auto& [m, c] : work.terms()) {
      std::size_t i = 0;
      while (i < n && m[i] < p) ++i;
      if (i == n) {
        out.try_emplace(m, f).first->second.add(alpha, c);
        continue;
      }
      // x^{<i} x_i^{a_i} x^{>i} = xi_i * x^{<i} x_i^{a_i - p} x^{>i} + x^{<i} x_i^{[p]} x_i^{a_i - p} x^{>i}
      Monomial rest = m;
      rest.set(i, m[i] - p);
      raised.try_emplace(i, f).first->second.add(rest, c);
      Monomial left, right;
      for (std::size_t k = 0; k < n; ++k) (k < i ? left : right).set(k, rest[k]);
      Elem lower = U.zero();
      {
        TermAccumulator<GF> acc(f);
        for (const auto& [k, ck] : pmap_elems[i].terms()) {
          // pmap entries are linear: k is a unit monomial
          acc.add(U.left_multiply(k.max_index(), U.monomial(right, f.one())), ck);
        }
        lower = acc.finish<EnvelopingKind>(n, U.tag());
      }
      same.add(U.monomial_times(left, lower), c);
    }
    auto merge = [&](const Monomial& key, Elem e) {
      if (e.is_zero()) return;
      auto [it, inserted] = pending.try_emplace(key, e);
      if (!inserted) it->second = U.add(it->second, e);
    };
    merge(alpha, same.finish<EnvelopingKind>(n, U.tag()));
    for (auto& [i, acc] : raised) {
      Monomial up = alpha;
      up.add(i, 1);
      merge(up, acc.finish<EnvelopingKind>(n, U.tag()));
    }
  }

  ZpCoordinateVector v;
  for (auto& [beta, acc] : out) {
    XiPolynomial poly = acc.finish<SymmetricKind>(n, U.tag());
    if (!poly.is_zero()) v.coordinates.emplace(beta, std::move(poly));
  }
  return v;
}

Elem reassemble(const ModularEnvelope& env, const ZpCoordinateVector& v) {
  const auto& U = env.U();
  const auto gens = p_center_generators(env);
  Elem total = U.zero();
  for (const auto& [beta, poly] : v.coordinates) {
    for (const auto& [alpha, c] : poly.terms()) {
      Elem term = U.monomial(beta, c);
      for (std::size_t i = env.dim(); i-- > 0;)
        if (alpha[i]) term = U.multiply(U.power(gens.xi[i], alpha[i]), term);
      total = U.add(total, term);
    }
  }
  return total;
}

bool in_p_center_subalgebra(const ModularEnvelope& env, const Elem& a) {
  const auto v = zp_coordinates(env, a);
  for (const auto& [beta, poly] : v.coordinates)
    if (!beta.is_one()) return false;
  return true;
}

unsigned default_degree_bound(std::size_t dim, std::uint32_t p) { return dim <= 3 ? 2 * p - 2 : p; }

std::uint64_t specialization_bound(std::uint64_t columns_bound, std::uint64_t xi_degree) {
  return 4 * std::max<std::uint64_t>(columns_bound, 1) * std::max<std::uint64_t>(xi_degree, 1);
}

GaloisField default_sampling_field(std::uint32_t p, std::size_t dim, unsigned degree_bound) {
  const std::uint64_t free_rank = checked_pow(p, static_cast<unsigned>(dim));
  const std::uint64_t bound =
      std::max(index_sampling_bound(dim), specialization_bound(free_rank, ceil_div(4ull * degree_bound, p)));
  return GaloisField(p, GaloisField::degree_for_size(p, bound));
}

RankResult closure_rank(const ModularEnvelope& env, const std::vector<Elem>& generators, const GaloisField& sampling,
                        std::uint64_t seed, unsigned max_rounds, unsigned trials) {
  const auto& U = env.U();
  Specializer spec(env, sampling, seed, trials);
  std::vector<EchelonBasis<GF>> bases(trials, EchelonBasis<GF>(sampling, spec.ambient()));
  RankResult result;
  result.sampling_field = sampling.describe();

  auto current_rank = [&]() {
    std::size_t r = 0;
    for (const auto& b : bases) r = std::max(r, b.dimension());
    return static_cast<std::uint64_t>(r);
  };
  auto process = [&](const Elem& a) {
    if (a.is_zero()) return;
    const auto coords = zp_coordinates(env, a);
    bool fresh = false;
    for (unsigned t = 0; t < trials; ++t)
      if (bases[t].insert(spec.evaluate(coords, t))) fresh = true;
    if (fresh) result.independent.push_back(a);
  };

  std::vector<Elem> factors;
  for (const auto& g : generators)
    if (!g.is_zero() && !(g == U.one())) factors.push_back(g);
  process(U.one());
  for (const auto& g : factors) process(g);

  std::uint64_t r = current_rank();
  const std::uint64_t full = spec.ambient();
  for (unsigned round = 1; round <= max_rounds; ++round) {
    result.rounds = round;
    if (r == full) {
      result.stabilized = true;
      break;
    }
    const auto snapshot = result.independent;
    for (const auto& a : snapshot) {
      for (const auto& b : factors) {
        process(U.multiply(a, b));
        if (current_rank() == full) break;
      }
      if (current_rank() == full) break;
    }
    const std::uint64_t next = current_rank();
    if (next == r) {
      result.stabilized = true;
      break;
    }
    r = next;
  }
  result.rank = current_rank();
  return result;
}

CenterBasis center_basis_bounded(const ModularEnvelope& env, unsigned degree_bound, const CenterOptions& options) {
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be at least 1");
  const auto& U = env.U();
  const auto& f = env.field();
  const std::size_t n = env.dim();

  const std::uint64_t count = count_monomials(n, degree_bound, options.monomial_cap);
  if (count > options.monomial_cap) throw DegreeBoundTooLargeForMemory(count, options.monomial_cap);

  std::vector<Monomial> monos;
  Monomial cur;
  enumerate_monomials(n, degree_bound, 0, cur, 0, monos);
  // Descending order puts the leading monomial of every element in its first nonzero column.
  std::sort(monos.begin(), monos.end(), [](const Monomial& a, const Monomial& b) { return deglex_less(b, a); });
  std::unordered_map<Monomial, std::size_t, MonomialHash> column;
  for (std::size_t c = 0; c < monos.size(); ++c) column.emplace(monos[c], c);

  const std::size_t N = monos.size();
  Matrix<GF> ad(n * N, N, f.zero());
  for (std::size_t c = 0; c < N; ++c) {
    const Elem m = U.monomial(monos[c], f.one());
    for (std::size_t i = 0; i < n; ++i) {
      const Elem br = U.sub(U.left_multiply(i, m), U.monomial_times(monos[c], U.generator(i)));
      for (const auto& [t, coef] : br.terms()) ad(i * N + column.at(t), c) = coef;
    }
  }
  const auto kernel = nullspace(f, std::move(ad));

  Matrix<GF> k(kernel.size(), N, f.zero());
  for (std::size_t r = 0; r < kernel.size(); ++r)
    for (std::size_t c = 0; c < N; ++c) k(r, c) = kernel[r][c];
  row_reduce(f, k);

  CenterBasis cb;
  cb.degree_bound = degree_bound;
  for (std::size_t r = 0; r < k.rows(); ++r) {
    TermAccumulator<GF> acc(f);
    for (std::size_t c = 0; c < N; ++c) acc.add(monos[c], k(r, c));
    cb.elements.push_back(acc.finish<EnvelopingKind>(n, U.tag()));
  }
  std::sort(cb.elements.begin(), cb.elements.end(),
            [](const Elem& a, const Elem& b) { return deglex_less(a.leading_term().first, b.leading_term().first); });

  for (const auto& z : cb.elements)
    for (std::size_t i = 0; i < n; ++i)
      if (!U.bracket(U.generator(i), z).is_zero())
        throw std::logic_error("center basis element fails the centrality recheck");

  if (!options.skip_stabilization) {
    const GaloisField sampling = options.sampling ? *options.sampling : default_sampling_field(env.p(), n, degree_bound);
    cb.sampling_field = sampling.describe();
    cb.rank_at_bound = rank_over_p_center(env, cb, options.seed, sampling).rank;
    CenterBasis below;
    below.degree_bound = degree_bound - 1;
    for (const auto& z : cb.elements)
      if (z.degree() <= static_cast<int>(degree_bound) - 1) below.elements.push_back(z);
    cb.rank_below_bound = rank_over_p_center(env, below, options.seed, sampling).rank;
    cb.stabilized = cb.rank_at_bound == cb.rank_below_bound;
  }
  return cb;
}

RankResult rank_over_p_center(const ModularEnvelope& env, const CenterBasis& cb, std::uint64_t seed,
                              std::optional<GaloisField> sampling) {
  const GaloisField field = sampling ? *sampling : default_sampling_field(env.p(), env.dim(), cb.degree_bound);
  return closure_rank(env, cb.elements, field, seed, 3);
}

FractionDegreeResult fraction_field_degree(const ModularEnvelope& env, const Elem& phi, const Elem& psi,
                                           unsigned power_bound, std::uint64_t seed) {
  const auto& U = env.U();
  const std::uint32_t p = env.p();
  if (psi.is_zero() || phi.is_zero()) throw ZeroElement();
  const auto w_phi = U.semi_invariant_weight(phi);
  const auto w_psi = U.semi_invariant_weight(psi);
  if (!w_phi) throw WeightMismatch("phi is not a semi-invariant");
  if (!w_psi) throw WeightMismatch("psi is not a semi-invariant");
  if (*w_phi != *w_psi) throw WeightMismatch("phi and psi have different weights");
  if (!U.bracket(phi, psi).is_zero()) throw WeightMismatch("phi and psi do not commute");
  const Elem psi_pow = U.power(psi, p - 1);
  for (const Elem& z : {U.multiply(phi, psi_pow), U.multiply(psi_pow, psi)})
    for (std::size_t i = 0; i < env.dim(); ++i)
      if (!U.bracket(U.generator(i), z).is_zero()) throw WeightMismatch("phi psi^(p-1) or psi^p is not central");

  FractionDegreeResult out;
  out.power_bound = power_bound;
  out.exponent = p * static_cast<unsigned>(ceil_div(std::max(power_bound, 1u), p));
  const unsigned N = out.exponent;
  const int top = std::max(phi.degree(), psi.degree());
  const GaloisField sampling(
      p, GaloisField::degree_for_size(
             p, std::max(index_sampling_bound(env.dim()),
                         specialization_bound(power_bound + 1, ceil_div(static_cast<std::uint64_t>(N) * top, p)))));
  out.sampling_field = sampling.describe();

  constexpr unsigned kTrials = 3;
  Specializer spec(env, sampling, seed, kTrials);
  std::vector<EchelonBasis<GF>> bases(kTrials, EchelonBasis<GF>(sampling, spec.ambient()));

  std::vector<Elem> phi_pows{U.one()}, psi_pows{U.one()};
  for (unsigned j = 1; j <= N; ++j) psi_pows.push_back(U.multiply(psi_pows.back(), psi));
  out.degree = power_bound + 1;
  for (unsigned j = 0; j <= power_bound; ++j) {
    if (j > 0) phi_pows.push_back(U.multiply(phi_pows.back(), phi));
    const auto coords = zp_coordinates(env, U.multiply(phi_pows[j], psi_pows[N - j]));
    bool independent = false;
    for (unsigned t = 0; t < kTrials; ++t)
      if (bases[t].insert(spec.evaluate(coords, t))) independent = true;
    if (!independent) {
      out.degree = j;
      out.conclusive = true;
      break;
    }
  }
  return out;
}

ModularEnvelope polynomial_ring(std::size_t num_vars, std::uint32_t p, std::vector<std::string> labels) {
  if (labels.empty()) {
    static const char* kNames[] = {"x", "y", "z", "w"};
    for (std::size_t i = 0; i < num_vars; ++i)
      labels.push_back(num_vars <= 4 ? kNames[i] : "x" + std::to_string(i + 1));
  }
  if (labels.size() != num_vars) throw std::invalid_argument("label count differs from the number of variables");
  GaloisField f(p);
  ModularLieAlgebra alg{LieAlgebra<GaloisField>(f, "polynomial", std::move(labels), {}), RestrictedStructure{}, {}};
  alg.restricted->pmap.assign(num_vars, Vector<GaloisField>(num_vars, 0));
  return ModularEnvelope(std::move(alg));
}

std::uint64_t rank_over_frobenius_subring(std::size_t num_vars, const std::vector<XiPolynomial>& b_generators,
                                          std::uint32_t p, unsigned stabilization_bound, std::uint64_t seed) {
  const ModularEnvelope ring = polynomial_ring(num_vars, p);
  const auto& U = ring.U();
  std::vector<Elem> gens;
  int top = 1;
  for (const auto& b : b_generators) {
    if (b.dim() != num_vars || b.field_tag() != U.tag()) throw CoefficientFieldMismatch();
    gens.push_back(U.as_enveloping(b));
    top = std::max(top, b.degree());
  }
  const std::uint64_t free_rank = checked_pow(p, static_cast<unsigned>(num_vars));
  const std::uint64_t xi_degree = ceil_div(static_cast<std::uint64_t>(top) * (stabilization_bound + 1), p);
  const GaloisField sampling(p, GaloisField::degree_for_size(p, specialization_bound(free_rank, xi_degree)));
  const auto res = closure_rank(ring, gens, sampling, seed, stabilization_bound);
  if (!res.stabilized) throw StabilizationNotReached(stabilization_bound);
  if (res.rank == 0 || free_rank % res.rank != 0) throw std::logic_error("subalgebra rank does not divide p^n");
  return free_rank / res.rank;
}

}  // namespace kw1
