#include "kw1/lie_algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kw1/errors.hpp"

namespace kw1 {

std::optional<std::size_t> LieAlgebraPresentation::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

void LieAlgebraPresentation::add_bracket(std::size_t i, std::size_t j, std::size_t k, const mpq_class& c) {
  if (i == j) throw std::invalid_argument("[x, x] is zero by construction");
  mpq_class v = c;
  if (i > j) {
    std::swap(i, j);
    v = -v;
  }
  auto& slot = constants[{i, j, k}];
  slot += v;
  if (slot == 0) constants.erase({i, j, k});
}

mpq_class LieAlgebraPresentation::constant(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j) return 0;
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = constants.find({i, j, k});
  if (it == constants.end()) return 0;
  return flip ? mpq_class(-it->second) : it->second;
}

template <class F>
LieAlgebra<F>::LieAlgebra(F field, std::string name, std::vector<std::string> labels,
                          const std::vector<Entry>& brackets)
    : field_(std::move(field)), n_(labels.size()), name_(std::move(name)), labels_(std::move(labels)) {
  table_.assign(n_ * n_ * n_, field_.zero());
  for (const auto& e : brackets) {
    if (e.i >= n_ || e.j >= n_ || e.k >= n_) throw std::out_of_range("structure constant index");
    if (e.i == e.j) {
      if (!field_.is_zero(e.value)) throw std::invalid_argument("[x, x] must vanish");
      continue;
    }
    auto& a = table_[(e.i * n_ + e.j) * n_ + e.k];
    auto& b = table_[(e.j * n_ + e.i) * n_ + e.k];
    a = field_.add(a, e.value);
    b = field_.neg(a);
  }
  sparse_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        const auto& c = constant(i, j, k);
        if (!field_.is_zero(c)) sparse_[i * n_ + j].emplace_back(k, c);
      }
}

template <class F>
bool LieAlgebra<F>::is_abelian() const {
  return std::all_of(sparse_.begin(), sparse_.end(), [](const auto& v) { return v.empty(); });
}

template <class F>
Vector<F> LieAlgebra<F>::bracket(const Vector<F>& x, const Vector<F>& y) const {
  Vector<F> out(n_, field_.zero());
  for (std::size_t i = 0; i < n_; ++i) {
    if (field_.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (field_.is_zero(y[j])) continue;
      const auto c = field_.mul(x[i], y[j]);
      for (const auto& [k, v] : bracket(i, j)) out[k] = field_.add(out[k], field_.mul(c, v));
    }
  }
  return out;
}

template <class F>
Matrix<F> LieAlgebra<F>::ad(std::size_t i) const {
  Matrix<F> m(n_, n_, field_.zero());
  for (std::size_t j = 0; j < n_; ++j)
    for (const auto& [k, v] : bracket(i, j)) m(k, j) = v;
  return m;
}

template <class F>
Matrix<F> LieAlgebra<F>::ad(const Vector<F>& x) const {
  Matrix<F> m(n_, n_, field_.zero());
  for (std::size_t i = 0; i < n_; ++i) {
    if (field_.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n_; ++j)
      for (const auto& [k, v] : bracket(i, j)) m(k, j) = field_.add(m(k, j), field_.mul(x[i], v));
  }
  return m;
}

template <class F>
Vector<F> LieAlgebra<F>::basis_vector(std::size_t i) const {
  Vector<F> v(n_, field_.zero());
  v[i] = field_.one();
  return v;
}

template <class F>
std::vector<JacobiViolation<F>> LieAlgebra<F>::jacobi_violations() const {
  std::vector<JacobiViolation<F>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (std::size_t l = j + 1; l < n_; ++l) {
        const auto xi = basis_vector(i), xj = basis_vector(j), xl = basis_vector(l);
        auto a = bracket(bracket(xi, xj), xl);
        const auto b = bracket(bracket(xj, xl), xi);
        const auto c = bracket(bracket(xl, xi), xj);
        bool zero = true;
        for (std::size_t k = 0; k < n_; ++k) {
          a[k] = field_.add(field_.add(a[k], b[k]), c[k]);
          if (!field_.is_zero(a[k])) zero = false;
        }
        if (!zero) out.push_back({i, j, l, std::move(a)});
      }
  return out;
}

template class LieAlgebra<RationalField>;
template class LieAlgebra<GaloisField>;

const RestrictedStructure& ModularLieAlgebra::pmap() const {
  if (!restricted) throw std::logic_error("p-map has not been computed for " + lie.name());
  return *restricted;
}

LieAlgebra<RationalField> rational_algebra(const LieAlgebraPresentation& pres) {
  std::vector<LieAlgebra<RationalField>::Entry> entries;
  for (const auto& [key, c] : pres.constants) entries.push_back({key[0], key[1], key[2], c});
  return LieAlgebra<RationalField>(RationalField{}, pres.name, pres.labels, entries);
}

std::vector<JacobiViolation<RationalField>> validate_presentation(const LieAlgebraPresentation& pres) {
  for (const auto& [key, c] : pres.constants) {
    if (key[0] >= key[1] || key[1] >= pres.dim() || key[2] >= pres.dim())
      throw std::invalid_argument("presentation keys must satisfy i < j < n and k < n");
  }
  return rational_algebra(pres).jacobi_violations();
}

namespace {

std::string describe_triples(const std::vector<JacobiTriple>& triples, const std::vector<std::string>& labels) {
  std::ostringstream os;
  for (std::size_t t = 0; t < triples.size(); ++t) {
    if (t) os << ", ";
    os << '(' << labels[triples[t].i] << ',' << labels[triples[t].j] << ',' << labels[triples[t].l] << ')';
  }
  return os.str();
}

template <class F>
std::vector<JacobiTriple> to_triples(const std::vector<JacobiViolation<F>>& v) {
  std::vector<JacobiTriple> out;
  for (const auto& x : v) out.push_back({x.i, x.j, x.l});
  return out;
}

}  // namespace

ModularLieAlgebra base_change_mod_p(const LieAlgebraPresentation& pres, std::uint32_t p, unsigned e) {
  GaloisField field(p, e);
  std::vector<LieAlgebra<GaloisField>::Entry> entries;
  for (const auto& [key, c] : pres.constants) entries.push_back({key[0], key[1], key[2], field.from_rational(c)});
  LieAlgebra<GaloisField> lie(field, pres.name, pres.labels, entries);
  const auto violations = lie.jacobi_violations();
  if (!violations.empty()) {
    const auto triples = to_triples(violations);
    throw JacobiError(triples, describe_triples(triples, pres.labels));
  }
  ModularLieAlgebra alg{std::move(lie), std::nullopt, {}};
  for (const auto& [i, row] : pres.pmap_override) {
    Vector<GaloisField> v(pres.dim(), 0);
    for (const auto& [k, c] : row) v[k] = field.from_rational(c);
    alg.pmap_override[i] = std::move(v);
  }
  return alg;
}

std::optional<Vector<GaloisField>> solve_p_power(const LieAlgebra<GaloisField>& lie, const Vector<GaloisField>& x) {
  const auto& f = lie.field();
  const std::size_t n = lie.dim();
  const auto target = power(f, lie.ad(x), f.characteristic());
  Matrix<GaloisField> system(n * n, n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto adk = lie.ad(k);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) system(r * n + c, k) = adk(r, c);
  }
  Vector<GaloisField> rhs(n * n, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) rhs[r * n + c] = target(r, c);
  return solve(f, system, rhs);
}

RestrictedStructure compute_p_map(const ModularLieAlgebra& alg) {
  RestrictedStructure rs;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (auto it = alg.pmap_override.find(i); it != alg.pmap_override.end()) {
      rs.pmap.push_back(it->second);
      continue;
    }
    auto y = solve_p_power(alg.lie, alg.lie.basis_vector(i));
    if (!y) throw NotRestrictable(i);
    rs.pmap.push_back(std::move(*y));
  }
  return rs;
}

ModularLieAlgebra restricted_reduction(const LieAlgebraPresentation& pres, std::uint32_t p, unsigned e) {
  auto alg = base_change_mod_p(pres, p, e);
  alg.restricted = compute_p_map(alg);
  return alg;
}

template <class F>
Matrix<F> coadjoint_form(const LieAlgebra<F>& lie, const Vector<F>& chi) {
  const auto& f = lie.field();
  const std::size_t n = lie.dim();
  Matrix<F> b(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : lie.bracket(i, j)) b(i, j) = f.add(b(i, j), f.mul(c, chi[k]));
  return b;
}

template Matrix<RationalField> coadjoint_form(const LieAlgebra<RationalField>&, const Vector<RationalField>&);
template Matrix<GaloisField> coadjoint_form(const LieAlgebra<GaloisField>&, const Vector<GaloisField>&);

Matrix<GaloisField> coadjoint_form(const LieAlgebra<GaloisField>& lie, const GaloisField& f,
                                   const Vector<GaloisField>& chi) {
  const std::size_t n = lie.dim();
  Matrix<GaloisField> b(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : lie.bracket(i, j)) b(i, j) = f.add(b(i, j), f.mul(c, chi[k]));
  return b;
}

std::uint64_t index_sampling_bound(std::size_t n) {
  const std::uint64_t nn = std::max<std::uint64_t>(n, 1);
  return 4 * nn * nn * nn;
}

namespace {

// The deterministic evaluation points: all-ones, then each coordinate functional.
template <class F>
std::vector<Vector<F>> fixed_functionals(const F& f, std::size_t n) {
  std::vector<Vector<F>> out;
  out.emplace_back(n, f.one());
  for (std::size_t k = 0; k < n; ++k) {
    Vector<F> e(n, f.zero());
    e[k] = f.one();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

IndexResult index_generic(const LieAlgebra<GaloisField>& lie, const GaloisField& sampling, unsigned trials,
                          std::uint64_t seed) {
  if (sampling.characteristic() != lie.field().characteristic())
    throw std::invalid_argument("sampling field has the wrong characteristic");
  if (!(sampling == lie.field()) && !lie.field().is_prime_field())
    throw std::invalid_argument("sampling outside the algebra's field needs a prime base field");
  const std::size_t n = lie.dim();
  Rng rng(mix_seed(seed, 0x1d));
  auto points = fixed_functionals(sampling, n);
  for (unsigned t = 0; t < trials; ++t) {
    Vector<GaloisField> chi(n);
    for (auto& c : chi) c = sampling.random(rng);
    points.push_back(std::move(chi));
  }
  std::size_t best = 0;
  for (const auto& chi : points) best = std::max(best, rank(sampling, coadjoint_form(lie, sampling, chi)));
  return {n - best, best, trials, seed, sampling.describe()};
}

IndexResult index_generic(const LieAlgebra<GaloisField>& lie, unsigned trials, std::uint64_t seed) {
  const auto bound = index_sampling_bound(lie.dim());
  if (lie.field().order() >= bound) return index_generic(lie, lie.field(), trials, seed);
  if (!lie.field().is_prime_field())
    throw std::invalid_argument("index sampling needs a prime base field or a field of size >= 4n^3");
  const auto p = lie.field().characteristic();
  return index_generic(lie, GaloisField(p, GaloisField::degree_for_size(p, bound)), trials, seed);
}

IndexResult index_generic(const LieAlgebra<RationalField>& lie, unsigned trials, std::uint64_t seed) {
  const std::size_t n = lie.dim();
  const RationalField q;
  Rng rng(mix_seed(seed, 0x1d));
  auto points = fixed_functionals(q, n);
  for (unsigned t = 0; t < trials; ++t) {
    Vector<RationalField> chi(n);
    for (auto& c : chi) c = q.random(rng);
    points.push_back(std::move(chi));
  }
  std::size_t best = 0;
  for (const auto& chi : points) best = std::max(best, rank(q, coadjoint_form(lie, chi)));
  return {n - best, best, trials, seed, q.describe()};
}

}  // namespace kw1
