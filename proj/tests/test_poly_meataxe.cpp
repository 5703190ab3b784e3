#include <set>

#include "doctest.h"
#include "kw1/errors.hpp"
#include "kw1/meataxe.hpp"
#include "kw1/poly.hpp"
#include "kw1/redenv.hpp"
#include "support.hpp"

using namespace kw1;
using namespace kw1::test;

namespace {

IntPoly to_int(const Poly& a) { return IntPoly(a.begin(), a.end()); }

std::set<IntPoly> brute_factors(const IntPoly& f, std::uint64_t p) {
  std::set<IntPoly> out;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= n; ++d)
    for (const auto& g : monic_polys(d, p))
      if (trial_division_irreducible(g, p) && int_mod(f, g, p).empty()) out.insert(g);
  return out;
}

// det(tI - A) by the Leibniz formula.
IntPoly leibniz_charpoly(const Matrix<GaloisField>& a, std::uint64_t p) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  IntPoly total;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    IntPoly term{1};
    for (std::size_t i = 0; i < n; ++i) {
      IntPoly entry{(p - a(i, perm[i])) % p};
      if (perm[i] == i) entry.push_back(1);
      int_trim(entry);
      term = int_mul(term, entry, p);
    }
    if (total.size() < term.size()) total.resize(term.size(), 0);
    for (std::size_t k = 0; k < term.size(); ++k)
      total[k] = (total[k] + (sign > 0 ? term[k] : (p - term[k]) % p)) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  int_trim(total);
  return total;
}

Matrix<GaloisField> random_matrix(const GaloisField& f, std::size_t n, Rng& rng) {
  Matrix<GaloisField> m(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = f.random(rng);
  return m;
}

// Enumerates every vector of F_p^d.
std::vector<Vector<GaloisField>> all_vectors(std::uint32_t p, std::size_t d) {
  std::vector<Vector<GaloisField>> out;
  std::uint64_t total = checked_pow(p, static_cast<unsigned>(d));
  for (std::uint64_t c = 0; c < total; ++c) {
    Vector<GaloisField> v(d);
    std::uint64_t x = c;
    for (auto& e : v) {
      e = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    out.push_back(v);
  }
  return out;
}

// Number of d x d matrices over F_p commuting with every action matrix.
std::uint64_t brute_commutant_size(const AlgebraModule& m) {
  const auto& f = m.field;
  const std::size_t d = m.dimension;
  std::uint64_t count = 0;
  for (const auto& flat : all_vectors(f.characteristic(), d * d)) {
    Matrix<GaloisField> x(d, d, 0);
    for (std::size_t i = 0; i < d * d; ++i) x(i / d, i % d) = flat[i];
    bool ok = true;
    for (const auto& a : m.action)
      if (!(multiply(f, a, x) == multiply(f, x, a))) {
        ok = false;
        break;
      }
    if (ok) ++count;
  }
  return count;
}

AlgebraModule regular(const std::string& name, std::uint32_t p, const Vector<GaloisField>& chi) {
  return regular_representation(reduced_algebra(envelope(name, p), chi));
}

}  // namespace

TEST_CASE("irreducible factors agree with trial division") {
  Rng rng(41);
  for (const auto& [p, maxdeg] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 7}, {3, 5}, {5, 3}}) {
    const GaloisField f(p);
    for (unsigned d = 1; d <= maxdeg; ++d)
      for (const auto& g : monic_polys(d, p)) {
        const Poly gp(g.begin(), g.end());
        std::set<IntPoly> got;
        for (const auto& h : poly::irreducible_factors(f, gp, rng)) got.insert(to_int(h));
        CHECK(got == brute_factors(g, p));
      }
  }
}

TEST_CASE("factorization over an extension field") {
  const GaloisField f(3, 2);
  Rng rng(42);
  // t^2 + 1 is irreducible over F_3 and splits over F_9.
  const auto fs = poly::irreducible_factors(f, Poly{1, 0, 1}, rng);
  CHECK(fs.size() == 2);
  for (const auto& g : fs) CHECK(poly::degree(g) == 1);
  CHECK(poly::mul(f, fs[0], fs[1]) == Poly{1, 0, 1});
}

TEST_CASE("polynomial arithmetic") {
  const GaloisField f(7);
  const Poly a{3, 0, 1, 6}, b{1, 2};
  const auto [q, r] = poly::divmod(f, a, b);
  CHECK(poly::add(f, poly::mul(f, q, b), r) == a);
  CHECK(poly::degree(r) < 1);
  CHECK(poly::gcd(f, poly::mul(f, a, b), poly::mul(f, b, b)) == poly::monic(f, b));
  CHECK(poly::derivative(f, a) == Poly{0, 2, 4});
  CHECK_THROWS_AS(poly::divmod(f, a, Poly{}), ZeroElement);
  CHECK(poly::powmod(f, poly::x(), mpz_class(7), Poly{1, 0, 1}) == poly::mod(f, Poly{0, 0, 0, 0, 0, 0, 0, 1}, Poly{1, 0, 1}));
  CHECK(poly::degree(Poly{}) < 0);
}

TEST_CASE("charpoly agrees with the Leibniz determinant") {
  Rng rng(43);
  for (std::uint32_t p : {2u, 5u, 7u}) {
    const GaloisField f(p);
    for (std::size_t n = 1; n <= 5; ++n)
      for (int t = 0; t < 6; ++t) {
        auto a = random_matrix(f, n, rng);
        if (t % 2)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0;
        const auto c = poly::charpoly(f, a);
        CHECK(to_int(c) == leibniz_charpoly(a, p));
        const auto z = poly::evaluate(f, c, a);
        CHECK(z == Matrix<GaloisField>(n, n, 0));
      }
  }
}

TEST_CASE("split examples") {
  const auto a1 = split_simples(regular("abelian:1", 3, {0}), 0);
  CHECK(a1.dimensions == std::vector<std::size_t>{1, 1, 1});

  const auto h = split_simples(regular("heisenberg", 3, {0, 0, 1}), 0);
  CHECK(h.dimensions == std::vector<std::size_t>(9, 3));

  const auto s = split_simples(regular("sl2", 3, {0, 0, 0}), 0);
  CHECK(std::set<std::size_t>(s.dimensions.begin(), s.dimensions.end()) == std::set<std::size_t>{1, 2, 3});
  std::size_t total = 0;
  for (auto d : s.dimensions) total += d;
  CHECK(total == 27);

  // h^3 - h = 1 has no root in F_3: the simple modules are 3-dimensional over F_3 with End = F_27.
  const auto n = split_simples(regular("nonabelian2", 3, {1, 0}), 0);
  CHECK(n.dimensions == std::vector<std::size_t>(9, 1));
  for (const auto& fct : n.factors) {
    CHECK(fct.dimension == 3);
    CHECK(fct.endomorphism_degree == 3);
  }
}

TEST_CASE("kept factors are simple with the reported endomorphism field") {
  SplitOptions opts;
  opts.keep_modules = true;
  int checked = 0;
  for (const auto& [name, p, chi] : std::vector<std::tuple<std::string, std::uint32_t, Vector<GaloisField>>>{
           {"sl2", 3, {0, 0, 0}}, {"nonabelian2", 3, {1, 0}}, {"heisenberg", 3, {0, 0, 1}},
           {"remark:1:1", 3, {0, 1, 1}}, {"abelian:2", 2, {1, 0}}, {"borel2", 2, {1, 1, 0}}}) {
    const auto res = split_simples(regular(name, p, chi), 7, opts);
    for (const auto& fct : res.factors) {
      REQUIRE(fct.module.has_value());
      const auto& m = *fct.module;
      CHECK(m.dimension == fct.dimension);
      for (const auto& v : all_vectors(p, m.dimension)) {
        if (std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; })) continue;
        CHECK(spin_dimension(m, v) == m.dimension);
      }
      CHECK(brute_commutant_size(m) == checked_pow(p, fct.endomorphism_degree));
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("property: composition factor dimensions sum to p^n") {
  Rng rng(44);
  int cases = 0;
  const std::vector<std::pair<std::string, std::uint32_t>> algs = {
      {"sl2", 2}, {"sl2", 3}, {"heisenberg", 3}, {"remark:1:1", 2}, {"remark:1:2", 3},
      {"nonabelian2", 5}, {"borel2", 3}, {"gl2", 2}, {"abelian:3", 3}};
  for (int t = 0; t < 108; ++t, ++cases) {
    const auto& [name, p] = algs[t % algs.size()];
    const auto env = envelope(name, p);
    Vector<GaloisField> chi(env.dim());
    for (auto& c : chi) c = env.field().random(rng);
    const auto res = split_simples(regular_representation(reduced_algebra(env, chi)), rng());
    std::size_t total = 0;
    for (auto d : res.dimensions) total += d;
    CHECK(total == checked_pow(p, static_cast<unsigned>(env.dim())));
    std::size_t over_field = 0;
    for (const auto& fct : res.factors) over_field += fct.dimension;
    CHECK(over_field == total);
  }
  CHECK(cases >= 100);
}

TEST_CASE("split budget") {
  SplitOptions opts;
  opts.attempts = 0;
  const auto m = regular("sl2", 3, {0, 0, 0});
  CHECK_THROWS_AS(split_simples(m, 0, opts), SplitBudgetExceeded);
  opts.allow_degraded = true;
  const auto res = split_simples(m, 0, opts);
  CHECK(res.degraded);
  CHECK(std::any_of(res.factors.begin(), res.factors.end(), [](const auto& f) { return !f.certified; }));
}
