#include "doctest.h"
#include "kw1/errors.hpp"
#include "kw1/verdict.hpp"
#include "support.hpp"

using namespace kw1;
using namespace kw1::test;

namespace {

const std::vector<std::string> kSuite = {"abelian:2", "nonabelian2", "heisenberg", "sl2", "gl2", "borel2",
                                         "remark:1:1", "remark:1:2", "remark:2:3"};

std::vector<std::string> render_all(const ModularEnvelope& env, const std::vector<ModularElement>& v) {
  std::vector<std::string> out;
  for (const auto& a : v) out.push_back(env.U().render(a));
  return out;
}

XiPolynomial xi_poly(const ModularEnvelope& env, const std::string& text) {
  return env.U().parse_symmetric(text);
}

ModularElement random_element(const ModularEnvelope& env, Rng& rng, unsigned max_degree) {
  const auto& U = env.U();
  TermAccumulator<GaloisField> acc(env.field());
  for (int t = 0; t < 4; ++t) {
    Monomial m;
    const unsigned d = static_cast<unsigned>(uniform_below(rng, max_degree + 1));
    for (unsigned k = 0; k < d; ++k) m.add(uniform_below(rng, U.dim()), 1);
    acc.add(m, static_cast<std::uint32_t>(uniform_below(rng, env.field().order())));
  }
  return acc.finish<EnvelopingKind>(U.dim(), U.tag());
}

bool in_span(const ModularEnvelope& env, const std::vector<ModularElement>& basis, const ModularElement& a) {
  std::vector<Monomial> cols;
  auto index = [&](const Monomial& m) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == m) return i;
    cols.push_back(m);
    return cols.size() - 1;
  };
  for (const auto& b : basis)
    for (const auto& [m, c] : b.terms()) index(m);
  for (const auto& [m, c] : a.terms()) index(m);
  Matrix<GaloisField> with(basis.size() + 1, cols.size(), 0);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (const auto& [m, c] : basis[r].terms()) with(r, index(m)) = c;
  Matrix<GaloisField> without = with;
  for (const auto& [m, c] : a.terms()) with(basis.size(), index(m)) = c;
  return rank(env.field(), with) == rank(env.field(), without);
}

}  // namespace

TEST_CASE("p-center generators") {
  const auto r = envelope("remark:1:1", 5);
  CHECK(render_all(r, p_center_generators(r).xi) == std::vector<std::string>{"h^5 + 4*h", "x^5", "y^5"});
  const auto h = envelope("heisenberg", 3);
  CHECK(render_all(h, p_center_generators(h).xi) == std::vector<std::string>{"x^3", "y^3", "z^3"});
  const auto a = envelope("abelian:2", 2);
  CHECK(render_all(a, p_center_generators(a).xi) == std::vector<std::string>{"x^2", "y^2"});
}

TEST_CASE("property: xi centrality and symbols for p in 2, 3, 5") {
  int cases = 0;
  for (const auto& name : kSuite)
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const auto env = envelope(name, p);
      const auto xi = p_center_generators(env).xi;
      for (std::size_t i = 0; i < env.dim(); ++i) {
        CHECK(env.U().principal_symbol(xi[i]) == env.U().as_symmetric(env.U().monomial(Monomial::unit(i, p), 1)));
        for (std::size_t j = 0; j < env.dim(); ++j, ++cases)
          CHECK(env.U().bracket(env.U().generator(j), xi[i]).is_zero());
      }
    }
  CHECK(cases >= 100);
}

TEST_CASE("a wrong p-map override is caught") {
  auto pres = builtin_example("heisenberg");
  pres.pmap_override[2][0] = 1;
  CHECK_THROWS_AS(p_center_generators(ModularEnvelope(restricted_reduction(pres, 3))), CentralityFailure);
}

TEST_CASE("zp_coordinates examples") {
  const auto env = envelope("remark:1:1", 3);
  const auto& U = env.U();
  const auto x4 = zp_coordinates(env, U.parse("x^4"));
  REQUIRE(x4.coordinates.size() == 1);
  CHECK(x4.coordinates.begin()->first == Monomial::unit(1));
  CHECK(x4.coordinates.begin()->second == xi_poly(env, "x"));

  const auto h3 = zp_coordinates(env, U.parse("h^3"));
  REQUIRE(h3.coordinates.size() == 2);
  CHECK(h3.coordinates.at(Monomial()) == xi_poly(env, "h"));
  CHECK(h3.coordinates.at(Monomial::unit(0)) == xi_poly(env, "1"));

  const auto red = zp_coordinates(env, U.parse("h^2*x*y^2"));
  REQUIRE(red.coordinates.size() == 1);
  CHECK(red.coordinates.begin()->second == xi_poly(env, "1"));
}

TEST_CASE("property: reassembly returns the input") {
  Rng rng(31);
  for (const auto& name : kSuite)
    for (std::uint32_t p : {2u, 3u}) {
      const auto env = envelope(name, p);
      for (int t = 0; t < 100; ++t) {
        const auto a = random_element(env, rng, 2 * p + 1);
        const auto v = zp_coordinates(env, a);
        for (const auto& [m, c] : v.coordinates) CHECK(m.is_reduced(p));
        CHECK(reassemble(env, v) == a);
      }
    }
}

TEST_CASE("center_basis_bounded examples") {
  const auto r = envelope("remark:1:1", 3);
  const auto cb = center_basis_bounded(r, 4);
  CHECK(render_all(r, cb.elements) ==
        std::vector<std::string>{"1", "y^3", "x*y^2", "x^2*y", "x^3", "h^3 + 2*h"});
  CHECK(cb.stabilized);
  CHECK(cb.rank_at_bound == 3);

  const auto a = envelope("abelian:2", 2);
  CHECK(render_all(a, center_basis_bounded(a, 1).elements) == std::vector<std::string>{"1", "y", "x"});
  const auto h = envelope("heisenberg", 3);
  CHECK(render_all(h, center_basis_bounded(h, 1).elements) == std::vector<std::string>{"1", "z"});

  CHECK_THROWS_AS(center_basis_bounded(envelope("gl2", 5), 8, CenterOptions{100}), DegreeBoundTooLargeForMemory);
}

TEST_CASE("center elements commute with everything and are independent") {
  for (const auto& [name, p] :
       std::vector<std::pair<std::string, std::uint32_t>>{{"sl2", 3}, {"gl2", 3}, {"borel2", 3}, {"remark:2:3", 5}}) {
    const auto env = envelope(name, p);
    const auto cb = center_basis_bounded(env, default_degree_bound(env.dim(), p));
    for (std::size_t k = 0; k < cb.elements.size(); ++k) {
      const auto& z = cb.elements[k];
      CHECK(*z.coefficient(z.leading_term().first) == 1);
      if (k > 0) CHECK(deglex_less(cb.elements[k - 1].leading_term().first, z.leading_term().first));
      for (std::size_t i = 0; i < env.dim(); ++i) CHECK(env.U().bracket(env.U().generator(i), z).is_zero());
    }
  }
}

TEST_CASE("rank examples") {
  const auto r = envelope("remark:1:1", 3);
  CHECK(rank_over_p_center(r, center_basis_bounded(r, 4), 0).rank == 3);
  const auto a = envelope("abelian:2", 3);
  CHECK(rank_over_p_center(a, center_basis_bounded(a, 3), 0).rank == 9);
}

TEST_CASE("sl2 at p = 5: the Casimir generates a rank-5 extension") {
  const auto env = envelope("sl2", 5);
  const auto& U = env.U();
  const auto casimir = U.parse("h^2 + 2*h + 4*f*e");
  for (std::size_t i = 0; i < 3; ++i) CHECK(U.bracket(U.generator(i), casimir).is_zero());
  const auto cb = center_basis_bounded(env, 8);
  CHECK(cb.elements.size() == 11);
  CHECK(in_span(env, cb.elements, casimir));
  CHECK(in_span(env, cb.elements, U.power(casimir, 4)));
  CHECK(rank_over_p_center(env, cb, 0).rank == 5);

  // Oracle: specialize the xi-coordinates of 1, C, ..., C^4 at a random point and take the rank.
  const GaloisField big(5, 6);
  Rng rng(5);
  std::vector<std::uint32_t> point(3);
  for (auto& v : point) v = big.random(rng);
  std::vector<Monomial> cols;
  std::vector<std::map<std::size_t, std::uint32_t>> rows;
  auto pw = U.one();
  for (int k = 0; k < 6; ++k) {
    std::map<std::size_t, std::uint32_t> row;
    for (const auto& [m, poly] : zp_coordinates(env, pw).coordinates) {
      std::size_t c = 0;
      while (c < cols.size() && cols[c] != m) ++c;
      if (c == cols.size()) cols.push_back(m);
      std::uint32_t s = 0;
      for (const auto& [xm, coef] : poly.terms()) {
        std::uint32_t t = coef;
        for (std::size_t i = 0; i < 3; ++i) t = big.mul(t, big.pow(point[i], xm[i]));
        s = big.add(s, t);
      }
      row[c] = s;
    }
    rows.push_back(row);
    pw = U.multiply(pw, casimir);
  }
  Matrix<GaloisField> m(rows.size(), cols.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) m(i, c) = v;
  CHECK(rank(big, m) == 5);
}

TEST_CASE("property: rank is monotone in D and bounded by p^ind") {
  for (const auto& [name, p] : std::vector<std::pair<std::string, std::uint32_t>>{
           {"remark:1:1", 3}, {"heisenberg", 3}, {"sl2", 3}, {"nonabelian2", 5}, {"borel2", 3}}) {
    const auto env = envelope(name, p);
    const auto ind = index_generic(env.algebra().lie, 3, 0).index;
    std::uint64_t prev = 0;
    for (unsigned D = 1; D <= 2 * p - 2; ++D) {
      const auto cb = center_basis_bounded(env, D, CenterOptions{6000, 0, std::nullopt, true});
      const auto r = rank_over_p_center(env, cb, 0, default_sampling_field(p, env.dim(), 2 * p - 2)).rank;
      CHECK(r >= prev);
      CHECK(r <= checked_pow(p, static_cast<unsigned>(ind)));
      prev = r;
    }
  }
}

TEST_CASE("the center is larger than the p-center") {
  const auto env = envelope("remark:1:1", 3);
  const auto& U = env.U();
  const auto cb = center_basis_bounded(env, 4);
  const auto xy2 = U.parse("x*y^2");
  CHECK(std::find(cb.elements.begin(), cb.elements.end(), xy2) != cb.elements.end());
  const auto coords = zp_coordinates(env, xy2);
  CHECK(coords.coordinates.size() == 1);
  CHECK(coords.coordinates.begin()->second == xi_poly(env, "1"));
  CHECK_FALSE(in_p_center_subalgebra(env, xy2));
  for (const auto& xi : p_center_generators(env).xi) CHECK(in_p_center_subalgebra(env, xi));
  CHECK(in_p_center_subalgebra(env, U.multiply(U.parse("x^3"), U.parse("h^3 - h + 2"))));
}

TEST_CASE("fraction field degree") {
  const auto r11 = envelope("remark:1:1", 3);
  const auto d11 = fraction_field_degree(r11, r11.U().parse("x"), r11.U().parse("y"), 6, 0);
  CHECK(d11.degree == 3);
  CHECK(d11.conclusive);
  const auto r12 = envelope("remark:1:2", 5);
  CHECK(fraction_field_degree(r12, r12.U().parse("x^2"), r12.U().parse("y"), 8, 0).degree == 5);
  const auto h = envelope("heisenberg", 3);
  CHECK(fraction_field_degree(h, h.U().parse("z"), h.U().parse("z"), 4, 0).degree == 1);
  CHECK_THROWS_AS(fraction_field_degree(r11, r11.U().parse("x"), r11.U().parse("x^2"), 4, 0), WeightMismatch);
  CHECK_THROWS_AS(fraction_field_degree(r11, r11.U().parse("h"), r11.U().parse("x"), 4, 0), WeightMismatch);
  const auto inc = fraction_field_degree(r11, r11.U().parse("x"), r11.U().parse("y"), 2, 0);
  CHECK_FALSE(inc.conclusive);
  CHECK(inc.degree == 3);
}

TEST_CASE("fraction degree equals rank on the weighted family") {
  for (const auto& [n, m] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}, {2, 3}})
    for (std::uint32_t p : {3u, 5u}) {
      if ((n * m) % p == 0) continue;
      const auto env = envelope("remark:" + std::to_string(n) + ":" + std::to_string(m), p);
      const auto& U = env.U();
      const auto phi = U.power(U.parse("x"), m), psi = U.power(U.parse("y"), n);
      const auto d = fraction_field_degree(env, phi, psi, 2 * p, 0);
      const auto cb = center_basis_bounded(env, 2 * p - 2);
      CHECK(d.degree == p);
      CHECK(rank_over_p_center(env, cb, 0).rank == d.degree);
    }
}

TEST_CASE("rank over Frobenius subrings") {
  const auto ring = polynomial_ring(2, 3);
  const auto x = ring.U().as_symmetric(ring.U().generator(0));
  const auto y = ring.U().as_symmetric(ring.U().generator(1));
  CHECK(rank_over_frobenius_subring(2, {}, 3, 6, 0) == 9);
  CHECK(rank_over_frobenius_subring(2, {x}, 3, 6, 0) == 3);
  CHECK(rank_over_frobenius_subring(2, {x, y}, 3, 6, 0) == 1);
  CHECK_THROWS_AS(rank_over_frobenius_subring(2, {x}, 3, 1, 0), StabilizationNotReached);
}

TEST_CASE("degree bounds and sampling fields") {
  CHECK(default_degree_bound(3, 5) == 8);
  CHECK(default_degree_bound(4, 5) == 5);
  CHECK(checked_pow(3, 4) == 81);
  CHECK_THROWS(checked_pow(10, 30));
  const auto f = default_sampling_field(3, 3, 4);
  CHECK(f.order() >= 4 * 27 * 6);
  CHECK(f.order() / 3 < 4 * 27 * 6);
}

TEST_CASE("kw1_verdict examples") {
  const auto s = kw1_verdict(envelope("sl2", 5));
  CHECK(s.ind == 1);
  CHECK(s.degree_bound == 8);
  CHECK(s.rank == 5);
  CHECK(s.m_upper == 5u);
  CHECK(s.m_lower == 5);
  CHECK(s.verdict == Verdict::Verified);

  const auto r = kw1_verdict(envelope("remark:1:1", 3));
  CHECK(r.rank == 3);
  CHECK(r.m_upper_text == "3");
  CHECK(r.verdict == Verdict::Verified);

  VerdictOptions low;
  low.degree_bound = 1;
  const auto i = kw1_verdict(envelope("remark:1:1", 3), low);
  CHECK(i.rank == 1);
  CHECK(i.m_upper_text == "sqrt(27)");
  CHECK(i.verdict == Verdict::Inconclusive);
  CHECK(i.m_lower <= 3);

  VerdictOptions ext;
  ext.extension_degree = 4;
  const auto e = kw1_verdict(envelope("heisenberg", 3), ext);
  CHECK(e.e == 4);
  CHECK(e.verdict == Verdict::Verified);
}
