#include "doctest.h"
#include "kw1/matrix.hpp"
#include "support.hpp"

using namespace kw1;

namespace {

Matrix<GaloisField> random_matrix(const GaloisField& f, std::size_t r, std::size_t c, Rng& rng, unsigned sparsity) {
  Matrix<GaloisField> m(r, c, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (uniform_below(rng, sparsity) == 0) m(i, j) = f.random(rng);
  return m;
}

// Counts kernel vectors by enumeration.
std::size_t brute_nullity(const GaloisField& f, const Matrix<GaloisField>& m) {
  const std::uint64_t q = f.order();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) total *= q;
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    Vector<GaloisField> v(m.cols());
    std::uint64_t c = code;
    for (auto& x : v) {
      x = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    bool zero = true;
    for (auto x : apply(f, m, v)) zero = zero && x == 0;
    if (zero) ++count;
  }
  std::size_t k = 0;
  while (count > 1) {
    count /= q;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("rank and nullspace agree with enumeration") {
  Rng rng(11);
  for (auto [p, e] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    GaloisField f(p, e);
    for (int t = 0; t < 150; ++t) {
      const std::size_t r = 1 + uniform_below(rng, 4), c = 1 + uniform_below(rng, 4);
      const auto m = random_matrix(f, r, c, rng, 1 + uniform_below(rng, 3));
      const std::size_t k = brute_nullity(f, m);
      CHECK(rank(f, m) == c - k);
      const auto basis = nullspace(f, m);
      CHECK(basis.size() == k);
      for (const auto& v : basis)
        for (auto x : apply(f, m, v)) CHECK(x == 0);
    }
  }
}

TEST_CASE("solve returns a solution with zero free coordinates or reports inconsistency") {
  GaloisField f(7);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + uniform_below(rng, 5), c = 1 + uniform_below(rng, 5);
    const auto a = random_matrix(f, r, c, rng, 2);
    Vector<GaloisField> b(r);
    for (auto& x : b) x = f.random(rng);
    const auto x = solve(f, a, b);
    Matrix<GaloisField> aug(r, c + 1, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) aug(i, j) = a(i, j);
      aug(i, c) = b[i];
    }
    const bool consistent = rank(f, aug) == rank(f, a);
    CHECK(x.has_value() == consistent);
    if (x) CHECK(apply(f, a, *x) == b);
  }
}

TEST_CASE("inverse and multiplication") {
  GaloisField f(5, 2);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 5);
    const auto a = random_matrix(f, n, n, rng, 1);
    const auto inv = inverse(f, a);
    CHECK(inv.has_value() == (rank(f, a) == n));
    if (inv) CHECK(multiply(f, a, *inv) == identity(f, n));
    CHECK(transpose(transpose(a)) == a);
    CHECK(power(f, a, 3) == multiply(f, a, multiply(f, a, a)));
  }
}

TEST_CASE("echelon basis tracks the span") {
  GaloisField f(3);
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    EchelonBasis<GaloisField> e(f, 5);
    std::vector<Vector<GaloisField>> added;
    for (int k = 0; k < 4; ++k) {
      Vector<GaloisField> v(5);
      for (auto& x : v) x = uniform_below(rng, 2) ? f.random(rng) : 0;
      const bool fresh = e.insert(v);
      added.push_back(v);
      Matrix<GaloisField> m(5, added.size(), 0);
      for (std::size_t c = 0; c < added.size(); ++c)
        for (std::size_t i = 0; i < 5; ++i) m(i, c) = added[c][i];
      CHECK(e.dimension() == rank(f, m));
      (void)fresh;
      CHECK(e.contains(v));
    }
  }
}
