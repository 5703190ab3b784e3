#include "kw1/poly.hpp"

#include <algorithm>

#include "kw1/errors.hpp"

namespace kw1::poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly x() { return {0, 1}; }

Poly add(const GaloisField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly sub(const GaloisField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly mul(const GaloisField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j]) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const GaloisField& f, const Poly& a, const Poly& b) {
  if (b.empty()) throw ZeroElement();
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  const auto lead_inv = f.inv(b.back());
  for (std::size_t k = r.size(); k-- >= b.size();) {
    const auto c = f.mul(r[k], lead_inv);
    q[k - (b.size() - 1)] = c;
    if (!c) continue;
    const std::size_t shift = k - (b.size() - 1);
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = f.sub(r[shift + j], f.mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly mod(const GaloisField& f, const Poly& a, const Poly& b) { return divmod(f, a, b).second; }

Poly monic(const GaloisField& f, const Poly& a) {
  if (a.empty()) return a;
  const auto inv = f.inv(a.back());
  Poly r = a;
  for (auto& c : r) c = f.mul(c, inv);
  return r;
}

Poly gcd(const GaloisField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Poly derivative(const GaloisField& f, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1, 0);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = f.mul(f.from_int(static_cast<std::int64_t>(i)), a[i]);
  trim(r);
  return r;
}

Poly powmod(const GaloisField& f, const Poly& base, const mpz_class& k, const Poly& m) {
  Poly result{1};
  result = mod(f, result, m);
  Poly b = mod(f, base, m);
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(f, mul(f, result, result), m);
    if (mpz_tstbit(k.get_mpz_t(), i)) result = mod(f, mul(f, result, b), m);
  }
  return result;
}

namespace {

bool poly_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// c(t) with only exponents divisible by p; returns its p-th root.
Poly pth_root(const GaloisField& f, const Poly& c) {
  const std::uint32_t p = f.characteristic();
  const std::uint64_t root_exp = f.order() / p;
  Poly r;
  for (std::size_t i = 0; i < c.size(); i += p) r.push_back(f.pow(c[i], root_exp));
  trim(r);
  return r;
}

// Pairwise coprime squarefree parts whose product has the same roots as a.
void squarefree_parts(const GaloisField& f, Poly a, std::vector<Poly>& out) {
  a = monic(f, a);
  if (degree(a) <= 0) return;
  Poly d = derivative(f, a);
  if (d.empty()) {
    squarefree_parts(f, pth_root(f, a), out);
    return;
  }
  Poly c = gcd(f, a, d);
  Poly w = divmod(f, a, c).first;
  while (degree(w) > 0) {
    Poly y = gcd(f, w, c);
    Poly part = divmod(f, w, y).first;
    if (degree(part) > 0) out.push_back(monic(f, part));
    w = y;
    c = divmod(f, c, y).first;
  }
  if (degree(c) > 0) squarefree_parts(f, pth_root(f, c), out);
}

void equal_degree_split(const GaloisField& f, const Poly& g, unsigned d, Rng& rng, std::vector<Poly>& out) {
  const int n = degree(g);
  if (n <= static_cast<int>(d)) {
    out.push_back(monic(f, g));
    return;
  }
  const std::uint64_t q = f.order();
  mpz_class exponent;
  if (f.characteristic() != 2) {
    mpz_ui_pow_ui(exponent.get_mpz_t(), q, d);
    exponent = (exponent - 1) / 2;
  }
  for (;;) {
    Poly a(n, 0);
    for (auto& c : a) c = f.random(rng);
    trim(a);
    if (degree(a) <= 0) continue;
    Poly b;
    if (f.characteristic() == 2) {
      // absolute trace a + a^2 + ... + a^(2^(k d - 1)), k = log2 q
      const unsigned steps = f.degree() * d;
      Poly cur = mod(f, a, g);
      b = cur;
      for (unsigned i = 1; i < steps; ++i) {
        cur = mod(f, mul(f, cur, cur), g);
        b = add(f, b, cur);
      }
    } else {
      b = sub(f, powmod(f, a, exponent, g), Poly{1});
    }
    Poly h = gcd(f, g, b);
    if (degree(h) > 0 && degree(h) < n) {
      equal_degree_split(f, h, d, rng, out);
      equal_degree_split(f, divmod(f, g, h).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Poly> irreducible_factors(const GaloisField& f, const Poly& a, Rng& rng) {
  Poly t = a;
  trim(t);
  if (t.empty()) throw ZeroElement();
  std::vector<Poly> parts;
  squarefree_parts(f, t, parts);
  std::vector<Poly> out;
  const mpz_class q = static_cast<unsigned long>(f.order());
  for (Poly g : parts) {
    Poly h = x();
    for (unsigned d = 1; degree(g) > 0; ++d) {
      if (2 * static_cast<int>(d) > degree(g)) {
        out.push_back(g);
        break;
      }
      h = powmod(f, h, q, g);
      Poly common = gcd(f, g, sub(f, h, x()));
      if (degree(common) > 0) {
        equal_degree_split(f, common, d, rng, out);
        g = divmod(f, g, common).first;
        h = mod(f, h, g);
      }
    }
  }
  std::sort(out.begin(), out.end(), poly_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Poly charpoly(const GaloisField& f, const Matrix<GaloisField>& a) {
  const std::size_t n = a.rows();
  Matrix<GaloisField> h = a;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (h(i, j)) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    const auto inv = f.inv(h(j + 1, j));
    for (std::size_t r = j + 2; r < n; ++r) {
      const auto u = f.mul(h(r, j), inv);
      if (!u) continue;
      detail::axpy_neg(f, h.row(r), h.row(j + 1), u, 0, n);
      for (std::size_t i = 0; i < n; ++i)
        if (h(i, r)) h(i, j + 1) = f.add(h(i, j + 1), f.mul(u, h(i, r)));
    }
  }
  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = mul(f, Poly{f.neg(h(m - 1, m - 1)), 1}, p[m - 1]);
    auto prod = f.one();
    for (std::size_t i = m - 1; i >= 1; --i) {
      prod = f.mul(prod, h(i, i - 1));
      if (!prod) break;
      const auto c = f.mul(h(i - 1, m - 1), prod);
      if (c) p[m] = sub(f, p[m], mul(f, Poly{c}, p[i - 1]));
    }
  }
  return p[n];
}

Matrix<GaloisField> evaluate(const GaloisField& f, const Poly& g, const Matrix<GaloisField>& a) {
  const std::size_t n = a.rows();
  Matrix<GaloisField> r(n, n, 0);
  for (std::size_t k = g.size(); k-- > 0;) {
    r = multiply(f, r, a);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = f.add(r(i, i), g[k]);
  }
  return r;
}

}  // namespace kw1::poly
