#include "kw1/field.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kw1/errors.hpp"

namespace kw1 {

RationalField::Element RationalField::inv(const Element& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  return 1 / a;
}

RationalField::Element RationalField::pow(const Element& a, std::uint64_t k) const {
  Element r = 1;
  Element b = a;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

RationalField::Element RationalField::random(Rng& rng) const {
  return Element(static_cast<long>(uniform_below(rng, 201)) - 100);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint64_t>;  // low-to-high over F_p

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, b = a % p, k = p - 2;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t k, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (k) {
    if (k & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    k >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(p^k) mod f by repeated p-th powering.
Poly frobenius_power_of_x(unsigned k, const Poly& f, std::uint64_t p) {
  Poly h = poly_mod(Poly{0, 1}, f, p);
  for (unsigned i = 0; i < k; ++i) h = poly_powmod(h, p, f, p);
  return h;
}

constexpr std::uint64_t kTableLimit = 1ULL << 20;

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  Poly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  Poly h = frobenius_power_of_x(n, f, p);
  Poly x = poly_mod(Poly{0, 1}, f, p);
  if (h != x) return false;
  for (std::uint64_t r : prime_factors(n)) {
    Poly g = frobenius_power_of_x(n / static_cast<unsigned>(r), f, p);
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    Poly d = poly_gcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

struct GaloisField::Tables {
  std::vector<std::uint32_t> exp;   // size 2(q-1)
  std::vector<std::uint32_t> log;   // size q, log[0] unused
  std::vector<std::uint32_t> zech;  // zech[n] = log(1 + g^n), kNone when 1 + g^n = 0
  std::uint32_t minus_one_log = 0;
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
};

GaloisField::GaloisField(std::uint32_t p, unsigned e) : p_(p), e_(e) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (e == 0) throw InputError("extension degree must be positive");
  long double q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  if (q >= 4294967296.0L) throw InputError("field order exceeds 2^32");
  q_ = static_cast<std::uint64_t>(q);
  if (e == 1) {
    modulus_ = {0, 1};
  } else {
    const bool want_primitive = q_ <= kTableLimit;
    const auto factors = prime_factors(q_ - 1);
    Rng rng(mix_seed(p, e));
    for (;;) {
      std::vector<std::uint32_t> cand(e + 1, 0);
      cand[e] = 1;
      for (unsigned i = 0; i < e; ++i) cand[i] = static_cast<std::uint32_t>(uniform_below(rng, p));
      if (cand[0] == 0) continue;
      if (!is_irreducible_mod_p(cand, p)) continue;
      if (want_primitive) {
        Poly f(cand.begin(), cand.end());
        bool primitive = true;
        for (std::uint64_t r : factors) {
          Poly h = poly_powmod(Poly{0, 1}, (q_ - 1) / r, f, p);
          if (h == Poly{1}) {
            primitive = false;
            break;
          }
        }
        if (!primitive) continue;
      }
      modulus_ = std::move(cand);
      break;
    }
  }
  init();
}

GaloisField::GaloisField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (modulus_.size() < 2 || modulus_.back() != 1) throw InputError("defining polynomial must be monic");
  e_ = static_cast<unsigned>(modulus_.size() - 1);
  if (!is_irreducible_mod_p(modulus_, p)) throw InputError("defining polynomial is reducible");
  long double q = 1;
  for (unsigned i = 0; i < e_; ++i) q *= p;
  if (q >= 4294967296.0L) throw InputError("field order exceeds 2^32");
  q_ = static_cast<std::uint64_t>(q);
  init();
}

void GaloisField::init() {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  feed(p_);
  for (auto c : modulus_) feed(c);
  tag_ = h;
  if (e_ == 1 || q_ > kTableLimit) return;

  // Tables need a primitive generator; the modulus search guarantees a is one
  // only for moduli it chose itself, so find one explicitly.
  auto t = std::make_shared<Tables>();
  const std::uint32_t n = static_cast<std::uint32_t>(q_ - 1);
  Poly f(modulus_.begin(), modulus_.end());
  const auto factors = prime_factors(n);
  std::uint32_t gen = 0;
  for (std::uint32_t g = 2; g < q_ && gen == 0; ++g) {
    auto d = digits(g);
    Poly gp(d.begin(), d.end());
    trim(gp);
    bool ok = true;
    for (std::uint64_t r : factors) {
      if (poly_powmod(gp, n / r, f, p_) == Poly{1}) {
        ok = false;
        break;
      }
    }
    if (ok) gen = g;
  }
  t->exp.resize(2 * static_cast<std::size_t>(n));
  t->log.assign(q_, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    t->exp[k] = cur;
    t->exp[k + n] = cur;
    t->log[cur] = k;
    cur = mul_slow(cur, gen);
  }
  t->zech.assign(n, Tables::kNone);
  for (std::uint32_t k = 0; k < n; ++k) {
    // 1 + g^k computed digit-wise.
    auto d = digits(t->exp[k]);
    d[0] = (d[0] + 1) % p_;
    const std::uint32_t s = pack(d);
    if (s != 0) t->zech[k] = t->log[s];
  }
  t->minus_one_log = (p_ == 2) ? 0 : n / 2;
  tables_ = std::move(t);
}

std::vector<std::uint32_t> GaloisField::digits(Element a) const {
  std::vector<std::uint32_t> d(e_, 0);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

GaloisField::Element GaloisField::pack(const std::vector<std::uint32_t>& d) const {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
  return static_cast<Element>(v);
}

GaloisField::Element GaloisField::mul_slow(Element a, Element b) const {
  auto da = digits(a), db = digits(b);
  std::vector<std::uint64_t> r(2 * e_, 0);
  for (unsigned i = 0; i < e_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < e_; ++j) r[i + j] = (r[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_;
  }
  for (std::size_t k = r.size(); k-- > e_;) {
    const std::uint64_t c = r[k];
    if (!c) continue;
    r[k] = 0;
    for (unsigned i = 0; i < e_; ++i) r[k - e_ + i] = (r[k - e_ + i] + (p_ - c) * modulus_[i]) % p_;
  }
  std::vector<std::uint32_t> out(e_);
  for (unsigned i = 0; i < e_; ++i) out[i] = static_cast<std::uint32_t>(r[i]);
  return pack(out);
}

GaloisField::Element GaloisField::add_ext(Element a, Element b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  if (tables_) {
    const auto& t = *tables_;
    const std::uint32_t n = static_cast<std::uint32_t>(q_ - 1);
    const std::uint32_t la = t.log[a], lb = t.log[b];
    const std::uint32_t diff = lb >= la ? lb - la : lb + n - la;
    const std::uint32_t z = t.zech[diff];
    if (z == Tables::kNone) return 0;
    return t.exp[la + z];
  }
  auto da = digits(a), db = digits(b);
  for (unsigned i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
  return pack(da);
}

GaloisField::Element GaloisField::neg_ext(Element a) const {
  if (a == 0 || p_ == 2) return a;
  if (tables_) return tables_->exp[tables_->log[a] + tables_->minus_one_log];
  auto d = digits(a);
  for (auto& c : d) c = c ? p_ - c : 0;
  return pack(d);
}

GaloisField::Element GaloisField::mul_ext(Element a, Element b) const {
  if (a == 0 || b == 0) return 0;
  if (tables_) return tables_->exp[tables_->log[a] + tables_->log[b]];
  return mul_slow(a, b);
}

GaloisField::Element GaloisField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (e_ > 1 && tables_) {
    const std::uint32_t n = static_cast<std::uint32_t>(q_ - 1);
    const std::uint32_t l = tables_->log[a];
    return tables_->exp[l == 0 ? 0 : n - l];
  }
  return pow(a, q_ - 2);
}

GaloisField::Element GaloisField::pow(Element a, std::uint64_t k) const {
  Element r = 1;
  Element b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

GaloisField::Element GaloisField::from_rational(const mpq_class& q) const {
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (den == 0) throw DenominatorDivisibleByP(q.get_str(), p_);
  if (num < 0) num += p_;
  const Element n = static_cast<Element>(num.get_ui());
  const Element d = static_cast<Element>(den.get_ui());
  return mul(n, inv(d));
}

std::string GaloisField::to_string(Element a) const {
  if (e_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (unsigned k = e_; k-- > 0;) {
    if (!d[k]) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0) {
      os << d[k];
      continue;
    }
    if (d[k] != 1) os << d[k] << '*';
    os << 'a';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

std::string GaloisField::describe() const {
  if (e_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")";
}

std::string GaloisField::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = modulus_.size(); k-- > 0;) {
    const auto c = modulus_[k];
    if (!c) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 'a';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

unsigned GaloisField::degree_for_size(std::uint32_t p, std::uint64_t bound) {
  unsigned e = 1;
  long double q = p;
  while (q < static_cast<long double>(bound)) {
    q *= p;
    ++e;
  }
  return e;
}

}  // namespace kw1
