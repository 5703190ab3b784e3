#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kw1/center.hpp"
#include "kw1/io.hpp"
#include "kw1/rng.hpp"

namespace kw1::test {

inline ModularEnvelope envelope(const std::string& example, std::uint32_t p, unsigned e = 1) {
  return ModularEnvelope(restricted_reduction(builtin_example(example), p, e));
}

// Dense polynomials over F_p as plain integers, low to high; kept separate from the library code.
using IntPoly = std::vector<std::uint64_t>;

inline void int_trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline IntPoly int_mod(IntPoly a, const IntPoly& m, std::uint64_t p) {
  int_trim(a);
  std::uint64_t inv = 1;
  while (m.back() * inv % p != 1) ++inv;
  while (a.size() >= m.size()) {
    const std::uint64_t c = a.back() * inv % p;
    const std::size_t s = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[s + i] = (a[s + i] + (p - c) * m[i]) % p;
    int_trim(a);
  }
  return a;
}

inline IntPoly int_mul(const IntPoly& a, const IntPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  int_trim(r);
  return r;
}

// Every monic polynomial of the given degree.
inline std::vector<IntPoly> monic_polys(unsigned degree, std::uint64_t p) {
  std::vector<IntPoly> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    IntPoly f(degree + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < degree; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[degree] = 1;
    out.push_back(f);
  }
  return out;
}

inline bool trial_division_irreducible(const IntPoly& f, std::uint64_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= n; ++d)
    for (const auto& g : monic_polys(d, p))
      if (int_mod(f, g, p).empty()) return false;
  return n >= 1;
}

}  // namespace kw1::test
