#include "kw1/meataxe.hpp"

#include <algorithm>

#include "kw1/errors.hpp"
#include "kw1/poly.hpp"
#include "kw1/rng.hpp"

namespace kw1 {

namespace {

using GF = GaloisField;
using Mat = Matrix<GF>;
using Vec = Vector<GF>;

struct Spin {
  EchelonBasis<GF> echelon;
  std::vector<Vec> raw;
  // raw[k] = action[word.second] * raw[word.first] for k >= 1
  std::vector<std::pair<std::size_t, std::size_t>> words;
};

Spin spin(const GF& f, const std::vector<Mat>& action, std::size_t d, const Vec& v) {
  Spin s{EchelonBasis<GF>(f, d), {}, {}};
  if (!s.echelon.insert(v)) return s;
  s.raw.push_back(v);
  for (std::size_t idx = 0; idx < s.raw.size() && s.raw.size() < d; ++idx) {
    for (std::size_t g = 0; g < action.size() && s.raw.size() < d; ++g) {
      Vec u = apply(f, action[g], s.raw[idx]);
      if (s.echelon.insert(u)) {
        s.raw.push_back(std::move(u));
        s.words.emplace_back(idx, g);
      }
    }
  }
  return s;
}

// Submodule and quotient of m along an invariant subspace given in reduced echelon form.
std::pair<AlgebraModule, AlgebraModule> split_along(const AlgebraModule& m, const EchelonBasis<GF>& sub) {
  const GF& f = m.field;
  const std::size_t d = m.dimension, k = sub.dimension();
  const auto& rows = sub.rows();
  const auto& pivots = sub.pivots();
  std::vector<bool> is_pivot(d, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> rest;
  std::vector<std::size_t> rest_index(d, 0);
  for (std::size_t c = 0; c < d; ++c)
    if (!is_pivot[c]) {
      rest_index[c] = rest.size();
      rest.push_back(c);
    }

  AlgebraModule s{f, k, {}}, q{f, d - k, {}};
  for (const auto& a : m.action) {
    Mat sa(k, k, 0);
    for (std::size_t r = 0; r < k; ++r) {
      const Vec u = apply(f, a, rows[r]);
      for (std::size_t t = 0; t < k; ++t) sa(t, r) = u[pivots[t]];
    }
    Mat qa(d - k, d - k, 0);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      Vec u(d);
      for (std::size_t i = 0; i < d; ++i) u[i] = a(i, rest[j]);
      for (std::size_t t = 0; t < k; ++t) {
        const auto c = u[pivots[t]];
        if (c) detail::axpy_neg(f, u.data(), rows[t].data(), c, 0, d);
      }
      for (std::size_t i : rest) qa(rest_index[i], j) = u[i];
    }
    s.action.push_back(std::move(sa));
    q.action.push_back(std::move(qa));
  }
  return {std::move(s), std::move(q)};
}

// Dimension of End(m) for irreducible m, where kernel = ker g(theta) and v = kernel[0] spins to m.
std::size_t endomorphism_dimension(const AlgebraModule& m, const std::vector<Vec>& kernel, const Spin& s) {
  const GF& f = m.field;
  const std::size_t d = m.dimension;
  if (kernel.size() == 1) return 1;
  Mat b(d, d, 0);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) b(r, c) = s.raw[c][r];
  const auto b_inv = inverse(f, b);
  if (!b_inv) throw std::logic_error("spin basis is singular");
  std::vector<Mat> g;
  for (const auto& a : m.action) g.push_back(multiply(f, *b_inv, multiply(f, a, b)));

  const std::size_t len = m.action.size() * d * d;
  Mat constraints(kernel.size(), len, 0);
  for (std::size_t t = 0; t < kernel.size(); ++t) {
    std::vector<Vec> cols{kernel[t]};
    for (const auto& [src, gen] : s.words) cols.push_back(apply(f, m.action[gen], cols[src]));
    Mat c(d, d, 0);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) c(i, j) = cols[j][i];
    for (std::size_t i = 0; i < m.action.size(); ++i) {
      const Mat lhs = multiply(f, c, g[i]);
      const Mat rhs = multiply(f, m.action[i], c);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t col = 0; col < d; ++col) constraints(t, (i * d + r) * d + col) = f.sub(lhs(r, col), rhs(r, col));
    }
  }
  return kernel.size() - rank(f, std::move(constraints));
}

class Chopper {
 public:
  Chopper(std::uint64_t seed, const SplitOptions& options) : rng_(mix_seed(seed, 0x3a7e)), options_(options) {}

  void chop(const AlgebraModule& m) {
    const GF& f = m.field;
    const std::size_t d = m.dimension;
    if (d == 0) return;
    if (d == 1) {
      record(m, 1, true);
      return;
    }
    std::vector<Mat> pool = m.action;
    const std::size_t generators = pool.size();
    for (unsigned attempt = 0; attempt < options_.attempts; ++attempt) {
      if (generators > 0) {
        const Mat prod =
            multiply(f, pool[uniform_below(rng_, pool.size())], pool[uniform_below(rng_, pool.size())]);
        if (pool.size() < generators + 8)
          pool.push_back(prod);
        else
          pool[generators + uniform_below(rng_, 8)] = prod;
      }
      Mat theta(d, d, 0);
      for (const auto& a : pool) {
        const auto c = f.random(rng_);
        if (!c) continue;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            if (a(i, j)) theta(i, j) = f.add(theta(i, j), f.mul(c, a(i, j)));
      }
      const auto factors = poly::irreducible_factors(f, poly::charpoly(f, theta), rng_);
      for (const auto& g : factors) {
        const std::size_t deg = static_cast<std::size_t>(poly::degree(g));
        if (deg > options_.max_factor_degree) continue;
        const Mat ng = poly::evaluate(f, g, theta);
        const auto kernel = nullspace(f, ng);
        const Spin s = spin(f, m.action, d, kernel.front());
        if (s.echelon.dimension() < d) {
          descend(m, s.echelon);
          return;
        }
        if (kernel.size() != deg) continue;
        std::vector<Mat> transposed;
        for (const auto& a : m.action) transposed.push_back(transpose(a));
        const auto dual_kernel = nullspace(f, transpose(ng));
        const Spin ds = spin(f, transposed, d, dual_kernel.front());
        if (ds.echelon.dimension() < d) {
          Mat ann(ds.echelon.dimension(), d, 0);
          for (std::size_t r = 0; r < ann.rows(); ++r)
            for (std::size_t c = 0; c < d; ++c) ann(r, c) = ds.echelon.rows()[r][c];
          EchelonBasis<GF> sub(f, d);
          for (auto& v : nullspace(f, std::move(ann))) sub.insert(std::move(v));
          descend(m, sub);
          return;
        }
        const std::size_t k = endomorphism_dimension(m, kernel, s);
        record(m, static_cast<unsigned>(k), true);
        return;
      }
    }
    if (!options_.allow_degraded) throw SplitBudgetExceeded(d);
    result.degraded = true;
    record(m, 1, false);
  }

  SplitResult result;

 private:
  void descend(const AlgebraModule& m, const EchelonBasis<GF>& sub) {
    auto [s, q] = split_along(m, sub);
    chop(s);
    chop(q);
  }

  void record(const AlgebraModule& m, unsigned k, bool certified) {
    CompositionFactor cf;
    cf.dimension = m.dimension;
    cf.endomorphism_degree = k;
    cf.certified = certified;
    if (options_.keep_modules) cf.module = m;
    for (unsigned i = 0; i < k; ++i) result.dimensions.push_back(m.dimension / k);
    result.factors.push_back(std::move(cf));
  }

  Rng rng_;
  SplitOptions options_;
};

}  // namespace

std::size_t spin_dimension(const AlgebraModule& m, const Vector<GaloisField>& v) {
  return spin(m.field, m.action, m.dimension, v).echelon.dimension();
}

SplitResult split_simples(const AlgebraModule& m, std::uint64_t seed, const SplitOptions& options) {
  for (const auto& a : m.action)
    if (a.rows() != m.dimension || a.cols() != m.dimension)
      throw std::invalid_argument("action matrix size differs from the module dimension");
  Chopper chopper(seed, options);
  chopper.chop(m);
  SplitResult out = std::move(chopper.result);
  std::sort(out.dimensions.begin(), out.dimensions.end());
  out.working_field = m.field.describe();
  return out;
}

}  // namespace kw1
