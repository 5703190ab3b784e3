#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "kw1/field.hpp"

namespace kw1 {

/// Dense row-major matrix over a field F.
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Element& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Element* row(std::size_t i) { return data_.data() + i * cols_; }
  const Element* row(std::size_t i) const { return data_.data() + i * cols_; }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> data_;
};

template <class F>
using Vector = std::vector<typename F::Element>;

namespace detail {

template <class F>
bool small_prime_field(const F& f) {
  if constexpr (std::is_same_v<F, GaloisField>) {
    return f.is_prime_field() && f.characteristic() < 65536;
  } else {
    (void)f;
    return false;
  }
}

// dst[j] -= c * src[j] for j in [from, n)
template <class F>
void axpy_neg(const F& f, typename F::Element* dst, const typename F::Element* src, const typename F::Element& c,
              std::size_t from, std::size_t n) {
  if constexpr (std::is_same_v<F, GaloisField>) {
    if (f.is_prime_field()) {
      const std::uint64_t p = f.characteristic();
      const std::uint64_t m = p - c;
      for (std::size_t j = from; j < n; ++j)
        if (src[j]) dst[j] = static_cast<std::uint32_t>((dst[j] + m * src[j]) % p);
      return;
    }
  }
  for (std::size_t j = from; j < n; ++j)
    if (!f.is_zero(src[j])) dst[j] = f.sub(dst[j], f.mul(c, src[j]));
}

}  // namespace detail

/// In-place reduced row echelon form.  Returns the pivot columns in order.
template <class F>
std::vector<std::size_t> row_reduce(const F& f, Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!f.is_zero(m(i, c))) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(sel, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      detail::axpy_neg(f, m.row(i), m.row(r), factor, c, cols);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<F> m) {
  return row_reduce(f, m).size();
}

/// Basis of the right kernel {v : m v = 0}; one vector per free column, with
/// a 1 in that column and zeros in the other free columns.
template <class F>
std::vector<Vector<F>> nullspace(const F& f, Matrix<F> m) {
  const auto pivots = row_reduce(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Particular solution of a x = b with every free variable set to zero, or
/// nullopt when the system is inconsistent.
template <class F>
std::optional<Vector<F>> solve(const F& f, const Matrix<F>& a, const Vector<F>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix<F> aug(a.rows(), a.cols() + 1, f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = row_reduce(f, aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vector<F> x(a.cols(), f.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

template <class F>
Matrix<F> identity(const F& f, std::size_t n) {
  Matrix<F> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& m) {
  Matrix<F> t(m.cols(), m.rows(), typename F::Element{});
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class F>
Matrix<F> multiply(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix<F> c(n, m, f.zero());
  if (detail::small_prime_field(f)) {
    if constexpr (std::is_same_v<F, GaloisField>) {
      const std::uint64_t p = f.characteristic();
      std::vector<std::uint64_t> acc(m);
      for (std::size_t i = 0; i < n; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const auto* ar = a.row(i);
        for (std::size_t t = 0; t < k; ++t) {
          const std::uint64_t av = ar[t];
          if (!av) continue;
          const auto* br = b.row(t);
          for (std::size_t j = 0; j < m; ++j) acc[j] += av * br[j];
          if ((t & 0xffff) == 0xffff)
            for (auto& x : acc) x %= p;
        }
        auto* cr = c.row(i);
        for (std::size_t j = 0; j < m; ++j) cr[j] = static_cast<std::uint32_t>(acc[j] % p);
      }
      return c;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      const auto& av = a(i, t);
      if (f.is_zero(av)) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!f.is_zero(b(t, j))) c(i, j) = f.add(c(i, j), f.mul(av, b(t, j)));
    }
  return c;
}

template <class F>
Vector<F> apply(const F& f, const Matrix<F>& a, const Vector<F>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("apply: dimension mismatch");
  Vector<F> out(a.rows(), f.zero());
  if (detail::small_prime_field(f)) {
    if constexpr (std::is_same_v<F, GaloisField>) {
      const std::uint64_t p = f.characteristic();
      for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t acc = 0;
        const auto* ar = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += static_cast<std::uint64_t>(ar[j]) * v[j];
        out[i] = static_cast<std::uint32_t>(acc % p);
      }
      return out;
    }
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!f.is_zero(v[j]) && !f.is_zero(a(i, j))) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  return out;
}

template <class F>
Matrix<F> add(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

template <class F>
Matrix<F> scale(const F& f, const Matrix<F>& a, const typename F::Element& s) {
  Matrix<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.mul(a(i, j), s);
  return c;
}

template <class F>
Matrix<F> power(const F& f, const Matrix<F>& a, std::uint64_t k) {
  Matrix<F> r = identity(f, a.rows());
  Matrix<F> b = a;
  while (k) {
    if (k & 1) r = multiply(f, r, b);
    k >>= 1;
    if (k) b = multiply(f, b, b);
  }
  return r;
}

template <class F>
std::optional<Matrix<F>> inverse(const F& f, const Matrix<F>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: not square");
  Matrix<F> aug(n, 2 * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  const auto pivots = row_reduce(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Incrementally maintained echelon basis of a subspace of F^n, used for
/// spin-ups and membership tests.  Rows are kept fully reduced.
template <class F>
class EchelonBasis {
 public:
  using Element = typename F::Element;

  EchelonBasis(const F& f, std::size_t n) : f_(f), n_(n) {}

  std::size_t dimension() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  const std::vector<Vector<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the basis in place; returns true when v becomes zero.
  bool reduce(Vector<F>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto c = v[pivots_[r]];
      if (f_.is_zero(c)) continue;
      detail::axpy_neg(f_, v.data(), rows_[r].data(), c, 0, n_);
    }
    for (const auto& x : v)
      if (!f_.is_zero(x)) return false;
    return true;
  }

  bool contains(Vector<F> v) const { return reduce(v); }

  /// Adds v to the span; returns false if it was already inside.
  bool insert(Vector<F> v) {
    if (reduce(v)) return false;
    std::size_t piv = 0;
    while (f_.is_zero(v[piv])) ++piv;
    const auto inv = f_.inv(v[piv]);
    for (auto& x : v) x = f_.mul(x, inv);
    for (auto& row : rows_) {
      const auto c = row[piv];
      if (!f_.is_zero(c)) detail::axpy_neg(f_, row.data(), v.data(), c, 0, n_);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

 private:
  F f_;
  std::size_t n_;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace kw1
