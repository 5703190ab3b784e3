#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kw1/field.hpp"
#include "kw1/lie_algebra.hpp"
#include "kw1/matrix.hpp"

namespace kw1 {

inline constexpr std::size_t kMaxDim = 16;

/// Exponent vector (a_0, ..., a_{n-1}) of the ordered PBW monomial
/// x_0^{a_0} ... x_{n-1}^{a_{n-1}}.  Entries past the algebra's dimension are zero.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  static Monomial unit(std::size_t i, unsigned k = 1) {
    Monomial m;
    m.set(i, k);
    return m;
  }

  std::uint16_t operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned v);
  void add(std::size_t i, int delta) { set(i, static_cast<unsigned>(static_cast<int>(exps_[i]) + delta)); }

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  bool is_one() const { return degree() == 0; }
  /// Smallest / largest index with a nonzero exponent (kMaxDim when none).
  std::size_t min_index() const;
  std::size_t max_index() const;
  /// Every exponent below p.
  bool is_reduced(unsigned p) const;

  Monomial operator+(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }

  std::size_t hash() const {
    std::uint64_t w[kMaxDim / 4];
    std::memcpy(w, exps_.data(), sizeof(w));
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (auto x : w) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint16_t, kMaxDim> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Degree-lexicographic order: larger total degree is larger; ties compare
/// a_0 first, larger exponent larger.
inline bool deglex_less(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (std::size_t i = 0; i < kMaxDim; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

struct DegLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return deglex_less(a, b); }
};

struct EnvelopingKind {};
struct SymmetricKind {};

inline constexpr int kDegreeOfZero = INT_MIN;

/// Sparse linear combination of monomials with no zero coefficients, sorted
/// ascending in degree-lexicographic order.  Kind separates U(g) from Sym(g).
template <class F, class Kind>
class SparseTerms {
 public:
  using Element = typename F::Element;
  using Term = std::pair<Monomial, Element>;

  SparseTerms() = default;
  SparseTerms(std::size_t dim, std::uint64_t tag) : dim_(dim), tag_(tag) {}
  SparseTerms(std::size_t dim, std::uint64_t tag, std::vector<Term> sorted_terms)
      : dim_(dim), tag_(tag), terms_(std::move(sorted_terms)) {}

  std::size_t dim() const { return dim_; }
  std::uint64_t field_tag() const { return tag_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Maximal total degree; kDegreeOfZero for the zero element.
  int degree() const { return terms_.empty() ? kDegreeOfZero : static_cast<int>(terms_.back().first.degree()); }
  const Term& leading_term() const { return terms_.back(); }

  const Element* coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return deglex_less(t.first, x); });
    if (it == terms_.end() || it->first != m) return nullptr;
    return &it->second;
  }

  bool operator==(const SparseTerms& o) const { return dim_ == o.dim_ && tag_ == o.tag_ && terms_ == o.terms_; }
  bool operator!=(const SparseTerms& o) const { return !(*this == o); }

 private:
  std::size_t dim_ = 0;
  std::uint64_t tag_ = 0;
  std::vector<Term> terms_;
};

template <class F>
using EnvelopingElement = SparseTerms<F, EnvelopingKind>;
template <class F>
using SymmetricPolynomial = SparseTerms<F, SymmetricKind>;

/// Hash-map accumulator that produces canonical SparseTerms.
template <class F>
class TermAccumulator {
 public:
  using Element = typename F::Element;

  explicit TermAccumulator(const F& f) : f_(f) {}

  void add(const Monomial& m, const Element& c) {
    if (f_.is_zero(c)) return;
    auto [it, inserted] = map_.try_emplace(m, c);
    if (!inserted) it->second = f_.add(it->second, c);
  }
  template <class Kind>
  void add(const SparseTerms<F, Kind>& a, const Element& scale) {
    for (const auto& [m, c] : a.terms()) add(m, f_.mul(c, scale));
  }
  template <class Kind>
  void add(const SparseTerms<F, Kind>& a) {
    for (const auto& [m, c] : a.terms()) add(m, c);
  }

  template <class Kind>
  SparseTerms<F, Kind> finish(std::size_t dim, std::uint64_t tag) {
    std::vector<typename SparseTerms<F, Kind>::Term> terms;
    terms.reserve(map_.size());
    for (auto& [m, c] : map_)
      if (!f_.is_zero(c)) terms.emplace_back(m, std::move(c));
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return deglex_less(a.first, b.first); });
    map_.clear();
    return SparseTerms<F, Kind>(dim, tag, std::move(terms));
  }

 private:
  const F& f_;
  std::unordered_map<Monomial, Element, MonomialHash> map_;
};

/// Renders terms in descending degree-lexicographic order, e.g. "3*h^2*x + 1".
template <class F, class Kind>
std::string render_terms(const F& f, const SparseTerms<F, Kind>& a, const std::vector<std::string>& labels);

std::string render_monomial(const Monomial& m, const std::vector<std::string>& labels);

/// The universal enveloping algebra U(g) in PBW normal form, with the
/// commutative Sym(g) operations that its associated graded needs.
///
/// Products are straightened by the rewriting x_j x_k = x_k x_j + [x_j, x_k]
/// for j > k.  The table of products x_j * (normal monomial) is memoized and
/// shared between copies; it is a cache and never changes results.
template <class F>
class EnvelopingAlgebra {
 public:
  using Element = typename F::Element;
  using Elem = EnvelopingElement<F>;
  using Sym = SymmetricPolynomial<F>;

  struct MemoEntry {
    std::size_t generator;
    Monomial monomial;
    Elem product;
  };

  explicit EnvelopingAlgebra(LieAlgebra<F> lie);

  const LieAlgebra<F>& lie() const { return lie_; }
  const F& field() const { return lie_.field(); }
  std::size_t dim() const { return lie_.dim(); }
  std::uint64_t tag() const { return lie_.field().tag(); }

  Elem zero() const { return Elem(dim(), tag()); }
  Elem one() const { return constant(field().one()); }
  Elem constant(const Element& c) const;
  Elem generator(std::size_t i) const;
  Elem monomial(const Monomial& m, const Element& c) const;
  Elem from_vector(const Vector<F>& v) const;

  template <class Kind>
  SparseTerms<F, Kind> add(const SparseTerms<F, Kind>& a, const SparseTerms<F, Kind>& b) const;
  template <class Kind>
  SparseTerms<F, Kind> sub(const SparseTerms<F, Kind>& a, const SparseTerms<F, Kind>& b) const;
  template <class Kind>
  SparseTerms<F, Kind> scale(const SparseTerms<F, Kind>& a, const Element& c) const;
  template <class Kind>
  SparseTerms<F, Kind> top_degree_part(const SparseTerms<F, Kind>& a) const;

  /// PBW normal form of a*b.  Throws CoefficientFieldMismatch.
  Elem multiply(const Elem& a, const Elem& b) const;
  /// ab - ba.
  Elem bracket(const Elem& a, const Elem& b) const;
  Elem power(const Elem& a, unsigned k) const;
  /// x_j * a.
  Elem left_multiply(std::size_t j, const Elem& a) const;
  /// (normal monomial m) * a.
  Elem monomial_times(const Monomial& m, const Elem& a) const;
  /// Product of generators in the given order.
  Elem word(const std::vector<std::size_t>& letters) const;

  /// Sum over distinct orderings of each monomial's letters divided by their
  /// number.  Throws FactorialNotInvertible when p <= degree.
  Elem symmetrize(const Sym& f) const;
  /// Top-degree part read in Sym(g).  Throws ZeroElement.
  Sym principal_symbol(const Elem& a) const;
  /// lambda with [x_i, a] = lambda_i a for all i, if such a weight exists.
  std::optional<Vector<F>> semi_invariant_weight(const Elem& a) const;
  /// Same for the adjoint (Poisson) action on Sym(g).
  std::optional<Vector<F>> semi_invariant_weight(const Sym& f) const;

  Sym sym_one() const;
  Sym sym_generator(std::size_t i) const;
  Sym sym_multiply(const Sym& a, const Sym& b) const;
  /// Adjoint action of x_i on Sym(g): sum_j [x_i, x_j] d f / d x_j.
  Sym sym_adjoint(std::size_t i, const Sym& f) const;
  Elem as_enveloping(const Sym& f) const { return Elem(f.dim(), f.field_tag(), f.terms()); }
  Sym as_symmetric(const Elem& a) const { return Sym(a.dim(), a.field_tag(), a.terms()); }

  std::string render(const Elem& a) const { return render_terms(field(), a, lie_.labels()); }
  std::string render(const Sym& f) const { return render_terms(field(), f, lie_.labels()); }
  /// Parses "2*x*y - 1/2*z + 1"; factors multiply in the order written.
  Elem parse(const std::string& text) const;
  Sym parse_symmetric(const std::string& text) const;

  std::size_t memo_size() const;
  std::vector<MemoEntry> memo_snapshot() const;
  void memo_preload(const std::vector<MemoEntry>& entries) const;

 private:
  struct MemoKey {
    std::size_t generator;
    Monomial monomial;
    bool operator==(const MemoKey& o) const { return generator == o.generator && monomial == o.monomial; }
  };
  struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const { return k.monomial.hash() * 31 + k.generator; }
  };
  struct Memo {
    std::mutex mutex;
    std::unordered_map<MemoKey, Elem, MemoKeyHash> table;
  };

  const Elem& generator_times_monomial(std::size_t j, const Monomial& m) const;
  void check(const Elem& a) const;

  LieAlgebra<F> lie_;
  std::shared_ptr<Memo> memo_;
};

extern template class EnvelopingAlgebra<RationalField>;
extern template class EnvelopingAlgebra<GaloisField>;

}  // namespace kw1
