#include "kw1/pbw.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "kw1/errors.hpp"

namespace kw1 {

void Monomial::set(std::size_t i, unsigned v) {
  if (i >= kMaxDim) throw std::out_of_range("monomial index exceeds the supported dimension");
  if (v > 0xffff) throw std::overflow_error("monomial exponent overflow");
  exps_[i] = static_cast<std::uint16_t>(v);
}

std::size_t Monomial::min_index() const {
  for (std::size_t i = 0; i < kMaxDim; ++i)
    if (exps_[i]) return i;
  return kMaxDim;
}

std::size_t Monomial::max_index() const {
  for (std::size_t i = kMaxDim; i-- > 0;)
    if (exps_[i]) return i;
  return kMaxDim;
}

bool Monomial::is_reduced(unsigned p) const {
  for (auto e : exps_)
    if (e >= p) return false;
  return true;
}

Monomial Monomial::operator+(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxDim; ++i) r.set(i, static_cast<unsigned>(exps_[i]) + o.exps_[i]);
  return r;
}

std::string render_monomial(const Monomial& m, const std::vector<std::string>& labels) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!m[i]) continue;
    if (!first) os << '*';
    first = false;
    os << labels[i];
    if (m[i] > 1) os << '^' << m[i];
  }
  return first ? "1" : os.str();
}

namespace {

// Coefficient text and whether it is negative (only possible over Q).
std::pair<std::string, bool> coefficient_text(const RationalField&, const mpq_class& c) {
  mpq_class a = abs(c);
  return {a.get_str(), sgn(c) < 0};
}

std::pair<std::string, bool> coefficient_text(const GaloisField& f, std::uint32_t c) {
  std::string s = f.to_string(c);
  if (!f.is_prime_field() && c >= f.characteristic()) s = "(" + s + ")";
  return {s, false};
}

template <class F>
bool is_one(const F& f, const typename F::Element& c) {
  return c == f.one();
}

bool is_one(const RationalField&, const mpq_class& c) { return abs(c) == 1; }

}  // namespace

template <class F, class Kind>
std::string render_terms(const F& f, const SparseTerms<F, Kind>& a, const std::vector<std::string>& labels) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& terms = a.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, c] = *it;
    auto [text, negative] = coefficient_text(f, c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << text;
    } else {
      if (!is_one(f, c)) os << text << '*';
      os << render_monomial(m, labels);
    }
  }
  return os.str();
}

template std::string render_terms(const RationalField&, const SparseTerms<RationalField, EnvelopingKind>&,
                                  const std::vector<std::string>&);
template std::string render_terms(const RationalField&, const SparseTerms<RationalField, SymmetricKind>&,
                                  const std::vector<std::string>&);
template std::string render_terms(const GaloisField&, const SparseTerms<GaloisField, EnvelopingKind>&,
                                  const std::vector<std::string>&);
template std::string render_terms(const GaloisField&, const SparseTerms<GaloisField, SymmetricKind>&,
                                  const std::vector<std::string>&);

template <class F>
EnvelopingAlgebra<F>::EnvelopingAlgebra(LieAlgebra<F> lie) : lie_(std::move(lie)), memo_(std::make_shared<Memo>()) {
  if (lie_.dim() > kMaxDim) throw std::invalid_argument("dimension exceeds " + std::to_string(kMaxDim));
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::constant(const Element& c) const {
  return monomial(Monomial{}, c);
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::generator(std::size_t i) const {
  if (i >= dim()) throw std::out_of_range("generator index");
  return monomial(Monomial::unit(i), field().one());
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::monomial(const Monomial& m, const Element& c) const {
  if (field().is_zero(c)) return zero();
  return Elem(dim(), tag(), {{m, c}});
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::from_vector(const Vector<F>& v) const {
  TermAccumulator<F> acc(field());
  for (std::size_t i = 0; i < v.size(); ++i) acc.add(Monomial::unit(i), v[i]);
  return acc.template finish<EnvelopingKind>(dim(), tag());
}

template <class F>
template <class Kind>
SparseTerms<F, Kind> EnvelopingAlgebra<F>::add(const SparseTerms<F, Kind>& a, const SparseTerms<F, Kind>& b) const {
  if (a.dim() != b.dim() || a.field_tag() != b.field_tag()) throw CoefficientFieldMismatch();
  TermAccumulator<F> acc(field());
  acc.add(a);
  acc.add(b);
  return acc.template finish<Kind>(a.dim(), a.field_tag());
}

template <class F>
template <class Kind>
SparseTerms<F, Kind> EnvelopingAlgebra<F>::sub(const SparseTerms<F, Kind>& a, const SparseTerms<F, Kind>& b) const {
  if (a.dim() != b.dim() || a.field_tag() != b.field_tag()) throw CoefficientFieldMismatch();
  TermAccumulator<F> acc(field());
  acc.add(a);
  acc.add(b, field().neg(field().one()));
  return acc.template finish<Kind>(a.dim(), a.field_tag());
}

template <class F>
template <class Kind>
SparseTerms<F, Kind> EnvelopingAlgebra<F>::scale(const SparseTerms<F, Kind>& a, const Element& c) const {
  if (field().is_zero(c)) return SparseTerms<F, Kind>(a.dim(), a.field_tag());
  std::vector<typename SparseTerms<F, Kind>::Term> terms;
  terms.reserve(a.size());
  for (const auto& [m, x] : a.terms()) terms.emplace_back(m, field().mul(x, c));
  return SparseTerms<F, Kind>(a.dim(), a.field_tag(), std::move(terms));
}

template <class F>
template <class Kind>
SparseTerms<F, Kind> EnvelopingAlgebra<F>::top_degree_part(const SparseTerms<F, Kind>& a) const {
  if (a.is_zero()) return a;
  const unsigned d = static_cast<unsigned>(a.degree());
  std::vector<typename SparseTerms<F, Kind>::Term> terms;
  for (const auto& t : a.terms())
    if (t.first.degree() == d) terms.push_back(t);
  return SparseTerms<F, Kind>(a.dim(), a.field_tag(), std::move(terms));
}

template <class F>
void EnvelopingAlgebra<F>::check(const Elem& a) const {
  if (a.dim() != dim() || a.field_tag() != tag()) throw CoefficientFieldMismatch();
}

template <class F>
const typename EnvelopingAlgebra<F>::Elem& EnvelopingAlgebra<F>::generator_times_monomial(std::size_t j,
                                                                                          const Monomial& m) const {
  const MemoKey key{j, m};
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->table.find(key);
    if (it != memo_->table.end()) return it->second;
  }
  Elem result;
  const std::size_t k = m.min_index();
  if (k == kMaxDim || j <= k) {
    Monomial r = m;
    r.add(j, 1);
    result = monomial(r, field().one());
  } else {
    // x_j x_k m' = x_k (x_j m') + [x_j, x_k] m'
    Monomial rest = m;
    rest.add(k, -1);
    TermAccumulator<F> acc(field());
    acc.add(left_multiply(k, generator_times_monomial(j, rest)));
    for (const auto& [l, c] : lie_.bracket(j, k)) acc.add(generator_times_monomial(l, rest), c);
    result = acc.template finish<EnvelopingKind>(dim(), tag());
  }
  std::lock_guard<std::mutex> lock(memo_->mutex);
  auto [it, inserted] = memo_->table.try_emplace(key, std::move(result));
  return it->second;
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::left_multiply(std::size_t j, const Elem& a) const {
  TermAccumulator<F> acc(field());
  for (const auto& [m, c] : a.terms()) acc.add(generator_times_monomial(j, m), c);
  return acc.template finish<EnvelopingKind>(dim(), tag());
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::monomial_times(const Monomial& m, const Elem& a) const {
  const std::size_t top = m.max_index();
  if (top == kMaxDim) return a;
  bool ordered = true;
  for (const auto& t : a.terms())
    if (t.first.min_index() < top) {
      ordered = false;
      break;
    }
  if (ordered) {
    std::vector<typename Elem::Term> terms;
    terms.reserve(a.size());
    for (const auto& [x, c] : a.terms()) terms.emplace_back(m + x, c);
    std::sort(terms.begin(), terms.end(), [](const auto& u, const auto& v) { return deglex_less(u.first, v.first); });
    return Elem(dim(), tag(), std::move(terms));
  }
  Elem r = a;
  for (std::size_t i = top + 1; i-- > 0;)
    for (unsigned t = 0; t < m[i]; ++t) r = left_multiply(i, r);
  return r;
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::multiply(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  if (a.is_zero() || b.is_zero()) return zero();
  TermAccumulator<F> acc(field());
  for (const auto& [m, c] : a.terms()) acc.add(monomial_times(m, b), c);
  return acc.template finish<EnvelopingKind>(dim(), tag());
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::bracket(const Elem& a, const Elem& b) const {
  return sub(multiply(a, b), multiply(b, a));
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::power(const Elem& a, unsigned k) const {
  check(a);
  Elem r = one();
  Elem b = a;
  while (k) {
    if (k & 1) r = multiply(r, b);
    k >>= 1;
    if (k) b = multiply(b, b);
  }
  return r;
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::word(const std::vector<std::size_t>& letters) const {
  Elem r = one();
  for (std::size_t t = letters.size(); t-- > 0;) r = left_multiply(letters[t], r);
  return r;
}

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::symmetrize(const Sym& f) const {
  if (f.dim() != dim() || f.field_tag() != tag()) throw CoefficientFieldMismatch();
  const auto p = field().characteristic();
  TermAccumulator<F> acc(field());
  for (const auto& [m, c] : f.terms()) {
    const unsigned d = m.degree();
    if (p != 0 && p <= d) throw FactorialNotInvertible(d, static_cast<unsigned long>(p));
    std::vector<std::size_t> letters;
    mpz_class multinomial = 1;
    {
      unsigned placed = 0;
      for (std::size_t i = 0; i < dim(); ++i)
        for (unsigned t = 0; t < m[i]; ++t) {
          letters.push_back(i);
          ++placed;
          // running product of binomials C(placed, t+1) stays integral
          multinomial *= placed;
          multinomial /= (t + 1);
        }
    }
    TermAccumulator<F> words(field());
    do {
      words.add(word(letters));
    } while (std::next_permutation(letters.begin(), letters.end()));
    const auto weight = field().mul(c, field().from_rational(mpq_class(1, multinomial)));
    acc.add(words.template finish<EnvelopingKind>(dim(), tag()), weight);
  }
  return acc.template finish<EnvelopingKind>(dim(), tag());
}

template <class F>
typename EnvelopingAlgebra<F>::Sym EnvelopingAlgebra<F>::principal_symbol(const Elem& a) const {
  check(a);
  if (a.is_zero()) throw ZeroElement();
  return as_symmetric(top_degree_part(a));
}

namespace {

template <class F, class Kind>
std::optional<Vector<F>> weight_from(const F& f, const SparseTerms<F, Kind>& a,
                                     const std::vector<SparseTerms<F, Kind>>& images) {
  const auto& [lead, lead_c] = a.leading_term();
  const auto lead_inv = f.inv(lead_c);
  Vector<F> lambda(images.size(), f.zero());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& b = images[i];
    if (b.is_zero()) continue;
    const auto* c = b.coefficient(lead);
    if (!c) return std::nullopt;
    lambda[i] = f.mul(*c, lead_inv);
    if (b.size() != a.size()) return std::nullopt;
    for (std::size_t t = 0; t < a.size(); ++t) {
      if (b.terms()[t].first != a.terms()[t].first) return std::nullopt;
      if (b.terms()[t].second != f.mul(a.terms()[t].second, lambda[i])) return std::nullopt;
    }
  }
  return lambda;
}

}  // namespace

template <class F>
std::optional<Vector<F>> EnvelopingAlgebra<F>::semi_invariant_weight(const Elem& a) const {
  check(a);
  if (a.is_zero()) throw ZeroElement();
  std::vector<Elem> images;
  for (std::size_t i = 0; i < dim(); ++i) images.push_back(bracket(generator(i), a));
  return weight_from(field(), a, images);
}

template <class F>
std::optional<Vector<F>> EnvelopingAlgebra<F>::semi_invariant_weight(const Sym& f) const {
  if (f.dim() != dim() || f.field_tag() != tag()) throw CoefficientFieldMismatch();
  if (f.is_zero()) throw ZeroElement();
  std::vector<Sym> images;
  for (std::size_t i = 0; i < dim(); ++i) images.push_back(sym_adjoint(i, f));
  return weight_from(field(), f, images);
}

template <class F>
typename EnvelopingAlgebra<F>::Sym EnvelopingAlgebra<F>::sym_one() const {
  return Sym(dim(), tag(), {{Monomial{}, field().one()}});
}

template <class F>
typename EnvelopingAlgebra<F>::Sym EnvelopingAlgebra<F>::sym_generator(std::size_t i) const {
  return Sym(dim(), tag(), {{Monomial::unit(i), field().one()}});
}

template <class F>
typename EnvelopingAlgebra<F>::Sym EnvelopingAlgebra<F>::sym_multiply(const Sym& a, const Sym& b) const {
  if (a.dim() != b.dim() || a.field_tag() != b.field_tag()) throw CoefficientFieldMismatch();
  TermAccumulator<F> acc(field());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc.add(ma + mb, field().mul(ca, cb));
  return acc.template finish<SymmetricKind>(a.dim(), a.field_tag());
}

template <class F>
typename EnvelopingAlgebra<F>::Sym EnvelopingAlgebra<F>::sym_adjoint(std::size_t i, const Sym& f) const {
  TermAccumulator<F> acc(field());
  for (const auto& [m, c] : f.terms())
    for (std::size_t j = 0; j < dim(); ++j) {
      if (!m[j]) continue;
      const auto dc = field().mul(c, field().from_int(m[j]));
      if (field().is_zero(dc)) continue;
      Monomial base = m;
      base.add(j, -1);
      for (const auto& [k, s] : lie_.bracket(i, j)) {
        Monomial t = base;
        t.add(k, 1);
        acc.add(t, field().mul(dc, s));
      }
    }
  return acc.template finish<SymmetricKind>(f.dim(), f.field_tag());
}

namespace {

// Recursive-descent parser for sums of products of labels and rationals.
template <class Value, class Ops>
class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const std::vector<std::string>& labels, const Ops& ops)
      : s_(text), labels_(labels), ops_(ops) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + " of \"" + s_ + "\"", what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  mpz_class integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(s_.substr(start, pos_ - start));
  }
  unsigned exponent() {
    mpz_class e = integer();
    if (e > 4096) fail("exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  Value expr() {
    Value acc;
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    acc = term();
    if (negate) acc = ops_.neg(acc);
    for (;;) {
      if (eat('+'))
        acc = ops_.add(acc, term());
      else if (eat('-'))
        acc = ops_.sub(acc, term());
      else
        return acc;
    }
  }
  Value term() {
    Value acc = factor();
    while (eat('*')) acc = ops_.mul(acc, factor());
    return acc;
  }
  Value factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    Value base;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (eat('/')) {
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      mpq_class q(num, den);
      q.canonicalize();
      base = ops_.rational(q);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(labels_.begin(), labels_.end(), name);
      if (it == labels_.end()) fail("unknown basis label '" + name + "'");
      base = ops_.generator(static_cast<std::size_t>(it - labels_.begin()));
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    if (eat('^')) base = ops_.pow(base, exponent());
    return base;
  }

  const std::string& s_;
  const std::vector<std::string>& labels_;
  const Ops& ops_;
  std::size_t pos_ = 0;
};

template <class F, bool Commutative>
struct ParseOps {
  using A = EnvelopingAlgebra<F>;
  using Value = std::conditional_t<Commutative, typename A::Sym, typename A::Elem>;
  const A& alg;

  Value rational(const mpq_class& q) const {
    auto c = alg.field().from_rational(q);
    if constexpr (Commutative)
      return alg.scale(alg.sym_one(), c);
    else
      return alg.constant(c);
  }
  Value generator(std::size_t i) const {
    if constexpr (Commutative)
      return alg.sym_generator(i);
    else
      return alg.generator(i);
  }
  Value add(const Value& a, const Value& b) const { return alg.add(a, b); }
  Value sub(const Value& a, const Value& b) const { return alg.sub(a, b); }
  Value neg(const Value& a) const { return alg.scale(a, alg.field().neg(alg.field().one())); }
  Value mul(const Value& a, const Value& b) const {
    if constexpr (Commutative)
      return alg.sym_multiply(a, b);
    else
      return alg.multiply(a, b);
  }
  Value pow(const Value& a, unsigned k) const {
    Value r = rational(1);
    for (unsigned t = 0; t < k; ++t) r = mul(r, a);
    return r;
  }
};

}  // namespace

template <class F>
typename EnvelopingAlgebra<F>::Elem EnvelopingAlgebra<F>::parse(const std::string& text) const {
  ParseOps<F, false> ops{*this};
  return ExpressionParser<Elem, ParseOps<F, false>>(text, lie_.labels(), ops).parse();
}

template <class F>
typename EnvelopingAlgebra<F>::Sym EnvelopingAlgebra<F>::parse_symmetric(const std::string& text) const {
  ParseOps<F, true> ops{*this};
  return ExpressionParser<Sym, ParseOps<F, true>>(text, lie_.labels(), ops).parse();
}

template <class F>
std::size_t EnvelopingAlgebra<F>::memo_size() const {
  std::lock_guard<std::mutex> lock(memo_->mutex);
  return memo_->table.size();
}

template <class F>
std::vector<typename EnvelopingAlgebra<F>::MemoEntry> EnvelopingAlgebra<F>::memo_snapshot() const {
  std::lock_guard<std::mutex> lock(memo_->mutex);
  std::vector<MemoEntry> out;
  out.reserve(memo_->table.size());
  for (const auto& [k, v] : memo_->table) out.push_back({k.generator, k.monomial, v});
  std::sort(out.begin(), out.end(), [](const MemoEntry& a, const MemoEntry& b) {
    if (a.generator != b.generator) return a.generator < b.generator;
    return deglex_less(a.monomial, b.monomial);
  });
  return out;
}

template <class F>
void EnvelopingAlgebra<F>::memo_preload(const std::vector<MemoEntry>& entries) const {
  std::lock_guard<std::mutex> lock(memo_->mutex);
  for (const auto& e : entries) {
    if (e.generator >= dim() || e.product.dim() != dim() || e.product.field_tag() != tag())
      throw std::invalid_argument("memo entry does not belong to this algebra");
    memo_->table.try_emplace(MemoKey{e.generator, e.monomial}, e.product);
  }
}

template class EnvelopingAlgebra<RationalField>;
template class EnvelopingAlgebra<GaloisField>;

#define KW1_INSTANTIATE_LINEAR(F, K)                                                                           \
  template SparseTerms<F, K> EnvelopingAlgebra<F>::add(const SparseTerms<F, K>&, const SparseTerms<F, K>&) const; \
  template SparseTerms<F, K> EnvelopingAlgebra<F>::sub(const SparseTerms<F, K>&, const SparseTerms<F, K>&) const; \
  template SparseTerms<F, K> EnvelopingAlgebra<F>::scale(const SparseTerms<F, K>&, const F::Element&) const;      \
  template SparseTerms<F, K> EnvelopingAlgebra<F>::top_degree_part(const SparseTerms<F, K>&) const;

KW1_INSTANTIATE_LINEAR(RationalField, EnvelopingKind)
KW1_INSTANTIATE_LINEAR(RationalField, SymmetricKind)
KW1_INSTANTIATE_LINEAR(GaloisField, EnvelopingKind)
KW1_INSTANTIATE_LINEAR(GaloisField, SymmetricKind)

#undef KW1_INSTANTIATE_LINEAR

}  // namespace kw1
