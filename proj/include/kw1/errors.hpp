#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kw1 {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Errors caused by the user's input (bad document, bad parameters, p too small).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::string location, const std::string& what)
      : InputError("parse error at " + location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class DuplicateLabel : public InputError {
 public:
  explicit DuplicateLabel(const std::string& label)
      : InputError("duplicate basis label '" + label + "'"), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

struct JacobiTriple {
  std::size_t i, j, l;
};

class JacobiError : public InputError {
 public:
  explicit JacobiError(std::vector<JacobiTriple> triples, const std::string& detail)
      : InputError("Jacobi identity fails: " + detail), triples_(std::move(triples)) {}
  const std::vector<JacobiTriple>& triples() const { return triples_; }

 private:
  std::vector<JacobiTriple> triples_;
};

class DenominatorDivisibleByP : public InputError {
 public:
  DenominatorDivisibleByP(const std::string& constant, unsigned long p)
      : InputError("structure constant " + constant + " has a denominator divisible by p = " +
                   std::to_string(p)),
        p_(p) {}
  unsigned long prime() const { return p_; }

 private:
  unsigned long p_;
};

class NotRestrictable : public Error {
 public:
  explicit NotRestrictable(std::size_t index)
      : Error("(ad x_" + std::to_string(index) + ")^p is not an inner derivation"), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class CoefficientFieldMismatch : public Error {
 public:
  CoefficientFieldMismatch() : Error("operands live over different coefficient fields or dimensions") {}
};

class FactorialNotInvertible : public Error {
 public:
  FactorialNotInvertible(unsigned degree, unsigned long p)
      : Error(std::to_string(degree) + "! is not invertible in characteristic " + std::to_string(p)) {}
};

class ZeroElement : public Error {
 public:
  ZeroElement() : Error("operation undefined on the zero element") {}
};

class CentralityFailure : public Error {
 public:
  CentralityFailure(std::size_t i, std::size_t j)
      : Error("xi_" + std::to_string(i) + " does not commute with basis element " + std::to_string(j)),
        i_(i),
        j_(j) {}
  std::size_t generator() const { return i_; }
  std::size_t basis() const { return j_; }

 private:
  std::size_t i_, j_;
};

class DegreeBoundTooLargeForMemory : public Error {
 public:
  DegreeBoundTooLargeForMemory(std::size_t count, std::size_t cap)
      : Error(std::to_string(count) + " PBW monomials exceed the configured cap of " + std::to_string(cap)),
        count_(count) {}
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

class WeightMismatch : public Error {
 public:
  explicit WeightMismatch(const std::string& what) : Error("weight mismatch: " + what) {}
};

class StabilizationNotReached : public Error {
 public:
  explicit StabilizationNotReached(unsigned bound)
      : Error("rank did not stabilize within " + std::to_string(bound) + " rounds") {}
};

class DimensionCap : public Error {
 public:
  DimensionCap(unsigned long long dim, unsigned long long cap)
      : Error("reduced enveloping algebra dimension " + std::to_string(dim) + " exceeds cap " +
              std::to_string(cap)) {}
};

class SplitBudgetExceeded : public Error {
 public:
  explicit SplitBudgetExceeded(std::size_t dim)
      : Error("MeatAxe could not split or certify a module of dimension " + std::to_string(dim)) {}
};

}  // namespace kw1
