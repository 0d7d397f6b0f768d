#pragma once

#include <stdexcept>
#include <string>

namespace f2r {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& where)
      : Error("dimension mismatch in " + where) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A configurable work cap was hit. Callers must treat the result as unknown,
// never as a negative answer.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(const std::string& what)
      : Error("budget exhausted: " + what) {}
};

class GramMismatch : public Error {
 public:
  GramMismatch() : Error("source and target tuples have different Gram matrices") {}
};

class DependentInput : public Error {
 public:
  explicit DependentInput(const std::string& what = "input vectors are linearly dependent")
      : Error(what) {}
};

class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Something that must hold by construction did not. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace f2r
