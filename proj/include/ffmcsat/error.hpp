#pragma once

#include <stdexcept>
#include <string>

namespace ffmcsat {

// Typed failure codes for user-level errors: bad input, unsupported syntax,
// contract violations a caller can provoke. Broken internal invariants use
// InternalError instead (the CLI maps it to exit code 2).
enum class Errc {
  NonPrimeOrder,
  FieldMismatch,
  DivisionByZero,
  IncompleteAssignment,
  NotUnivariate,
  VariableMismatch,
  BothZero,
  ZeroPolynomial,
  NotPolynomialInX,
  LexError,
  ParseError,
  UnsupportedFeature,
  SortError,
  MixedFields,
  ConstantResidual,
  EmptyFeasible,
  SearchSpaceTooLarge,
  IncompleteModel,
  NotImplemented,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg)
      : std::logic_error("internal error: " + msg) {}
};

inline void internal_check(bool cond, const char* what) {
  if (!cond) throw InternalError(what);
}

}  // namespace ffmcsat
