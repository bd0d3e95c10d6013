#pragma once

// Sparse multivariate polynomials over F_p with a canonical monomial order,
// plus the dense univariate form used by unit-constraint reasoning. Values
// are immutable after construction; canonical form makes equality structural.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffmcsat/field.hpp"

namespace ffmcsat {

using VarId = std::uint32_t;

// Dense identifier plus print name; indices are unique per problem and the
// static variable order is index order.
struct Variable {
  VarId index;
  std::string name;
};

using VarNamer = std::function<std::string(VarId)>;
VarNamer default_namer();  // x0, x1, ...

// Partial map VarId -> FieldElement, dense in the variable index.
class Assignment {
 public:
  void set(VarId v, const FieldElement& value);
  void unset(VarId v);
  bool has(VarId v) const { return v < slots_.size() && slots_[v].has_value(); }
  const FieldElement& get(VarId v) const;
  const FieldElement* try_get(VarId v) const;

 private:
  std::vector<std::optional<FieldElement>> slots_;
};

// coefficient * prod var^exp; exponents sorted by variable index, all > 0,
// coefficient nonzero.
struct Monomial {
  FieldElement coeff;
  std::vector<std::pair<VarId, unsigned>> exps;

  unsigned total_degree() const;
  unsigned degree_in(VarId v) const;
};

// Lex order with lower-indexed variables more significant; the one order
// used everywhere so equal polynomials are structurally equal.
bool lex_less(const std::vector<std::pair<VarId, unsigned>>& a,
              const std::vector<std::pair<VarId, unsigned>>& b);

class Polynomial {
 public:
  static Polynomial zero(const Field& f);
  static Polynomial constant(const FieldElement& c);
  static Polynomial variable(const Field& f, VarId v);
  // Normalizes: merges equal exponent vectors, drops zero coefficients,
  // sorts into strictly decreasing lex order.
  static Polynomial from_monomials(const Field& f, std::vector<Monomial> ms);

  const Field& field() const { return field_; }
  const std::vector<Monomial>& monomials() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Value of a constant polynomial (zero polynomial included).
  FieldElement constant_value() const;

  Polynomial operator+(const Polynomial& g) const;
  Polynomial operator-(const Polynomial& g) const;
  Polynomial operator*(const Polynomial& g) const;
  Polynomial operator-() const;

  // Total evaluation; throws Errc::IncompleteAssignment if a variable of the
  // polynomial is unassigned.
  FieldElement evaluate(const Assignment& nu) const;
  // Substitutes every assigned variable, returns the canonical residual.
  Polynomial partial_evaluate(const Assignment& nu) const;

  std::vector<VarId> vars() const;  // sorted, distinct
  bool contains_var(VarId v) const;
  unsigned degree_in(VarId v) const;
  unsigned total_degree() const;

  bool operator==(const Polynomial& g) const;
  std::size_t hash() const;

  // Monomials as c*x^e*y^f joined by " + ", canonical order; "0" when zero.
  std::string to_string(const VarNamer& namer = default_namer()) const;

 private:
  Polynomial(Field f, std::vector<Monomial> terms)
      : field_(std::move(f)), terms_(std::move(terms)) {}
  void check_same_field(const Polynomial& g) const;
  Field field_;
  std::vector<Monomial> terms_;  // strictly decreasing lex order
};

// Dense univariate form: coeffs[i] multiplies var^i, leading coefficient
// nonzero (empty vector = zero polynomial).
class UnivariatePoly {
 public:
  UnivariatePoly(Field f, VarId var, std::vector<FieldElement> coeffs);

  const Field& field() const { return field_; }
  VarId var() const { return var_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const FieldElement& leading_coeff() const;

  FieldElement evaluate(const FieldElement& x) const;  // Horner
  UnivariatePoly monic() const;
  UnivariatePoly operator+(const UnivariatePoly& g) const;
  UnivariatePoly operator-(const UnivariatePoly& g) const;
  UnivariatePoly operator*(const UnivariatePoly& g) const;
  // Quotient/remainder; throws Errc::DivisionByZero on zero divisor.
  std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& g) const;

  std::string to_string(const VarNamer& namer = default_namer()) const;

 private:
  void check_compatible(const UnivariatePoly& g) const;
  Field field_;
  VarId var_;
  std::vector<FieldElement> coeffs_;
};

// Dense transcription of a polynomial with exactly one variable left.
// Throws Errc::NotUnivariate when zero or more than one variable remains.
UnivariatePoly to_univariate(const Polynomial& f);

// Monic GCD via the Euclidean algorithm. Throws Errc::VariableMismatch /
// Errc::BothZero / Errc::FieldMismatch.
UnivariatePoly univ_gcd(const UnivariatePoly& g, const UnivariatePoly& h);

// Subresultant polynomial remainder sequence of f and g w.r.t. x; serves the
// SRS explainer extension hook. Both inputs need positive degree in x
// (Errc::NotPolynomialInX otherwise). The sequence starts with f, g and ends
// with the last pseudo-remainder computed: a zero polynomial when the inputs
// share a factor involving x, a constant (the resultant up to subresultant
// normalization) otherwise.
std::vector<Polynomial> subresultant_chain(const Polynomial& f,
                                           const Polynomial& g, VarId x);

}  // namespace ffmcsat
