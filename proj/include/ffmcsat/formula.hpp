#pragma once

// Clausal problem representation: hash-consed atoms over polynomial
// equalities (disequalities are negative literals), Boolean skeleton
// variables, input clauses, and the original assertion terms kept for the
// brute-force oracle.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffmcsat/poly.hpp"

namespace ffmcsat {

using AtomId = std::uint32_t;

class Literal {
 public:
  Literal() : code_(UINT32_MAX) {}
  static Literal pos(AtomId a) { return Literal(a << 1); }
  static Literal neg(AtomId a) { return Literal(a << 1 | 1); }
  AtomId atom() const { return code_ >> 1; }
  bool positive() const { return (code_ & 1) == 0; }
  Literal operator~() const { return Literal(code_ ^ 1); }
  std::uint32_t code() const { return code_; }
  bool operator==(const Literal& o) const { return code_ == o.code_; }
  bool operator<(const Literal& o) const { return code_ < o.code_; }

 private:
  explicit Literal(std::uint32_t code) : code_(code) {}
  std::uint32_t code_;
};

enum class ClauseOrigin { Input, LearnedBoolean, LearnedTheory };

struct Clause {
  std::vector<Literal> lits;  // sorted by code, duplicate-free
  ClauseOrigin origin = ClauseOrigin::Input;

  // Sorts and dedupes; nullopt for tautologies (complementary pair).
  static std::optional<Clause> make(std::vector<Literal> lits, ClauseOrigin o);
  bool operator==(const Clause& c) const { return lits == c.lits; }
  std::size_t hash() const;
};

// Elaborated assertion terms. FF-sorted terms evaluate to field elements,
// Bool-sorted ones to truth values; the oracle evaluates these directly to
// sidestep Tseitin variables.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind {
    FFConst, FFVar, FFAdd, FFMul,
    BoolConst, BoolVar, Eq, Not, And, Or, Implies, Xor,
  };
  Kind kind;
  std::optional<FieldElement> ff_value;  // FFConst
  bool bool_value = false;               // BoolConst
  VarId var = 0;                         // FFVar
  AtomId bool_atom = 0;                  // BoolVar
  std::vector<TermPtr> args;

  static TermPtr ff_const(FieldElement v);
  static TermPtr ff_var(VarId v);
  static TermPtr bool_const(bool v);
  static TermPtr bool_var(AtomId a);
  static TermPtr apply(Kind k, std::vector<TermPtr> args);
};

struct AtomInfo {
  enum class Kind { Poly, BoolVar };
  Kind kind;
  std::optional<Polynomial> poly;  // Poly: canonical f, atom is f = 0
  std::string name;                // BoolVar
  bool aux = false;                // Tseitin-introduced
  TermPtr definition;              // aux: defining term, for model completion
};

struct Problem {
  explicit Problem(Field f) : field(std::move(f)) {}

  Field field;
  std::vector<std::string> var_names;  // FF variables, VarId = index
  std::vector<AtomInfo> atoms;
  std::vector<Clause> clauses;
  std::vector<TermPtr> assertions;  // original terms (post sort-check)

  VarId add_var(const std::string& name);
  // Hash-consed: structurally equal polynomials share one atom id.
  // The polynomial must be non-constant.
  AtomId add_poly_atom(const Polynomial& p);
  AtomId add_bool_atom(const std::string& name, bool aux, TermPtr definition);
  std::optional<AtomId> find_poly_atom(const Polynomial& p) const;

  std::size_t num_vars() const { return var_names.size(); }
  std::string atom_string(AtomId a) const;
  std::string literal_string(Literal l) const;
  std::string clause_string(const Clause& c) const;

 private:
  std::unordered_map<std::size_t, std::vector<AtomId>> poly_index_;
  std::unordered_map<std::string, AtomId> bool_index_;
};

// Truth values on the trail and in models.
enum class Lbool : std::uint8_t { False, True, Undef };
inline Lbool lbool_of(bool b) { return b ? Lbool::True : Lbool::False; }

struct Model {
  Assignment ff;                  // total over problem FF variables
  std::vector<Lbool> bool_atoms;  // indexed by AtomId; Undef for poly atoms
};

// Exact term evaluation (arbitrary-precision path). Boolean variables are
// looked up by atom id; Undef values throw Errc::IncompleteAssignment.
FieldElement eval_term_ff(const Term& t, const Field& f, const Assignment& nu);
bool eval_term_bool(const Term& t, const Field& f, const Assignment& nu,
                    const std::vector<Lbool>& bools);

}  // namespace ffmcsat
