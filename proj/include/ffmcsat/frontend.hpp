#pragma once

// SMT-LIB 2 frontend for the finite-field extension: QF_FF / QF_FFA logics,
// (_ FiniteField p) sorts, indexed constants (_ ffN p) / (as ffN S), ff.add
// and ff.mul (ff.neg / ff.sub accepted as sugar). Assertions compile to
// clausal polynomial constraints; non-clausal Boolean structure goes through
// Tseitin auxiliary variables.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffmcsat/formula.hpp"

namespace ffmcsat {

struct SrcLoc {
  int line = 0;
  int col = 0;
  std::string to_string() const;
};

struct Token {
  enum class Kind { LParen, RParen, Symbol, Numeral, Decimal, Keyword, String };
  Kind kind;
  std::string text;  // symbol/keyword/string spelling, numeral digits
  SrcLoc loc;
};

// S-expression tokens; line comments (;) skipped. Errc::LexError with
// location on illegal characters.
std::vector<Token> tokenize(const std::string& text);

struct SExpr {
  bool is_atom = true;
  Token token;                  // when is_atom
  std::vector<SExpr> children;  // when list
  SrcLoc loc;
};

struct Sort {
  bool is_bool = false;
  mpz_class ff_order;  // meaningful when !is_bool
  bool operator==(const Sort& s) const {
    return is_bool == s.is_bool && (is_bool || ff_order == s.ff_order);
  }
};

struct Command {
  enum class Kind {
    SetLogic, DefineSort, DeclareFun, Assert, CheckSat, GetModel, Exit,
    Ignored,  // set-info / set-option / get-info, consumed without effect
  };
  Kind kind;
  std::string symbol;         // logic name, sort alias, function name
  std::optional<Sort> sort;   // DefineSort target, DeclareFun result sort
  std::optional<SExpr> term;  // Assert payload
  SrcLoc loc;
};

// Errc::ParseError on malformed syntax, Errc::UnsupportedFeature on
// constructs outside the fragment (non-nullary functions, unknown logics,
// push/pop, ...), both with source locations.
std::vector<Command> parse_commands(const std::vector<Token>& tokens);

struct ElabResult {
  Problem problem;
  bool saw_check_sat = false;
  bool saw_get_model = false;
};

// Sort-checks and clausifies. Errc::SortError, Errc::MixedFields,
// Errc::NonPrimeOrder.
ElabResult elaborate(const std::vector<Command>& commands);

// Convenience: tokenize + parse + elaborate.
ElabResult parse_smt2(const std::string& text);

// Pretty-print the clausal problem back to SMT-LIB 2; the output re-parses
// to a structurally identical problem.
std::string print_problem_smt2(const Problem& p);

// (define-fun x () (_ FiniteField p) (_ ffV p)) entries wrapped in parens.
std::string print_model_smt2(const Problem& p, const Model& m);

// One polynomial as an ff.add/ff.mul term, using the given sort spelling.
std::string poly_to_smt2(const Polynomial& poly,
                         const std::vector<std::string>& var_names,
                         const std::string& sort_text);

}  // namespace ffmcsat
