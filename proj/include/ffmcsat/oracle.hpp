#pragma once

// Brute-force reference solver and model checker for differential testing.
// Enumerates the full assignment space in lexicographic order; the original
// assertion terms are evaluated directly when available, sidestepping
// Tseitin variables. A pure function of its inputs; the parallel kernel
// returns bit-identical results to the serial reference.

#include <cstdint>
#include <optional>

#include "ffmcsat/formula.hpp"
#include "ffmcsat/solver.hpp"

namespace ffmcsat {

struct OracleOptions {
  bool parallel = true;               // OpenMP block scan vs serial reference
  std::uint64_t guard = 10'000'000;   // max p^n (times 2^bools) to enumerate
};

struct OracleVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<Model> model;     // first satisfying assignment, lex order
  std::uint64_t enumerated = 0;   // FF assignments tried
};

// Errc::SearchSpaceTooLarge when the assignment space exceeds the guard.
OracleVerdict brute_force_solve(const Problem& problem,
                                const OracleOptions& opts = {});

struct ModelCheckResult {
  bool accepted = false;
  std::optional<Clause> witness;  // first falsified input clause
};

// Evaluates every input clause under the model (Tseitin variables completed
// from their definitions). Errc::IncompleteModel if an FF variable or an
// input Boolean is missing.
ModelCheckResult check_model(const Problem& problem, const Model& model);

}  // namespace ffmcsat
