#pragma once

// The MCSat search engine: Boolean clausal reasoning over two watched
// literals, evaluation propagation of fully assigned atoms, static-order
// decisions with phase saving, theory conflicts explained by the ff plugin,
// conflict analysis mixing Boolean resolution with evaluation lifting, and
// backjumping. One solver instance is strictly single-threaded.

#include <chrono>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffmcsat/formula.hpp"
#include "ffmcsat/plugin.hpp"
#include "ffmcsat/rng.hpp"
#include "ffmcsat/trail.hpp"

namespace ffmcsat {

struct SolverConfig {
  std::uint64_t seed = 0;
  std::uint64_t max_conflicts = 0;  // 0 = unlimited
  std::uint64_t max_decisions = 0;  // 0 = unlimited
  double time_budget_s = 0.0;       // 0 = unlimited
  ExplainStrategy explainer = ExplainStrategy::Point;
  bool theory_propagation = true;  // propagate singleton feasible sets
  bool model_check = true;         // verify the model before returning Sat
  bool stats = false;              // key=value statistics on stderr
  bool random_decisions = false;   // seeded uniform value picking
  bool audit_lemmas = false;       // exhaustive lemma audit (test harnesses)
  bool trace_lemmas = false;       // learned lemmas in SMT-LIB syntax on stderr
};

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t bool_propagations = 0;
  std::uint64_t theory_propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learned_lemmas = 0;
  std::uint64_t max_trail_size = 0;
  void print(std::ostream& os) const;
};

enum class Verdict { Sat, Unsat, Unknown };
const char* verdict_name(Verdict v);

struct Result {
  Verdict verdict = Verdict::Unknown;
  std::optional<Model> model;  // present on Sat
  Stats stats;
  std::string unknown_reason;
};

// Outcome of the audit hooks (meaningful when config.audit_lemmas): every
// explanation lemma is checked valid over F_p by exhaustive enumeration,
// every learned clause is checked false under the trail at learn time and
// entailed by the input clauses.
struct AuditReport {
  std::uint64_t lemmas_checked = 0;
  std::uint64_t clauses_checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t duplicate_lemmas = 0;
  std::vector<std::string> details;
};

class Solver : public AtomRegistry {
 public:
  Solver(const Problem& problem, SolverConfig config);
  ~Solver();

  Result solve();

  AtomId eq_atom(VarId var, const FieldElement& value) override;

  const AuditReport& audit_report() const { return audit_; }

 private:
  struct Analysis {
    bool unsat = false;
    Clause learned;
    std::uint32_t backjump_level = 0;
    Literal assert_lit;
    bool used_theory = false;
  };

  void register_poly_atom(AtomId a);
  ClauseRef attach_clause(Clause c);
  void attach_watch_pair(ClauseRef ref);
  std::optional<Clause> propagate();
  std::optional<Clause> bcp_literal(Literal assigned);
  std::optional<Clause> eval_check(AtomId a);
  Clause eval_lemma(AtomId a, bool evaluated_value);
  bool decide();
  Analysis analyze(Clause conflict);
  void backjump(std::uint32_t level);
  bool lit_false_under_trail(Literal l) const;
  std::optional<bool> atom_evaluated_value(AtomId a) const;
  void pending_push(AtomId a);
  Result finish_sat();
  bool out_of_budget(std::string& reason) const;

  void audit_explanation(const Clause& lemma);
  void audit_learned(const Clause& learned);
  void trace_clause(const char* tag, const Clause& c) const;

  Problem work_;  // private copy; explanations extend the atom table
  SolverConfig config_;
  Rng rng_;
  Trail trail_;
  FFPlugin plugin_;

  std::vector<Clause> clauses_;  // input prefix, then learned
  std::size_t num_input_clauses_ = 0;
  std::vector<std::vector<ClauseRef>> watches_;  // literal code -> refs
  std::vector<char> phase_;                      // saved phases, default true
  std::vector<std::vector<AtomId>> var_atoms_;   // var -> atoms mentioning it
  std::deque<AtomId> pending_eval_;
  std::vector<char> in_pending_;
  std::size_t cursor_ = 0;
  std::map<std::vector<std::uint32_t>, ClauseRef> learned_index_;
  bool found_empty_input_ = false;

  Stats stats_;
  AuditReport audit_;
  std::chrono::steady_clock::time_point start_;
};

Result solve(const Problem& problem, const SolverConfig& config = {});

}  // namespace ffmcsat
