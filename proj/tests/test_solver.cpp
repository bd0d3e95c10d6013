#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffmcsat/frontend.hpp"
#include "ffmcsat/oracle.hpp"
#include "ffmcsat/solver.hpp"

using namespace ffmcsat;

namespace {

const char* kF1 = R"((set-logic QF_FFA)
(define-sort FF3 () (_ FiniteField 3))
(declare-fun x () FF3)
(declare-fun y () FF3)
(assert (and
	(or (= (ff.add x (as ff-1 FF3)) (as ff0 FF3))
	    (= (ff.add y (as ff-1 FF3)) (as ff0 FF3)))
	(= (ff.add (ff.mul x y) (as ff-1 FF3)) (as ff0 FF3))))
(check-sat)
)";

const char* kF2 = R"((set-logic QF_FFA)
(define-sort FF3 () (_ FiniteField 3))
(declare-fun x () FF3)
(declare-fun y () FF3)
(assert (and
	(or (= (ff.add x (as ff-1 FF3)) (as ff0 FF3))
	    (= (ff.add y (as ff-1 FF3)) (as ff0 FF3)))
	(= (ff.add (ff.mul x y) (as ff-1 FF3)) (as ff0 FF3))))
(assert (= (ff.add x (as ff-2 FF3)) (as ff0 FF3)))
(check-sat)
)";

Problem problem_of(const char* text) { return parse_smt2(text).problem; }

}  // namespace

TEST_CASE("F1 is sat with the expected model") {
  Problem p = problem_of(kF1);
  SolverConfig cfg;
  cfg.audit_lemmas = true;
  Solver solver(p, cfg);
  Result r = solver.solve();
  REQUIRE(r.verdict == Verdict::Sat);
  REQUIRE(r.model.has_value());
  CHECK(check_model(p, *r.model).accepted);
  // Static order plus minimum-value picking lands on the paper's model.
  CHECK(r.model->ff.get(0).value() == 1);
  CHECK(r.model->ff.get(1).value() == 1);
  CHECK(solver.audit_report().violations == 0);
}

TEST_CASE("F2 is unsat") {
  Problem p = problem_of(kF2);
  SolverConfig cfg;
  cfg.audit_lemmas = true;
  Solver solver(p, cfg);
  Result r = solver.solve();
  CHECK(r.verdict == Verdict::Unsat);
  CHECK(solver.audit_report().violations == 0);
  CHECK(solver.audit_report().duplicate_lemmas == 0);
}

TEST_CASE("empty problem is sat with an empty model") {
  Problem p = problem_of("(set-logic QF_FFA)\n(check-sat)\n");
  Result r = solve(p);
  CHECK(r.verdict == Verdict::Sat);
  REQUIRE(r.model.has_value());
  CHECK(r.stats.decisions == 0);
}

TEST_CASE("an empty clause is unsat immediately") {
  Problem p = problem_of("(set-logic QF_FFA)(assert false)(check-sat)");
  Result r = solve(p);
  CHECK(r.verdict == Verdict::Unsat);
  CHECK(r.stats.decisions == 0);
}

TEST_CASE("unit clause propagates without deciding") {
  Problem p = problem_of(
      "(set-logic QF_FFA)\n"
      "(declare-fun b () Bool)\n"
      "(assert b)\n(check-sat)\n");
  Result r = solve(p);
  CHECK(r.verdict == Verdict::Sat);
  CHECK(r.stats.bool_propagations >= 1);
  CHECK(r.model->bool_atoms[0] == Lbool::True);
}

TEST_CASE("contradictory unit clauses resolve to unsat with no decisions") {
  Problem p = problem_of(
      "(set-logic QF_FFA)\n"
      "(declare-fun b () Bool)\n"
      "(assert b)\n(assert (not b))\n(check-sat)\n");
  Result r = solve(p);
  CHECK(r.verdict == Verdict::Unsat);
  CHECK(r.stats.decisions == 0);
}

TEST_CASE("F2 run shape: unit propagations feed a theory conflict at level 0") {
  Problem p = problem_of(kF2);
  Result r = solve(p);
  CHECK(r.verdict == Verdict::Unsat);
  CHECK(r.stats.bool_propagations >= 2);
  CHECK(r.stats.conflicts >= 1);
  CHECK(r.stats.decisions == 0);  // everything forced at level 0
}

TEST_CASE("evaluation propagation assigns fully evaluated atoms") {
  Problem p = problem_of(
      "(set-logic QF_FFA)\n"
      "(define-sort FF () (_ FiniteField 3))\n"
      "(declare-fun x () FF)\n"
      "(declare-fun y () FF)\n"
      "(assert (= x (as ff1 FF)))\n"
      "(assert (= y (as ff1 FF)))\n"
      "(assert (or (= (ff.mul x y) (as ff1 FF)) (= x (as ff2 FF))))\n"
      "(check-sat)\n");
  Result r = solve(p);
  CHECK(r.verdict == Verdict::Sat);
  CHECK(r.stats.theory_propagations >= 2);
  CHECK(r.model->ff.get(0).value() == 1);
  CHECK(r.model->ff.get(1).value() == 1);
}

TEST_CASE("theory propagation can be disabled") {
  Problem p = problem_of(kF1);
  SolverConfig cfg;
  cfg.theory_propagation = false;
  Result r = solve(p, cfg);
  CHECK(r.verdict == Verdict::Sat);
  CHECK(r.stats.theory_propagations == 0);
}

TEST_CASE("solver is deterministic for a fixed seed") {
  const char* text =
      "(set-logic QF_FFA)\n"
      "(define-sort FF () (_ FiniteField 13))\n"
      "(declare-fun x () FF)\n"
      "(declare-fun y () FF)\n"
      "(declare-fun z () FF)\n"
      "(assert (not (= (ff.add (ff.mul x x) (ff.mul y z)) (as ff3 FF))))\n"
      "(assert (= (ff.add (ff.mul x y z) x y) (as ff5 FF)))\n"
      "(assert (not (= (ff.add y z) (as ff1 FF))))\n"
      "(check-sat)\n";
  SolverConfig cfg;
  cfg.seed = 12345;
  cfg.random_decisions = true;
  Problem p = problem_of(text);
  Result r1 = solve(p, cfg);
  Result r2 = solve(p, cfg);
  CHECK(r1.verdict == r2.verdict);
  CHECK(r1.stats.decisions == r2.stats.decisions);
  CHECK(r1.stats.conflicts == r2.stats.conflicts);
  CHECK(r1.stats.bool_propagations == r2.stats.bool_propagations);
  CHECK(r1.stats.theory_propagations == r2.stats.theory_propagations);
  CHECK(r1.stats.learned_lemmas == r2.stats.learned_lemmas);
  CHECK(r1.stats.max_trail_size == r2.stats.max_trail_size);
}

TEST_CASE("conflict budget returns unknown") {
  const char* text =
      "(set-logic QF_FFA)\n"
      "(define-sort FF () (_ FiniteField 13))\n"
      "(declare-fun x () FF)\n"
      "(declare-fun y () FF)\n"
      "(declare-fun z () FF)\n"
      "(assert (= (ff.mul x x y) (as ff3 FF)))\n"
      "(assert (= (ff.add x y z) (as ff1 FF)))\n"
      "(assert (not (= (ff.mul y z) (as ff2 FF))))\n"
      "(assert (= (ff.mul x z) (as ff5 FF)))\n"
      "(check-sat)\n";
  Problem p = problem_of(text);
  Result full = solve(p);
  OracleVerdict ov = brute_force_solve(p);
  CHECK(full.verdict == ov.verdict);
  if (full.stats.conflicts > 1) {
    SolverConfig cfg;
    cfg.max_conflicts = 1;
    Result budgeted = solve(p, cfg);
    CHECK(budgeted.verdict == Verdict::Unknown);
    CHECK(budgeted.unknown_reason == "max-conflicts");
  }
}

TEST_CASE("trail backtrack preconditions") {
  Trail t;
  t.ensure_atom_capacity(4);
  CHECK_THROWS_AS(t.backtrack(0, nullptr), InternalError);  // at level 0
  t.push_bool(TrailKind::BoolDecision, Literal::pos(0), kNoClause);
  CHECK(t.level() == 1);
  CHECK_THROWS_AS(t.backtrack(1, nullptr), InternalError);  // current level
  t.backtrack(0, nullptr);
  CHECK(t.level() == 0);
  CHECK(t.size() == 0);
}

TEST_CASE("srs explainer selection fails on the first theory conflict only") {
  SolverConfig cfg;
  cfg.explainer = ExplainStrategy::Srs;
  // F1 is solved without any theory conflict, so srs never fires.
  CHECK(solve(problem_of(kF1), cfg).verdict == Verdict::Sat);
  // Two contradictory unit equalities collapse a feasible set, which needs
  // the plugin explainer and must surface NotImplemented.
  const char* clash =
      "(set-logic QF_FFA)\n"
      "(define-sort FF () (_ FiniteField 3))\n"
      "(declare-fun x () FF)\n"
      "(assert (= x (as ff1 FF)))\n"
      "(assert (= x (as ff2 FF)))\n"
      "(check-sat)\n";
  try {
    solve(problem_of(clash), cfg);
    FAIL("expected NotImplemented");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotImplemented);
  }
  // The default point explainer handles it.
  CHECK(solve(problem_of(clash)).verdict == Verdict::Unsat);
}

TEST_CASE("boolean skeleton with aux variables solves and model-checks") {
  const char* text =
      "(set-logic QF_FFA)\n"
      "(define-sort FF () (_ FiniteField 5))\n"
      "(declare-fun x () FF)\n"
      "(declare-fun y () FF)\n"
      "(declare-fun b () Bool)\n"
      "(assert (or (and (= x (as ff2 FF)) (= y (as ff3 FF))) b))\n"
      "(assert (or (not b) (= (ff.add x y) (as ff1 FF))))\n"
      "(assert (xor b (= x (as ff2 FF))))\n"
      "(check-sat)\n";
  Problem p = problem_of(text);
  SolverConfig cfg;
  cfg.audit_lemmas = true;
  Solver solver(p, cfg);
  Result r = solver.solve();
  OracleVerdict ov = brute_force_solve(p);
  REQUIRE(r.verdict == ov.verdict);
  if (r.verdict == Verdict::Sat) CHECK(check_model(p, *r.model).accepted);
  CHECK(solver.audit_report().violations == 0);
}
