#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffmcsat/bench.hpp"
#include "ffmcsat/frontend.hpp"
#include "ffmcsat/oracle.hpp"

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

}  // namespace

TEST_CASE("F1: first satisfying assignment in lexicographic order") {
  Problem p = parse_smt2(kF1).problem;
  OracleVerdict v = brute_force_solve(p);
  REQUIRE(v.verdict == Verdict::Sat);
  REQUIRE(v.model.has_value());
  CHECK(v.model->ff.get(0).value() == 1);
  CHECK(v.model->ff.get(1).value() == 1);
  CHECK(check_model(p, *v.model).accepted);
}

TEST_CASE("F2: unsat after exhausting all nine assignments") {
  Problem p = parse_smt2(kF2).problem;
  OracleVerdict v = brute_force_solve(p);
  CHECK(v.verdict == Verdict::Unsat);
  CHECK(v.enumerated == 9);
}

TEST_CASE("search space guard") {
  Problem p = parse_smt2(
                  "(set-logic QF_FFA)\n"
                  "(declare-fun x () (_ FiniteField "
                  "57896044618658097711785492504343953926634992332820282019728792003956564819949))\n"
                  "(assert (= x (as ff1 (_ FiniteField "
                  "57896044618658097711785492504343953926634992332820282019728792003956564819949))))\n"
                  "(check-sat)\n")
                  .problem;
  CHECK_THROWS_AS(brute_force_solve(p), Error);
  try {
    brute_force_solve(p);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SearchSpaceTooLarge);
  }
}

TEST_CASE("check_model examples") {
  Problem p = parse_smt2(kF1).problem;
  Model good;
  good.ff.set(0, p.field.element(1));
  good.ff.set(1, p.field.element(1));
  good.bool_atoms.assign(p.atoms.size(), Lbool::Undef);
  CHECK(check_model(p, good).accepted);

  Model bad;
  bad.ff.set(0, p.field.element(2));
  bad.ff.set(1, p.field.element(2));
  bad.bool_atoms.assign(p.atoms.size(), Lbool::Undef);
  ModelCheckResult mc = check_model(p, bad);
  REQUIRE(!mc.accepted);
  // 2*2-1 = 0 mod 3 holds, so the rejecting witness is the disjunction.
  REQUIRE(mc.witness.has_value());
  CHECK(mc.witness->lits.size() == 2);

  Model incomplete;
  incomplete.ff.set(0, p.field.element(1));
  CHECK_THROWS_AS(check_model(p, incomplete), Error);
  try {
    check_model(p, incomplete);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IncompleteModel);
  }
}

TEST_CASE("parallel kernel matches the serial reference exactly") {
  std::uint64_t seeds[] = {1, 2, 3, 4, 5, 6};
  for (std::uint64_t seed : seeds) {
    RandomGenParams params;
    params.p = 5;
    params.nvars = 7;  // 5^7 = 78125 assignments
    params.npolys = 5;
    params.max_degree = 2;
    params.density = 0.4;
    params.seed = seed;
    Problem p = parse_smt2(gen_random(params)).problem;
    OracleOptions serial{false, 10000000};
    OracleOptions parallel{true, 10000000};
    OracleVerdict vs = brute_force_solve(p, serial);
    OracleVerdict vp = brute_force_solve(p, parallel);
    REQUIRE(vs.verdict == vp.verdict);
    REQUIRE(vs.enumerated == vp.enumerated);
    if (vs.verdict == Verdict::Sat) {
      REQUIRE(vs.model.has_value());
      REQUIRE(vp.model.has_value());
      for (VarId v = 0; v < p.num_vars(); ++v)
        REQUIRE(vs.model->ff.get(v) == vp.model->ff.get(v));
    }
  }
}

TEST_CASE("differential smoke: solver agrees with the oracle") {
  Rng rng(4242);
  int sat = 0, unsat = 0;
  for (int iter = 0; iter < 150; ++iter) {
    RandomGenParams params;
    std::vector<unsigned long> orders{2, 3, 5, 7, 13};
    params.p = orders[rng.below(std::uint64_t(orders.size()))];
    params.nvars = 1 + unsigned(rng.below(4));
    params.npolys = 1 + unsigned(rng.below(6));
    params.max_degree = 1 + unsigned(rng.below(3));
    params.density = 0.3 + 0.1 * double(rng.below(5));
    params.seed = rng.word();
    Problem p = parse_smt2(gen_random(params)).problem;
    SolverConfig cfg;
    cfg.audit_lemmas = true;
    Solver solver(p, cfg);
    Result r = solver.solve();
    OracleVerdict ov = brute_force_solve(p);
    REQUIRE(r.verdict == ov.verdict);
    REQUIRE(solver.audit_report().violations == 0);
    REQUIRE(solver.audit_report().duplicate_lemmas == 0);
    if (r.verdict == Verdict::Sat) {
      ++sat;
      REQUIRE(check_model(p, *r.model).accepted);
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 0);
  CHECK(unsat > 0);
}
