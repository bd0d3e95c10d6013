#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "ffmcsat/formula.hpp"
#include "ffmcsat/plugin.hpp"

using namespace ffmcsat;

namespace {

// Test harness owning a problem, a trail, and the plugin, mirroring the
// engine's event discipline: every push is processed immediately with
// view_end = trail size.
struct Harness : AtomRegistry {
  Problem problem;
  Trail trail;
  Rng rng{0};
  FFPlugin plugin;
  std::vector<FFPropagationOut> props;

  explicit Harness(unsigned long p, unsigned nvars, bool theory_prop = true)
      : problem(Field::make(p)),
        plugin(problem.field, trail, rng, theory_prop) {
    for (unsigned v = 0; v < nvars; ++v)
      problem.add_var("x" + std::to_string(v));
  }

  AtomId eq_atom(VarId var, const FieldElement& value) override {
    Polynomial p = Polynomial::variable(problem.field, var) -
                   Polynomial::constant(value);
    if (auto existing = problem.find_poly_atom(p)) return *existing;
    AtomId id = problem.add_poly_atom(p);
    trail.ensure_atom_capacity(id + 1);
    plugin.register_atom(id, p);
    return id;
  }

  AtomId add_constraint(const Polynomial& p) {
    AtomId id = problem.add_poly_atom(p);
    trail.ensure_atom_capacity(id + 1);
    plugin.register_atom(id, *problem.atoms[id].poly);
    return id;
  }

  std::optional<ConflictCore> assert_atom(AtomId a, bool value) {
    trail.push_bool(TrailKind::BoolDecision,
                    value ? Literal::pos(a) : Literal::neg(a), kNoClause);
    return plugin.on_atom_assigned(a, trail.size(), props);
  }

  std::optional<ConflictCore> assign_var(VarId v, long value) {
    trail.push_ff(TrailKind::FFDecision, v, problem.field.element(value), {});
    return plugin.on_var_assigned(v, trail.size(), props);
  }

  Polynomial var(VarId v) { return Polynomial::variable(problem.field, v); }
  Polynomial cst(long c) {
    return Polynomial::constant(problem.field.element(c));
  }

  // Validity of a clause over the full space, by direct enumeration.
  bool clause_valid(const Clause& c, unsigned nvars) {
    unsigned long p = problem.field.order_ul();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < nvars; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Assignment nu;
      std::uint64_t rest = idx;
      for (VarId v = 0; v < nvars; ++v) {
        nu.set(v, problem.field.element(long(rest % p)));
        rest /= p;
      }
      bool any = false;
      for (Literal l : c.lits) {
        bool truth = problem.atoms[l.atom()].poly->evaluate(nu).is_zero() ==
                     l.positive();
        if (truth) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }
};

}  // namespace

TEST_CASE("asserting a unit equality restricts and propagates") {
  Harness h(3, 2);
  AtomId a = h.add_constraint(h.var(0) - h.cst(2));  // x - 2 = 0
  auto conflict = h.assert_atom(a, true);
  CHECK(!conflict);
  FeasibleSet fs = h.plugin.feasible(0);
  CHECK(fs.mode() == FeasMode::Allowed);
  REQUIRE(fs.elements().size() == 1);
  CHECK(fs.elements()[0].value() == 2);
  REQUIRE(h.props.size() == 1);
  CHECK(h.props[0].var == 0);
  CHECK(h.props[0].value.value() == 2);
}

TEST_CASE("a constraint becoming unit by assignment restricts the last variable") {
  Harness h(3, 2);
  AtomId a = h.add_constraint(h.var(0) * h.var(1) - h.cst(1));  // xy - 1 = 0
  CHECK(!h.assert_atom(a, true));
  CHECK(h.props.empty());  // two unassigned variables: nothing yet
  CHECK(!h.assign_var(0, 2));
  FeasibleSet fs = h.plugin.feasible(1);
  CHECK(fs.mode() == FeasMode::Allowed);
  REQUIRE(fs.elements().size() == 1);
  CHECK(fs.elements()[0].value() == 2);  // 2*2 = 4 = 1 mod 3
  REQUIRE(h.props.size() == 1);
  CHECK(h.props[0].var == 1);
}

TEST_CASE("empty intersection reports a core that explains validly") {
  Harness h(3, 1);
  AtomId eq = h.add_constraint(h.var(0) - h.cst(1));   // x - 1 = 0
  AtomId eq2 = h.add_constraint(h.var(0) - h.cst(2));  // x - 2 = 0
  CHECK(!h.assert_atom(eq, true));   // x in {1}
  auto conflict = h.assert_atom(eq2, true);  // x in {2}: empty
  REQUIRE(conflict.has_value());
  CHECK(conflict->var == 0);
  CHECK(conflict->entries.size() == 2);
  Clause lemma = h.plugin.explain_conflict(*conflict, h, ExplainStrategy::Point);
  CHECK(lemma.lits.size() == 2);  // no assignments involved: core negations only
  CHECK(h.clause_valid(lemma, 1));
  // Both literals false under the trail by construction.
  for (Literal l : lemma.lits)
    CHECK(h.trail.lit_value(l) == Lbool::False);
}

TEST_CASE("point explanation includes the assignment point (F2 example)") {
  Harness h(2, 2);
  AtomId a0 = h.add_constraint(h.var(0) + h.var(1));            // x + y = 0
  AtomId a1 = h.add_constraint(h.var(0) + h.var(1) + h.cst(1)); // x + y + 1 = 0
  CHECK(!h.assert_atom(a0, true));
  CHECK(!h.assert_atom(a1, true));
  h.props.clear();
  auto conflict = h.assign_var(0, 0);
  REQUIRE(conflict.has_value());
  CHECK(conflict->var == 1);
  Clause lemma = h.plugin.explain_conflict(*conflict, h, ExplainStrategy::Point);
  // ~(x+y=0) or ~(x+y+1=0) or ~(x=0)
  CHECK(lemma.lits.size() == 3);
  CHECK(h.clause_valid(lemma, 2));
}

TEST_CASE("srs strategy is a NotImplemented extension hook") {
  Harness h(3, 1);
  AtomId eq = h.add_constraint(h.var(0) - h.cst(1));
  AtomId eq2 = h.add_constraint(h.var(0) - h.cst(2));
  CHECK(!h.assert_atom(eq, true));
  auto conflict = h.assert_atom(eq2, true);
  REQUIRE(conflict.has_value());
  try {
    h.plugin.explain_conflict(*conflict, h, ExplainStrategy::Srs);
    FAIL("expected NotImplemented");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotImplemented);
  }
}

TEST_CASE("propagation explanations are valid with the propagated literal") {
  Harness h(3, 2);
  AtomId a = h.add_constraint(h.var(0) * h.var(1) - h.cst(1));
  CHECK(!h.assert_atom(a, true));
  CHECK(!h.assign_var(0, 2));
  REQUIRE(h.props.size() == 1);
  auto lemma = h.plugin.explain_propagation(h.props[0].var, h.props[0].value,
                                            h.props[0].core, h);
  REQUIRE(lemma.has_value());
  // ~(xy-1=0) or ~(x=2) or (y=2), valid over all 9 assignments.
  CHECK(lemma->lits.size() == 3);
  CHECK(h.clause_valid(*lemma, 2));
}

TEST_CASE("self-justified propagation lemma collapses to nothing") {
  Harness h(3, 1);
  AtomId a = h.add_constraint(h.var(0) - h.cst(2));  // canonical x + 1
  CHECK(!h.assert_atom(a, true));
  REQUIRE(h.props.size() == 1);
  auto lemma = h.plugin.explain_propagation(h.props[0].var, h.props[0].value,
                                            h.props[0].core, h);
  CHECK(!lemma.has_value());  // (x=2) is the core atom itself
}

TEST_CASE("undo restores feasible sets exactly") {
  Harness h(5, 2);
  AtomId a = h.add_constraint(h.var(0) - h.cst(2));
  AtomId b = h.add_constraint(h.var(1) * h.var(0) - h.cst(1));
  std::size_t before = h.trail.size();
  FeasibleSet x_before = h.plugin.feasible(0);
  FeasibleSet y_before = h.plugin.feasible(1);
  CHECK(!h.assert_atom(a, true));
  h.props.clear();
  CHECK(!h.assert_atom(b, true));
  CHECK(!h.assign_var(0, 2));
  CHECK(h.plugin.feasible(1).singleton().has_value());
  // Roll everything back.
  std::vector<std::pair<AtomId, bool>> popped;
  h.trail.backtrack(0, &popped);
  h.plugin.undo_to(h.trail.size());
  CHECK(h.trail.size() == before);
  CHECK(h.plugin.feasible(0) == x_before);
  CHECK(h.plugin.feasible(1) == y_before);
  CHECK(h.plugin.feasible(0).is_empty() == false);
}

TEST_CASE("feasible sets match direct unit-constraint evaluation exhaustively") {
  // Randomized event simulation with snapshot comparison after backtracks.
  Rng sim_rng(909);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    for (int round = 0; round < 30; ++round) {
      unsigned nvars = 2 + unsigned(sim_rng.below(2));
      Harness h(p, nvars, false);
      // Random constraint pool.
      std::vector<AtomId> atoms;
      unsigned natoms = 2 + unsigned(sim_rng.below(4));
      for (unsigned i = 0; i < natoms; ++i) {
        std::vector<Monomial> ms;
        unsigned nm = 1 + unsigned(sim_rng.below(3));
        for (unsigned m = 0; m < nm; ++m) {
          Monomial mono{h.problem.field.element(1 + long(sim_rng.below(p - 1))), {}};
          for (VarId v = 0; v < nvars; ++v) {
            unsigned e = unsigned(sim_rng.below(3));
            if (e) mono.exps.emplace_back(v, e);
          }
          ms.push_back(std::move(mono));
        }
        Polynomial poly = Polynomial::from_monomials(h.problem.field, std::move(ms));
        if (poly.is_constant()) continue;
        if (!h.problem.find_poly_atom(poly)) atoms.push_back(h.add_constraint(poly));
      }
      if (atoms.empty()) continue;

      // Direct semantics: value w feasible for v iff no asserted constraint
      // that is unit in v — every variable but v assigned — evaluates to the
      // complement. Constant residuals belong to evaluation propagation.
      auto direct_feasible = [&](VarId v, long w) {
        for (AtomId a : atoms) {
          if (!h.trail.has_bool(a)) continue;
          bool polarity = h.trail.bool_value(a) == Lbool::True;
          const Polynomial& poly = *h.problem.atoms[a].poly;
          if (!poly.contains_var(v)) continue;
          bool unit = true;
          for (VarId u : poly.vars())
            if (u != v && !h.trail.has_ff(u)) unit = false;
          if (!unit) continue;
          Polynomial residual = poly.partial_evaluate(h.trail.ff());
          if (residual.is_constant()) continue;
          Assignment point;
          point.set(v, h.problem.field.element(w));
          bool value = residual.evaluate(point).is_zero();
          if (value != polarity) return false;
        }
        return true;
      };
      auto check_all = [&]() {
        for (VarId v = 0; v < nvars; ++v) {
          if (h.trail.has_ff(v)) continue;
          FeasibleSet fs = h.plugin.feasible(v);
          for (unsigned long w = 0; w < p; ++w)
            REQUIRE(fs.contains(h.problem.field.element(long(w))) ==
                    direct_feasible(v, long(w)));
        }
      };

      bool dead = false;
      for (int step = 0; step < 14 && !dead; ++step) {
        std::uint64_t action = sim_rng.below(4);
        if (action <= 1) {  // assert an unasserted atom
          std::vector<AtomId> candidates;
          for (AtomId a : atoms)
            if (!h.trail.has_bool(a)) candidates.push_back(a);
          if (candidates.empty()) continue;
          AtomId a = candidates[sim_rng.below(std::uint64_t(candidates.size()))];
          if (h.assert_atom(a, sim_rng.coin())) dead = true;  // conflict: stop
        } else if (action == 2) {  // assign a variable a feasible value
          std::vector<VarId> candidates;
          for (VarId v = 0; v < nvars; ++v)
            if (!h.trail.has_ff(v)) candidates.push_back(v);
          if (candidates.empty()) continue;
          VarId v = candidates[sim_rng.below(std::uint64_t(candidates.size()))];
          FeasibleSet fs = h.plugin.feasible(v);
          if (fs.is_empty()) continue;
          FieldElement w = fs.random_value(sim_rng);
          // pick_value returns a feasible value: it must clear direct checks.
          REQUIRE(direct_feasible(v, long(w.value().get_ui())));
          if (h.assign_var(v, long(w.value().get_ui()))) dead = true;
        } else if (h.trail.level() > 0) {  // backtrack
          std::uint32_t target = std::uint32_t(sim_rng.below(h.trail.level()));
          h.trail.backtrack(target, nullptr);
          h.plugin.undo_to(h.trail.size());
        }
        if (!dead) {
          check_all();
          REQUIRE(h.plugin.watches_consistent());
        }
      }
    }
  }
}
