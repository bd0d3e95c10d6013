#include "ffmcsat/solver.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "eval64.hpp"
#include "ffmcsat/frontend.hpp"

namespace ffmcsat {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

void Stats::print(std::ostream& os) const {
  os << "decisions=" << decisions << "\n"
     << "bool_propagations=" << bool_propagations << "\n"
     << "theory_propagations=" << theory_propagations << "\n"
     << "conflicts=" << conflicts << "\n"
     << "learned_lemmas=" << learned_lemmas << "\n"
     << "max_trail_size=" << max_trail_size << "\n";
}

Solver::Solver(const Problem& problem, SolverConfig config)
    : work_(problem),
      config_(std::move(config)),
      rng_(config_.seed),
      plugin_(problem.field, trail_, rng_, config_.theory_propagation) {
  trail_.ensure_atom_capacity(work_.atoms.size());
  phase_.assign(work_.atoms.size(), 1);
  in_pending_.assign(work_.atoms.size(), 0);
  var_atoms_.resize(work_.num_vars());
  watches_.resize(2 * work_.atoms.size());
  for (AtomId a = 0; a < work_.atoms.size(); ++a) register_poly_atom(a);
  for (const Clause& c : work_.clauses) {
    if (c.lits.empty()) found_empty_input_ = true;
    attach_clause(c);
  }
  num_input_clauses_ = clauses_.size();
}

Solver::~Solver() = default;

void Solver::register_poly_atom(AtomId a) {
  const AtomInfo& info = work_.atoms[a];
  if (info.kind != AtomInfo::Kind::Poly) return;
  plugin_.register_atom(a, *info.poly);
  for (VarId v : info.poly->vars()) var_atoms_[v].push_back(a);
}

AtomId Solver::eq_atom(VarId var, const FieldElement& value) {
  Polynomial p = Polynomial::variable(work_.field, var) -
                 Polynomial::constant(value);
  if (auto existing = work_.find_poly_atom(p)) return *existing;
  AtomId id = work_.add_poly_atom(p);
  trail_.ensure_atom_capacity(id + 1);
  phase_.resize(id + 1, 1);
  in_pending_.resize(id + 1, 0);
  watches_.resize(2 * (id + 1));
  register_poly_atom(id);
  pending_push(id);  // may already be fully evaluated
  return id;
}

ClauseRef Solver::attach_clause(Clause c) {
  ClauseRef ref = static_cast<ClauseRef>(clauses_.size());
  std::vector<std::uint32_t> key;
  key.reserve(c.lits.size());
  for (Literal l : c.lits) key.push_back(l.code());
  std::sort(key.begin(), key.end());
  learned_index_.emplace(std::move(key), ref);
  clauses_.push_back(std::move(c));
  attach_watch_pair(ref);
  return ref;
}

void Solver::attach_watch_pair(ClauseRef ref) {
  Clause& c = clauses_[ref];
  if (c.lits.size() < 2) return;
  watches_[c.lits[0].code()].push_back(ref);
  watches_[c.lits[1].code()].push_back(ref);
}

void Solver::pending_push(AtomId a) {
  if (a < in_pending_.size() && !in_pending_[a]) {
    in_pending_[a] = 1;
    pending_eval_.push_back(a);
  }
}

// Constant value of the atom polynomial under the current FF assignment, if
// it is determined (all-variable assignment not required: xy with y = 0 is
// the constant 0 with x still free).
std::optional<bool> Solver::atom_evaluated_value(AtomId a) const {
  const AtomInfo& info = work_.atoms[a];
  if (info.kind != AtomInfo::Kind::Poly) return std::nullopt;
  Polynomial residual = info.poly->partial_evaluate(trail_.ff());
  if (!residual.is_constant()) return std::nullopt;
  return residual.constant_value().is_zero();
}

bool Solver::lit_false_under_trail(Literal l) const {
  Lbool b = trail_.lit_value(l);
  if (b != Lbool::Undef) return b == Lbool::False;
  auto ev = atom_evaluated_value(l.atom());
  return ev.has_value() && *ev != l.positive();
}

std::optional<Clause> Solver::propagate() {
  for (;;) {
    if (cursor_ < trail_.size()) {
      const std::size_t idx = cursor_++;
      const std::size_t view_end = idx + 1;
      const TrailKind kind = trail_[idx].kind;
      std::vector<FFPropagationOut> props;
      std::optional<ConflictCore> core;
      if (kind == TrailKind::FFDecision || kind == TrailKind::FFPropagation) {
        const VarId v = trail_[idx].var;
        core = plugin_.on_var_assigned(v, view_end, props);
        for (AtomId a : var_atoms_[v]) pending_push(a);
      } else {
        const Literal l = trail_[idx].lit;
        if (auto conf = bcp_literal(l)) return conf;
        core = plugin_.on_atom_assigned(l.atom(), view_end, props);
        pending_push(l.atom());
      }
      if (core) {
        Clause lemma =
            plugin_.explain_conflict(*core, *this, config_.explainer);
        audit_explanation(lemma);
        trace_clause("theory-conflict", lemma);
        return lemma;
      }
      for (FFPropagationOut& p : props) {
        if (trail_.has_ff(p.var)) continue;
        trail_.push_ff(TrailKind::FFPropagation, p.var, std::move(p.value),
                       std::move(p.core));
        ++stats_.theory_propagations;
        stats_.max_trail_size =
            std::max<std::uint64_t>(stats_.max_trail_size, trail_.max_size_seen());
      }
      continue;
    }
    if (!pending_eval_.empty()) {
      AtomId a = pending_eval_.front();
      pending_eval_.pop_front();
      in_pending_[a] = 0;
      if (auto conf = eval_check(a)) return conf;
      continue;
    }
    return std::nullopt;
  }
}

std::optional<Clause> Solver::bcp_literal(Literal assigned) {
  Literal watch_lit = ~assigned;  // literals that just became false
  auto& wl = watches_[watch_lit.code()];
  std::size_t keep = 0;
  std::optional<Clause> conflict;
  for (std::size_t i = 0; i < wl.size(); ++i) {
    ClauseRef ref = wl[i];
    if (conflict) {
      wl[keep++] = ref;
      continue;
    }
    Clause& c = clauses_[ref];
    if (c.lits[0] == watch_lit) std::swap(c.lits[0], c.lits[1]);
    if (trail_.lit_value(c.lits[0]) == Lbool::True) {
      wl[keep++] = ref;
      continue;
    }
    bool moved = false;
    for (std::size_t j = 2; j < c.lits.size(); ++j) {
      if (trail_.lit_value(c.lits[j]) != Lbool::False) {
        std::swap(c.lits[1], c.lits[j]);
        watches_[c.lits[1].code()].push_back(ref);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    wl[keep++] = ref;
    if (trail_.lit_value(c.lits[0]) == Lbool::False) {
      conflict = c;
      continue;
    }
    // Unit under the Boolean assignment; but a literal whose atom already
    // evaluates to the complement is semantically false, making the clause
    // conflicting rather than propagating.
    auto ev = atom_evaluated_value(c.lits[0].atom());
    if (ev.has_value() && *ev != c.lits[0].positive()) {
      conflict = c;
      continue;
    }
    trail_.push_bool(TrailKind::BoolPropagation, c.lits[0], ref);
    ++stats_.bool_propagations;
    stats_.max_trail_size =
        std::max<std::uint64_t>(stats_.max_trail_size, trail_.max_size_seen());
  }
  wl.resize(keep);
  return conflict;
}

// The trail-ordered prefix of assigned variables that pins the atom's value;
// stops as soon as the residual is constant so lemmas stay small.
static std::vector<std::pair<VarId, std::size_t>> eval_support(
    const Polynomial& poly, const Trail& trail) {
  std::vector<std::pair<VarId, std::size_t>> assigned;
  for (VarId v : poly.vars())
    if (trail.has_ff(v)) assigned.emplace_back(v, trail.ff_index(v));
  std::sort(assigned.begin(), assigned.end(),
            [](auto& a, auto& b) { return a.second < b.second; });
  Assignment view;
  std::vector<std::pair<VarId, std::size_t>> support;
  Polynomial residual = poly;
  if (residual.is_constant()) return support;
  for (auto& [v, idx] : assigned) {
    view.set(v, *trail.ff().try_get(v));
    support.emplace_back(v, idx);
    residual = poly.partial_evaluate(view);
    if (residual.is_constant()) return support;
  }
  throw InternalError("eval_support on an undetermined atom");
}

Clause Solver::eval_lemma(AtomId a, bool evaluated_value) {
  const Polynomial& poly = *work_.atoms[a].poly;
  std::vector<Literal> lits;
  lits.push_back(evaluated_value ? Literal::pos(a) : Literal::neg(a));
  for (auto& [v, idx] : eval_support(poly, trail_)) {
    lits.push_back(Literal::neg(eq_atom(v, *trail_.ff().try_get(v))));
  }
  auto c = Clause::make(std::move(lits), ClauseOrigin::LearnedTheory);
  internal_check(c.has_value(), "tautological evaluation lemma");
  audit_explanation(*c);
  return *c;
}

std::optional<Clause> Solver::eval_check(AtomId a) {
  auto ev = atom_evaluated_value(a);
  if (!ev.has_value()) return std::nullopt;
  Lbool cur = trail_.bool_value(a);
  if (cur == Lbool::Undef) {
    trail_.push_bool(TrailKind::EvalPropagation,
                     *ev ? Literal::pos(a) : Literal::neg(a), kNoClause);
    ++stats_.bool_propagations;
    stats_.max_trail_size =
        std::max<std::uint64_t>(stats_.max_trail_size, trail_.max_size_seen());
    return std::nullopt;
  }
  if ((cur == Lbool::True) == *ev) return std::nullopt;
  // Asserted one way, evaluates the other: conflict explained by the
  // assignment point.
  Clause lemma = eval_lemma(a, *ev);
  trace_clause("eval-conflict", lemma);
  return lemma;
}

bool Solver::decide() {
  for (AtomId a = 0; a < work_.atoms.size(); ++a) {
    if (trail_.has_bool(a)) continue;
    Literal l = phase_[a] ? Literal::pos(a) : Literal::neg(a);
    trail_.push_bool(TrailKind::BoolDecision, l, kNoClause);
    ++stats_.decisions;
    stats_.max_trail_size =
        std::max<std::uint64_t>(stats_.max_trail_size, trail_.max_size_seen());
    return true;
  }
  for (VarId v = 0; v < work_.num_vars(); ++v) {
    if (trail_.has_ff(v)) continue;
    FeasibleSet feas = plugin_.feasible(v);
    internal_check(!feas.is_empty(), "empty feasible set survived propagation");
    FieldElement val = config_.random_decisions ? feas.random_value(rng_)
                                                : feas.min_value();
    trail_.push_ff(TrailKind::FFDecision, v, std::move(val), {});
    ++stats_.decisions;
    stats_.max_trail_size =
        std::max<std::uint64_t>(stats_.max_trail_size, trail_.max_size_seen());
    return true;
  }
  return false;  // nothing to decide: all atoms and variables assigned
}

namespace {

struct FalseInfo {
  enum class Cls {
    TerminalBoolDecision,
    TerminalFFDecisionPoint,
    ResolveBoolProp,
    ResolveEvalProp,
    ResolveFFPropPoint,
    ResolveValueLift,
  };
  Cls cls;
  std::size_t index;
  bool terminal() const {
    return cls == Cls::TerminalBoolDecision ||
           cls == Cls::TerminalFFDecisionPoint;
  }
};

// (x = v) atoms have the canonical monic shape x - v.
std::optional<std::pair<VarId, FieldElement>> point_form(const Polynomial& p) {
  std::vector<VarId> vs = p.vars();
  if (vs.size() != 1 || p.degree_in(vs[0]) != 1) return std::nullopt;
  if (p.monomials().front().coeff.value() != 1) return std::nullopt;
  FieldElement c = p.field().zero();
  for (const Monomial& m : p.monomials())
    if (m.exps.empty()) c = m.coeff;
  return std::make_pair(vs[0], -c);
}

}  // namespace

Solver::Analysis Solver::analyze(Clause conflict) {
  for (Literal l : conflict.lits)
    internal_check(lit_false_under_trail(l), "conflict clause literal not false");

  std::map<std::uint32_t, Literal> cur;
  for (Literal l : conflict.lits) cur.emplace(l.code(), l);
  bool used_theory = conflict.origin == ClauseOrigin::LearnedTheory;

  // A negative point literal ~(x = v) with x decided/propagated to v resists
  // evaluation lifting (the lemma would be tautological); it resolves through
  // x's theory justification or stays as a re-decidable terminal.
  auto point_case = [&](Literal l) -> std::optional<FalseInfo> {
    const AtomInfo& info = work_.atoms[l.atom()];
    if (info.kind != AtomInfo::Kind::Poly || l.positive()) return std::nullopt;
    auto pt = point_form(*info.poly);
    if (!pt || !trail_.has_ff(pt->first) ||
        *trail_.ff().try_get(pt->first) != pt->second)
      return std::nullopt;
    std::size_t idx = trail_.ff_index(pt->first);
    return trail_[idx].kind == TrailKind::FFDecision
               ? FalseInfo{FalseInfo::Cls::TerminalFFDecisionPoint, idx}
               : FalseInfo{FalseInfo::Cls::ResolveFFPropPoint, idx};
  };

  // A literal can be false along two routes: a Boolean assignment of its
  // atom and a theory evaluation. Classification picks the EARLIER one; the
  // introduced literals then always sit strictly below the resolved index,
  // which is what terminates the resolution loop.
  auto classify = [&](Literal l) -> FalseInfo {
    AtomId a = l.atom();
    std::optional<FalseInfo> bool_route;
    if (trail_.has_bool(a)) {
      std::size_t idx = trail_.bool_index(a);
      switch (trail_[idx].kind) {
        case TrailKind::BoolDecision:
          bool_route = FalseInfo{FalseInfo::Cls::TerminalBoolDecision, idx};
          break;
        case TrailKind::BoolPropagation:
          bool_route = FalseInfo{FalseInfo::Cls::ResolveBoolProp, idx};
          break;
        case TrailKind::EvalPropagation:
          bool_route = FalseInfo{FalseInfo::Cls::ResolveEvalProp, idx};
          break;
        default:
          throw InternalError("Boolean atom with FF trail element");
      }
    }
    std::optional<FalseInfo> value_route;
    if (work_.atoms[a].kind == AtomInfo::Kind::Poly) {
      if (auto pc = point_case(l)) {
        value_route = pc;
      } else {
        auto ev = atom_evaluated_value(a);
        if (ev.has_value() && *ev != l.positive()) {
          auto support = eval_support(*work_.atoms[a].poly, trail_);
          internal_check(!support.empty(), "value-false literal without support");
          value_route =
              FalseInfo{FalseInfo::Cls::ResolveValueLift, support.back().second};
        }
      }
    }
    if (bool_route && value_route)
      return bool_route->index < value_route->index ? *bool_route
                                                    : *value_route;
    if (bool_route) return *bool_route;
    internal_check(value_route.has_value(),
                   "conflict literal with no falsification route");
    return *value_route;
  };

  std::size_t guard = 0;
  for (;;) {
    internal_check(++guard < 1000000, "conflict analysis diverged");
    std::optional<std::pair<FalseInfo, Literal>> best;
    for (auto& [code, l] : cur) {
      FalseInfo fi = classify(l);
      if (fi.terminal()) continue;
      if (!best || fi.index > best->first.index) best = {fi, l};
    }
    if (!best) break;
    Literal l = best->second;
    Clause reason;
    switch (best->first.cls) {
      case FalseInfo::Cls::ResolveBoolProp: {
        ClauseRef ref = trail_[best->first.index].reason;
        internal_check(ref != kNoClause, "propagation without a reason");
        reason = clauses_[ref];
        if (reason.origin == ClauseOrigin::LearnedTheory) used_theory = true;
        break;
      }
      case FalseInfo::Cls::ResolveEvalProp: {
        const TrailElement& e = trail_[best->first.index];
        reason = eval_lemma(e.lit.atom(), e.lit.positive());
        used_theory = true;
        break;
      }
      case FalseInfo::Cls::ResolveFFPropPoint: {
        const TrailElement e = trail_[best->first.index];
        auto lemma = plugin_.explain_propagation(e.var, *e.value, e.core, *this);
        internal_check(lemma.has_value(),
                       "collapsed propagation lemma reached conflict analysis");
        audit_explanation(*lemma);
        reason = *lemma;
        used_theory = true;
        break;
      }
      case FalseInfo::Cls::ResolveValueLift: {
        auto ev = atom_evaluated_value(l.atom());
        internal_check(ev.has_value(), "value lift on undetermined atom");
        reason = eval_lemma(l.atom(), *ev);
        used_theory = true;
        break;
      }
      default:
        throw InternalError("resolving a terminal literal");
    }
    // Resolve cur with reason on l's atom.
    bool found = false;
    cur.erase(l.code());
    for (Literal r : reason.lits) {
      if (r == ~l) {
        found = true;
        continue;
      }
      internal_check(!cur.count((~r).code()), "tautological resolvent");
      cur.emplace(r.code(), r);
    }
    internal_check(found, "reason clause does not contain the literal");
  }

  Analysis out;
  out.used_theory = used_theory;
  if (cur.empty()) {
    out.unsat = true;
    return out;
  }
  // Levels of falsification; backjump to the second-highest.
  std::uint32_t max_level = 0;
  for (auto& [code, l] : cur) {
    FalseInfo fi = classify(l);
    max_level = std::max(max_level, trail_[fi.index].level);
  }
  if (max_level == 0) {
    out.unsat = true;  // still false with no decisions left to undo
    return out;
  }
  std::uint32_t backjump = 0;
  std::optional<Literal> assert_lit;
  for (auto& [code, l] : cur) {
    FalseInfo fi = classify(l);
    std::uint32_t lv = trail_[fi.index].level;
    if (lv == max_level) {
      internal_check(!assert_lit.has_value(),
                     "learned clause with two literals at the conflict level");
      assert_lit = l;
    } else {
      backjump = std::max(backjump, lv);
    }
  }
  std::vector<Literal> lits;
  lits.reserve(cur.size());
  for (auto& [code, l] : cur) lits.push_back(l);
  auto learned = Clause::make(std::move(lits),
                              used_theory ? ClauseOrigin::LearnedTheory
                                          : ClauseOrigin::LearnedBoolean);
  internal_check(learned.has_value(), "tautological learned clause");
  out.learned = std::move(*learned);
  out.backjump_level = backjump;
  out.assert_lit = *assert_lit;
  return out;
}

void Solver::backjump(std::uint32_t level) {
  std::vector<std::pair<AtomId, bool>> popped;
  trail_.backtrack(level, &popped);
  for (auto& [a, value] : popped) phase_[a] = value ? 1 : 0;
  plugin_.undo_to(trail_.size());
  cursor_ = std::min(cursor_, trail_.size());
  // Re-seed evaluation checks: popped FF values may leave atoms evaluated
  // but no longer Boolean-assigned, or vice versa.
  for (AtomId a = 0; a < work_.atoms.size(); ++a)
    if (!trail_.has_bool(a)) pending_push(a);
}

bool Solver::out_of_budget(std::string& reason) const {
  if (config_.max_conflicts && stats_.conflicts >= config_.max_conflicts) {
    reason = "max-conflicts";
    return true;
  }
  if (config_.max_decisions && stats_.decisions >= config_.max_decisions) {
    reason = "max-decisions";
    return true;
  }
  if (config_.time_budget_s > 0) {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    if (elapsed >= config_.time_budget_s) {
      reason = "time-budget";
      return true;
    }
  }
  return false;
}

Result Solver::finish_sat() {
  Model m;
  for (VarId v = 0; v < work_.num_vars(); ++v) {
    const FieldElement* val = trail_.ff().try_get(v);
    internal_check(val != nullptr, "sat with an unassigned variable");
    m.ff.set(v, *val);
  }
  m.bool_atoms.assign(work_.atoms.size(), Lbool::Undef);
  for (AtomId a = 0; a < work_.atoms.size(); ++a)
    m.bool_atoms[a] = trail_.bool_value(a);
  if (config_.model_check) {
    for (AtomId a = 0; a < work_.atoms.size(); ++a) {
      if (work_.atoms[a].kind != AtomInfo::Kind::Poly) continue;
      auto ev = atom_evaluated_value(a);
      internal_check(ev.has_value() && lbool_of(*ev) == m.bool_atoms[a],
                     "model check: atom value disagrees with evaluation");
    }
    for (std::size_t i = 0; i < num_input_clauses_; ++i) {
      const Clause& c = clauses_[i];
      bool ok = false;
      for (Literal l : c.lits)
        if (trail_.lit_value(l) == Lbool::True) {
          ok = true;
          break;
        }
      internal_check(ok, "model check: input clause not satisfied");
    }
  }
  Result r;
  r.verdict = Verdict::Sat;
  r.model = std::move(m);
  r.stats = stats_;
  return r;
}

Result Solver::solve() {
  start_ = std::chrono::steady_clock::now();
  auto finish = [&](Verdict v, const std::string& reason = "") {
    Result r;
    r.verdict = v;
    r.stats = stats_;
    r.unknown_reason = reason;
    if (config_.stats) stats_.print(std::cerr);
    return r;
  };

  if (found_empty_input_) return finish(Verdict::Unsat);

  std::optional<Clause> conflict;
  for (std::size_t i = 0; i < num_input_clauses_ && !conflict; ++i) {
    if (clauses_[i].lits.size() != 1) continue;
    Literal l = clauses_[i].lits[0];
    Lbool v = trail_.lit_value(l);
    if (v == Lbool::True) continue;
    if (v == Lbool::False) {
      conflict = clauses_[i];
      break;
    }
    trail_.push_bool(TrailKind::BoolPropagation, l, static_cast<ClauseRef>(i));
    ++stats_.bool_propagations;
  }

  for (;;) {
    if (!conflict) conflict = propagate();
    if (conflict) {
      ++stats_.conflicts;
      Analysis an = analyze(std::move(*conflict));
      conflict.reset();
      if (an.unsat) return finish(Verdict::Unsat);
      audit_learned(an.learned);
      trace_clause("learned", an.learned);

      std::vector<std::uint32_t> key;
      key.reserve(an.learned.lits.size());
      for (Literal l : an.learned.lits) key.push_back(l.code());
      ClauseRef ref;
      auto dup = learned_index_.find(key);
      if (dup != learned_index_.end()) {
        ++audit_.duplicate_lemmas;
        if (config_.audit_lemmas)
          audit_.details.push_back("duplicate lemma learned");
        ref = dup->second;
        backjump(an.backjump_level);
      } else {
        backjump(an.backjump_level);
        // Watch the asserting literal plus the latest-falsified other
        // literal so backtracking wakes the clause correctly.
        Clause c = an.learned;
        if (c.lits.size() >= 2) {
          auto pos = std::find(c.lits.begin(), c.lits.end(), an.assert_lit);
          std::swap(c.lits[0], *pos);
          std::size_t best = 1;
          std::size_t best_idx = 0;
          for (std::size_t j = 1; j < c.lits.size(); ++j) {
            std::size_t idx = trail_.bool_index(c.lits[j].atom());
            if (!trail_.has_bool(c.lits[j].atom())) idx = 0;
            if (idx >= best_idx) best_idx = idx, best = j;
          }
          std::swap(c.lits[1], c.lits[best]);
        }
        ref = attach_clause(std::move(c));
        ++stats_.learned_lemmas;
      }
      internal_check(!trail_.has_bool(an.assert_lit.atom()),
                     "asserting literal still assigned after backjump");
      trail_.push_bool(TrailKind::BoolPropagation, an.assert_lit, ref);
      ++stats_.bool_propagations;
      std::string reason;
      if (out_of_budget(reason)) return finish(Verdict::Unknown, reason);
      continue;
    }
    std::string reason;
    if (out_of_budget(reason)) return finish(Verdict::Unknown, reason);
    if (!decide()) {
      Result r = finish_sat();
      if (config_.stats) stats_.print(std::cerr);
      return r;
    }
  }
}

// ---------------------------------------------------------------------------
// Audit and trace hooks.

namespace {

// Truth of a literal under a full assignment given as word values plus
// Boolean atom values; only usable for word-sized fields.
bool lit_true_64(const Problem& problem,
                 std::vector<std::optional<eval64::Poly64>>& compiled,
                 Literal l, const std::vector<std::uint64_t>& ffvals,
                 const std::vector<char>& boolvals) {
  const AtomInfo& info = problem.atoms[l.atom()];
  bool v;
  if (info.kind == AtomInfo::Kind::Poly) {
    if (l.atom() >= compiled.size()) compiled.resize(l.atom() + 1);
    if (!compiled[l.atom()])
      compiled[l.atom()] = eval64::Poly64::compile(*info.poly);
    v = compiled[l.atom()]->eval(ffvals) == 0;
  } else {
    v = boolvals[l.atom()] != 0;
  }
  return v == l.positive();
}

}  // namespace

void Solver::audit_explanation(const Clause& lemma) {
  if (!config_.audit_lemmas) return;
  ++audit_.lemmas_checked;
  // Explanation lemmas are valid over F_p: no assignment of their variables
  // falsifies every literal. Exhaustive over the mentioned variables.
  if (!eval64::field_fits(work_.field)) return;
  std::vector<VarId> vars;
  for (Literal l : lemma.lits) {
    const AtomInfo& info = work_.atoms[l.atom()];
    internal_check(info.kind == AtomInfo::Kind::Poly,
                   "Boolean variable in an explanation lemma");
    for (VarId v : info.poly->vars()) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::uint64_t p = work_.field.order_ul();
  double space = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) space *= double(p);
  if (space > 1e5) return;  // outside the audit guard

  std::vector<std::optional<eval64::Poly64>> compiled;
  std::vector<std::uint64_t> ffvals(work_.num_vars(), 0);
  std::vector<char> boolvals;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (VarId v : vars) {
      ffvals[v] = rest % p;
      rest /= p;
    }
    bool any = false;
    for (Literal l : lemma.lits)
      if (lit_true_64(work_, compiled, l, ffvals, boolvals)) {
        any = true;
        break;
      }
    if (!any) {
      ++audit_.violations;
      audit_.details.push_back("invalid explanation lemma: " +
                               work_.clause_string(lemma));
      return;
    }
  }
}

void Solver::audit_learned(const Clause& learned) {
  // False under the trail at learn time, always enforced.
  for (Literal l : learned.lits)
    internal_check(lit_false_under_trail(l),
                   "learned clause not false under the trail");
  if (!config_.audit_lemmas) return;
  ++audit_.clauses_checked;
  if (!eval64::field_fits(work_.field)) return;

  // Entailment by the input clauses, exhaustively: every total assignment
  // satisfying the inputs (with Tseitin definitions forcing aux values)
  // satisfies the learned clause.
  std::vector<AtomId> input_bools, aux_bools;
  for (AtomId a = 0; a < work_.atoms.size(); ++a) {
    if (work_.atoms[a].kind != AtomInfo::Kind::BoolVar) continue;
    (work_.atoms[a].aux ? aux_bools : input_bools).push_back(a);
  }
  std::uint64_t p = work_.field.order_ul();
  double space = 1;
  for (std::size_t i = 0; i < work_.num_vars(); ++i) space *= double(p);
  space *= std::pow(2.0, double(input_bools.size()));
  if (space > 2e5) return;
  for (AtomId a : aux_bools)
    if (!work_.atoms[a].definition) return;  // cannot complete the model

  std::vector<std::optional<eval64::Poly64>> compiled;
  eval64::Term64 term_eval(work_.field);
  std::vector<std::uint64_t> ffvals(work_.num_vars(), 0);
  std::vector<char> boolvals(work_.atoms.size(), 0);
  std::uint64_t total = static_cast<std::uint64_t>(space);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (VarId v = 0; v < work_.num_vars(); ++v) {
      ffvals[v] = rest % p;
      rest /= p;
    }
    for (AtomId a : input_bools) {
      boolvals[a] = rest & 1;
      rest >>= 1;
    }
    for (AtomId a : aux_bools)
      boolvals[a] =
          term_eval.eval_bool(*work_.atoms[a].definition, ffvals, boolvals);
    bool inputs_ok = true;
    for (std::size_t i = 0; i < num_input_clauses_ && inputs_ok; ++i) {
      bool any = false;
      for (Literal l : clauses_[i].lits)
        if (lit_true_64(work_, compiled, l, ffvals, boolvals)) {
          any = true;
          break;
        }
      inputs_ok = any;
    }
    if (!inputs_ok) continue;
    bool any = false;
    for (Literal l : learned.lits)
      if (lit_true_64(work_, compiled, l, ffvals, boolvals)) {
        any = true;
        break;
      }
    if (!any) {
      ++audit_.violations;
      audit_.details.push_back("learned clause not entailed: " +
                               work_.clause_string(learned));
      return;
    }
  }
}

void Solver::trace_clause(const char* tag, const Clause& c) const {
  if (!config_.trace_lemmas) return;
  std::string sort_text =
      "(_ FiniteField " + work_.field.order().get_str() + ")";
  std::string out = "(or";
  for (Literal l : c.lits) {
    const AtomInfo& info = work_.atoms[l.atom()];
    std::string atom_text =
        info.kind == AtomInfo::Kind::BoolVar
            ? info.name
            : "(= " + poly_to_smt2(*info.poly, work_.var_names, sort_text) +
                  " (as ff0 " + sort_text + "))";
    out += l.positive() ? " " + atom_text : " (not " + atom_text + ")";
  }
  out += ")";
  std::cerr << ";; " << tag << " " << out << "\n";
}

Result solve(const Problem& problem, const SolverConfig& config) {
  Solver s(problem, config);
  return s.solve();
}

}  // namespace ffmcsat
