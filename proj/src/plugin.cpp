#include "ffmcsat/plugin.hpp"

#include <algorithm>

namespace ffmcsat {

void FFPlugin::register_atom(AtomId atom, const Polynomial& poly) {
  if (atom_to_constraint_.size() <= atom) atom_to_constraint_.resize(atom + 1);
  if (atom_to_constraint_[atom].has_value()) return;
  std::size_t cid = constraints_.size();
  ConstraintInfo info{atom, poly, poly.vars(), {0, 0}};
  internal_check(!info.vars.empty(), "constraint without variables");
  VarId maxv = info.vars.back();
  if (watchers_.size() <= maxv) {
    watchers_.resize(maxv + 1);
    feasible_.resize(maxv + 1);
    contributions_.resize(maxv + 1);
  }
  info.watch[0] = info.vars[0];
  info.watch[1] = info.vars.size() > 1 ? info.vars[1] : info.vars[0];
  watchers_[info.watch[0]].push_back(cid);
  if (info.watch[1] != info.watch[0]) watchers_[info.watch[1]].push_back(cid);
  constraints_.push_back(std::move(info));
  atom_to_constraint_[atom] = cid;
}

FeasibleSet FFPlugin::feasible(VarId var) const {
  if (var < feasible_.size() && feasible_[var].has_value())
    return *feasible_[var];
  return FeasibleSet::full(field_);
}

bool FFPlugin::visible_ff(VarId v, std::size_t view_end) const {
  return trail_.has_ff(v) && trail_.ff_index(v) < view_end;
}

std::optional<ConflictCore> FFPlugin::on_atom_assigned(
    AtomId atom, std::size_t view_end,
    std::vector<FFPropagationOut>& out_props) {
  if (atom >= atom_to_constraint_.size() || !atom_to_constraint_[atom])
    return std::nullopt;  // pure Boolean atom
  std::size_t cid = *atom_to_constraint_[atom];
  const ConstraintInfo& c = constraints_[cid];
  VarId unit_var = 0;
  int unassigned = 0;
  for (VarId v : c.vars) {
    if (!visible_ff(v, view_end)) {
      unit_var = v;
      if (++unassigned > 1) break;
    }
  }
  if (unassigned == 1) return process_unit(cid, unit_var, view_end, out_props);
  return std::nullopt;
}

std::optional<ConflictCore> FFPlugin::on_var_assigned(
    VarId var, std::size_t view_end,
    std::vector<FFPropagationOut>& out_props) {
  if (var >= watchers_.size()) return std::nullopt;
  std::vector<std::size_t>& watch_list = watchers_[var];
  std::size_t keep = 0;
  std::optional<ConflictCore> conflict;
  for (std::size_t i = 0; i < watch_list.size(); ++i) {
    std::size_t cid = watch_list[i];
    if (conflict) {
      watch_list[keep++] = cid;
      continue;
    }
    ConstraintInfo& c = constraints_[cid];
    VarId other = c.watch[0] == var ? c.watch[1] : c.watch[0];
    VarId replacement = var;
    for (VarId v : c.vars) {
      if (v != other && !visible_ff(v, view_end)) {
        replacement = v;
        break;
      }
    }
    if (replacement != var) {
      (c.watch[0] == var ? c.watch[0] : c.watch[1]) = replacement;
      watchers_[replacement].push_back(cid);
      continue;  // dropped from this list
    }
    watch_list[keep++] = cid;
    if (other != var && !visible_ff(other, view_end)) {
      // Unit in the other watch.
      conflict = process_unit(cid, other, view_end, out_props);
    }
    // Otherwise fully assigned; evaluation propagation owns that case.
  }
  watch_list.resize(keep);
  return conflict;
}

std::optional<ConflictCore> FFPlugin::process_unit(
    std::size_t cid, VarId unit_var, std::size_t view_end,
    std::vector<FFPropagationOut>& out) {
  const ConstraintInfo& c = constraints_[cid];
  // Only asserted constraints restrict feasible values; an unasserted one
  // is re-examined when its atom gets a Boolean value.
  if (!trail_.has_bool(c.atom) || trail_.bool_index(c.atom) >= view_end)
    return std::nullopt;
  bool polarity = trail_.bool_value(c.atom) == Lbool::True;

  Assignment view;
  for (VarId v : c.vars)
    if (visible_ff(v, view_end)) view.set(v, *trail_.ff().try_get(v));
  Polynomial residual = c.poly.partial_evaluate(view);
  if (residual.is_constant()) return std::nullopt;  // evaluation territory

  UnivariatePoly univ = to_univariate(residual);
  internal_check(univ.var() == unit_var, "unit detection variable mismatch");
  FeasibleSet update = feasible_update(univ, polarity, rng_);
  FeasibleSet cur = feasible(unit_var);
  FeasibleSet next = cur.intersect(update);
  if (next == cur) return std::nullopt;  // no semantic change, keep cores lean

  Contribution contrib;
  contrib.lit = polarity ? Literal::pos(c.atom) : Literal::neg(c.atom);
  for (VarId v : c.vars) {
    if (v == unit_var) continue;
    contrib.assignments.emplace_back(v, *trail_.ff().try_get(v));
    contrib.assignment_indices.push_back(trail_.ff_index(v));
  }

  // The triggering element (view_end - 1) is itself a dependency, so the
  // update is valid exactly while the trail keeps view_end elements.
  undo_.push_back(UndoEntry{view_end, unit_var, feasible_[unit_var]});
  internal_check(undo_.size() < 2 || undo_[undo_.size() - 2].stamp <= view_end,
                 "undo stamps must be monotone");
  contributions_[unit_var].push_back(CoreEntry{contrib, update});
  feasible_[unit_var] = next;

  if (next.is_empty())
    return ConflictCore{unit_var, greedy_core(unit_var, true, nullptr)};

  if (theory_propagation_ && !trail_.has_ff(unit_var)) {
    if (auto v = next.singleton()) {
      std::vector<CoreEntry> entries = greedy_core(unit_var, false, &*v);
      std::vector<Contribution> core;
      core.reserve(entries.size());
      for (CoreEntry& e : entries) core.push_back(std::move(e.contrib));
      out.push_back(FFPropagationOut{unit_var, *v, std::move(core)});
    }
  }
  return std::nullopt;
}

// Newest-first accumulation until the intersection is empty (conflict cores)
// or pinned to the propagated singleton.
std::vector<CoreEntry> FFPlugin::greedy_core(
    VarId var, bool until_empty, const FieldElement* singleton) const {
  const std::vector<CoreEntry>& all = contributions_[var];
  std::vector<CoreEntry> picked;
  FeasibleSet acc = FeasibleSet::full(field_);
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    picked.push_back(*it);
    acc = acc.intersect(it->set);
    if (until_empty && acc.is_empty()) return picked;
    if (!until_empty) {
      auto s = acc.singleton();
      if (s && *s == *singleton) return picked;
    }
  }
  internal_check(false, "core accumulation never reached its target");
  return picked;
}

Clause FFPlugin::explain_conflict(const ConflictCore& core,
                                  AtomRegistry& atoms,
                                  ExplainStrategy strategy) const {
  if (strategy == ExplainStrategy::Srs)
    throw Error(Errc::NotImplemented,
                "srs explanation is an extension hook; use the point explainer");
  // Re-verify infeasibility before emitting a lemma.
  FeasibleSet acc = FeasibleSet::full(field_);
  for (const CoreEntry& e : core.entries) acc = acc.intersect(e.set);
  internal_check(acc.is_empty(), "InvalidCore: conflict core is feasible");

  std::vector<Literal> lits;
  for (const CoreEntry& e : core.entries) {
    lits.push_back(~e.contrib.lit);
    for (auto& [v, val] : e.contrib.assignments)
      lits.push_back(Literal::neg(atoms.eq_atom(v, val)));
  }
  auto clause = Clause::make(std::move(lits), ClauseOrigin::LearnedTheory);
  internal_check(clause.has_value(), "InvalidCore: tautological explanation");
  return *clause;
}

std::optional<Clause> FFPlugin::explain_propagation(
    VarId var, const FieldElement& value,
    const std::vector<Contribution>& core, AtomRegistry& atoms) const {
  std::vector<Literal> lits;
  lits.push_back(Literal::pos(atoms.eq_atom(var, value)));
  for (const Contribution& c : core) {
    lits.push_back(~c.lit);
    for (auto& [v, val] : c.assignments)
      lits.push_back(Literal::neg(atoms.eq_atom(v, val)));
  }
  return Clause::make(std::move(lits), ClauseOrigin::LearnedTheory);
}

void FFPlugin::undo_to(std::size_t trail_size) {
  while (!undo_.empty() && undo_.back().stamp > trail_size) {
    UndoEntry& e = undo_.back();
    feasible_[e.var] = std::move(e.prev);
    contributions_[e.var].pop_back();
    undo_.pop_back();
  }
}

bool FFPlugin::watches_consistent() const {
  for (const ConstraintInfo& c : constraints_) {
    int unassigned = 0;
    for (VarId v : c.vars)
      if (!trail_.has_ff(v)) ++unassigned;
    if (unassigned < 2) continue;
    if (c.watch[0] == c.watch[1]) return false;
    if (trail_.has_ff(c.watch[0]) || trail_.has_ff(c.watch[1])) return false;
  }
  return true;
}

}  // namespace ffmcsat
