#pragma once

// Finite-field theory plugin: watch lists for unit-constraint detection,
// feasible-set tracking per variable, theory propagation of singleton sets,
// conflict detection, and explanation of conflicts and propagations.

#include <optional>
#include <vector>

#include "ffmcsat/feasible.hpp"
#include "ffmcsat/trail.hpp"

namespace ffmcsat {

// A contribution together with the feasible set it imposed; kept so conflict
// cores re-verify as infeasible before being explained.
struct CoreEntry {
  Contribution contrib;
  FeasibleSet set;
};

struct ConflictCore {
  VarId var;
  std::vector<CoreEntry> entries;
};

struct FFPropagationOut {
  VarId var;
  FieldElement value;
  std::vector<Contribution> core;
};

// Solver-side atom creation hook: explanations build (x = v) atoms on
// demand, canonically x - v, hash-consed with everything else.
class AtomRegistry {
 public:
  virtual ~AtomRegistry() = default;
  virtual AtomId eq_atom(VarId var, const FieldElement& value) = 0;
};

enum class ExplainStrategy { Point, Srs };

class FFPlugin {
 public:
  FFPlugin(Field field, const Trail& trail, Rng& rng, bool theory_propagation)
      : field_(std::move(field)),
        trail_(trail),
        rng_(rng),
        theory_propagation_(theory_propagation) {}

  void register_atom(AtomId atom, const Polynomial& poly);

  // Constraint became asserted with the given polarity / variable got a
  // value. Events are processed against the trail prefix [0, view_end) —
  // the element being processed is view_end - 1 — which keeps feasible-set
  // updates exactly undoable. New theory propagations are appended; the
  // first empty feasible set aborts with a conflict core.
  std::optional<ConflictCore> on_atom_assigned(
      AtomId atom, std::size_t view_end,
      std::vector<FFPropagationOut>& out_props);
  std::optional<ConflictCore> on_var_assigned(
      VarId var, std::size_t view_end,
      std::vector<FFPropagationOut>& out_props);

  FeasibleSet feasible(VarId var) const;

  // Point explanation: core literal negations plus the negated assignment
  // point. Valid over F_p and false under the current trail. Srs is the
  // zero-decomposition extension hook and reports NotImplemented.
  Clause explain_conflict(const ConflictCore& core, AtomRegistry& atoms,
                          ExplainStrategy strategy) const;

  // Lemma with (var = value) as its only non-false literal; nullopt when it
  // collapses to a tautology (the propagating atom is a core atom itself).
  std::optional<Clause> explain_propagation(
      VarId var, const FieldElement& value,
      const std::vector<Contribution>& core, AtomRegistry& atoms) const;

  // Restores feasible sets to their state when the trail had `trail_size`
  // elements.
  void undo_to(std::size_t trail_size);

  // Watch integrity (for tests): every asserted constraint with >= 2
  // unassigned variables watches two distinct unassigned variables.
  bool watches_consistent() const;

 private:
  struct ConstraintInfo {
    AtomId atom;
    Polynomial poly;
    std::vector<VarId> vars;
    VarId watch[2];
  };
  struct UndoEntry {
    std::size_t stamp;  // minimum trail length at which the update is valid
    VarId var;
    std::optional<FeasibleSet> prev;
  };

  bool visible_ff(VarId v, std::size_t view_end) const;
  std::optional<ConflictCore> process_unit(
      std::size_t cid, VarId unit_var, std::size_t view_end,
      std::vector<FFPropagationOut>& out);
  std::vector<CoreEntry> greedy_core(VarId var, bool until_empty,
                                     const FieldElement* singleton) const;

  Field field_;
  const Trail& trail_;
  Rng& rng_;
  bool theory_propagation_;

  std::vector<ConstraintInfo> constraints_;
  std::vector<std::optional<std::size_t>> atom_to_constraint_;
  std::vector<std::vector<std::size_t>> watchers_;  // var -> constraint ids
  std::vector<std::optional<FeasibleSet>> feasible_;
  std::vector<std::vector<CoreEntry>> contributions_;
  std::vector<UndoEntry> undo_;
};

}  // namespace ffmcsat
