#pragma once

// The MCSat trail: interleaved Boolean and first-order assignments with
// decision levels and justifications. Invariant maintained by the engine:
// under the current partial assignment no asserted constraint fully
// evaluates to the complement of its asserted value.

#include <cstdint>
#include <optional>
#include <vector>

#include "ffmcsat/formula.hpp"

namespace ffmcsat {

enum class TrailKind : std::uint8_t {
  BoolDecision,
  BoolPropagation,
  EvalPropagation,
  FFDecision,
  FFPropagation,
};

using ClauseRef = std::uint32_t;
inline constexpr ClauseRef kNoClause = UINT32_MAX;

// One unit-constraint contribution to a variable's feasible set: the
// asserted literal, the assignments its residual substituted (with trail
// indices for exact undo), and the set it imposed on the variable.
struct Contribution {
  Literal lit;
  std::vector<std::pair<VarId, FieldElement>> assignments;
  std::vector<std::size_t> assignment_indices;
};

struct TrailElement {
  TrailKind kind;
  std::uint32_t level;
  Literal lit;                        // Bool*/EvalPropagation
  ClauseRef reason = kNoClause;       // BoolPropagation
  VarId var = 0;                      // FF kinds
  std::optional<FieldElement> value;  // FF kinds
  std::vector<Contribution> core;     // FFPropagation justification
};

class Trail {
 public:
  std::uint32_t level() const { return level_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t max_size_seen() const { return max_size_; }
  const TrailElement& operator[](std::size_t i) const { return elements_[i]; }

  void ensure_atom_capacity(std::size_t n);

  Lbool bool_value(AtomId a) const {
    return a < bool_values_.size() ? bool_values_[a] : Lbool::Undef;
  }
  bool has_bool(AtomId a) const { return bool_value(a) != Lbool::Undef; }
  // Truth of a literal under the Boolean assignment only.
  Lbool lit_value(Literal l) const;
  std::size_t bool_index(AtomId a) const { return bool_index_[a]; }

  const Assignment& ff() const { return ff_; }
  bool has_ff(VarId v) const { return ff_.has(v); }
  std::size_t ff_index(VarId v) const { return ff_index_[v]; }

  void push_bool(TrailKind kind, Literal l, ClauseRef reason);
  void push_ff(TrailKind kind, VarId v, FieldElement value,
               std::vector<Contribution> core);

  // Pops every element above `level`; reports each popped Boolean atom with
  // its old value (for phase saving) via the out-parameter.
  void backtrack(std::uint32_t level,
                 std::vector<std::pair<AtomId, bool>>* popped_bools);

 private:
  std::vector<TrailElement> elements_;
  std::vector<std::size_t> level_marks_;  // trail size when each level opened
  std::uint32_t level_ = 0;
  std::size_t max_size_ = 0;

  std::vector<Lbool> bool_values_;
  std::vector<std::size_t> bool_index_;
  Assignment ff_;
  std::vector<std::size_t> ff_index_;
};

}  // namespace ffmcsat
