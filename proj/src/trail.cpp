#include "ffmcsat/trail.hpp"

#include "ffmcsat/error.hpp"

namespace ffmcsat {

void Trail::ensure_atom_capacity(std::size_t n) {
  if (bool_values_.size() < n) {
    bool_values_.resize(n, Lbool::Undef);
    bool_index_.resize(n, 0);
  }
}

Lbool Trail::lit_value(Literal l) const {
  Lbool v = bool_value(l.atom());
  if (v == Lbool::Undef) return Lbool::Undef;
  bool t = (v == Lbool::True) == l.positive();
  return lbool_of(t);
}

void Trail::push_bool(TrailKind kind, Literal l, ClauseRef reason) {
  internal_check(kind == TrailKind::BoolDecision ||
                     kind == TrailKind::BoolPropagation ||
                     kind == TrailKind::EvalPropagation,
                 "push_bool with FF kind");
  internal_check(!has_bool(l.atom()), "atom assigned twice");
  if (kind == TrailKind::BoolDecision) {
    level_marks_.push_back(elements_.size());
    ++level_;
  }
  ensure_atom_capacity(l.atom() + 1);
  bool_values_[l.atom()] = lbool_of(l.positive());
  bool_index_[l.atom()] = elements_.size();
  elements_.push_back(TrailElement{kind, level_, l, reason, 0, {}, {}});
  max_size_ = std::max(max_size_, elements_.size());
}

void Trail::push_ff(TrailKind kind, VarId v, FieldElement value,
                    std::vector<Contribution> core) {
  internal_check(
      kind == TrailKind::FFDecision || kind == TrailKind::FFPropagation,
      "push_ff with Boolean kind");
  internal_check(!ff_.has(v), "variable assigned twice");
  if (kind == TrailKind::FFDecision) {
    level_marks_.push_back(elements_.size());
    ++level_;
  }
  if (ff_index_.size() <= v) ff_index_.resize(v + 1, 0);
  ff_.set(v, value);
  ff_index_[v] = elements_.size();
  elements_.push_back(TrailElement{kind, level_, Literal(), kNoClause, v,
                                   std::move(value), std::move(core)});
  max_size_ = std::max(max_size_, elements_.size());
}

void Trail::backtrack(std::uint32_t level,
                      std::vector<std::pair<AtomId, bool>>* popped_bools) {
  internal_check(level < level_, "backtrack must strictly decrease the level");
  std::size_t keep = level_marks_[level];
  while (elements_.size() > keep) {
    const TrailElement& e = elements_.back();
    switch (e.kind) {
      case TrailKind::BoolDecision:
      case TrailKind::BoolPropagation:
      case TrailKind::EvalPropagation:
        if (popped_bools)
          popped_bools->emplace_back(e.lit.atom(), e.lit.positive());
        bool_values_[e.lit.atom()] = Lbool::Undef;
        break;
      case TrailKind::FFDecision:
      case TrailKind::FFPropagation:
        ff_.unset(e.var);
        break;
    }
    elements_.pop_back();
  }
  level_marks_.resize(level);
  level_ = level;
}

}  // namespace ffmcsat
