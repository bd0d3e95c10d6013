#include "ffmcsat/formula.hpp"

#include <algorithm>

namespace ffmcsat {

std::optional<Clause> Clause::make(std::vector<Literal> lits, ClauseOrigin o) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i].atom() == lits[i + 1].atom()) return std::nullopt;  // tautology
  return Clause{std::move(lits), o};
}

std::size_t Clause::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (Literal l : lits) h = (h ^ l.code()) * 1099511628211ull;
  return h;
}

TermPtr Term::ff_const(FieldElement v) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::FFConst;
  t->ff_value = std::move(v);
  return t;
}

TermPtr Term::ff_var(VarId v) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::FFVar;
  t->var = v;
  return t;
}

TermPtr Term::bool_const(bool v) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::BoolConst;
  t->bool_value = v;
  return t;
}

TermPtr Term::bool_var(AtomId a) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::BoolVar;
  t->bool_atom = a;
  return t;
}

TermPtr Term::apply(Kind k, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->args = std::move(args);
  return t;
}

VarId Problem::add_var(const std::string& name) {
  var_names.push_back(name);
  return static_cast<VarId>(var_names.size() - 1);
}

std::optional<AtomId> Problem::find_poly_atom(const Polynomial& p) const {
  auto it = poly_index_.find(p.hash());
  if (it == poly_index_.end()) return std::nullopt;
  for (AtomId a : it->second)
    if (*atoms[a].poly == p) return a;
  return std::nullopt;
}

AtomId Problem::add_poly_atom(const Polynomial& p) {
  internal_check(!p.is_constant(), "constant polynomial atoms must be folded");
  if (auto existing = find_poly_atom(p)) return *existing;
  AtomId id = static_cast<AtomId>(atoms.size());
  atoms.push_back(AtomInfo{AtomInfo::Kind::Poly, p, "", false, nullptr});
  poly_index_[p.hash()].push_back(id);
  return id;
}

AtomId Problem::add_bool_atom(const std::string& name, bool aux,
                              TermPtr definition) {
  auto it = bool_index_.find(name);
  if (it != bool_index_.end()) return it->second;
  AtomId id = static_cast<AtomId>(atoms.size());
  atoms.push_back(
      AtomInfo{AtomInfo::Kind::BoolVar, std::nullopt, name, aux, definition});
  bool_index_.emplace(name, id);
  return id;
}

std::string Problem::atom_string(AtomId a) const {
  const AtomInfo& info = atoms[a];
  if (info.kind == AtomInfo::Kind::BoolVar) return info.name;
  auto namer = [this](VarId v) { return var_names[v]; };
  return "(" + info.poly->to_string(namer) + " = 0)";
}

std::string Problem::literal_string(Literal l) const {
  return l.positive() ? atom_string(l.atom()) : "~" + atom_string(l.atom());
}

FieldElement eval_term_ff(const Term& t, const Field& f, const Assignment& nu) {
  switch (t.kind) {
    case Term::Kind::FFConst:
      return *t.ff_value;
    case Term::Kind::FFVar:
      return nu.get(t.var);
    case Term::Kind::FFAdd: {
      FieldElement acc = f.zero();
      for (const TermPtr& a : t.args) acc = acc + eval_term_ff(*a, f, nu);
      return acc;
    }
    case Term::Kind::FFMul: {
      FieldElement acc = f.one();
      for (const TermPtr& a : t.args) acc = acc * eval_term_ff(*a, f, nu);
      return acc;
    }
    default:
      throw InternalError("Boolean term in FF evaluation");
  }
}

namespace {

bool is_bool_kind(Term::Kind k) {
  switch (k) {
    case Term::Kind::BoolConst:
    case Term::Kind::BoolVar:
    case Term::Kind::Eq:
    case Term::Kind::Not:
    case Term::Kind::And:
    case Term::Kind::Or:
    case Term::Kind::Implies:
    case Term::Kind::Xor:
      return true;
    default:
      return false;
  }
}

}  // namespace

bool eval_term_bool(const Term& t, const Field& f, const Assignment& nu,
                    const std::vector<Lbool>& bools) {
  switch (t.kind) {
    case Term::Kind::BoolConst:
      return t.bool_value;
    case Term::Kind::BoolVar: {
      Lbool v = t.bool_atom < bools.size() ? bools[t.bool_atom] : Lbool::Undef;
      if (v == Lbool::Undef)
        throw Error(Errc::IncompleteAssignment, "unassigned Boolean variable");
      return v == Lbool::True;
    }
    case Term::Kind::Eq:
      if (is_bool_kind(t.args[0]->kind))
        return eval_term_bool(*t.args[0], f, nu, bools) ==
               eval_term_bool(*t.args[1], f, nu, bools);
      return eval_term_ff(*t.args[0], f, nu) == eval_term_ff(*t.args[1], f, nu);
    case Term::Kind::Not:
      return !eval_term_bool(*t.args[0], f, nu, bools);
    case Term::Kind::And:
      for (const TermPtr& a : t.args)
        if (!eval_term_bool(*a, f, nu, bools)) return false;
      return true;
    case Term::Kind::Or:
      for (const TermPtr& a : t.args)
        if (eval_term_bool(*a, f, nu, bools)) return true;
      return false;
    case Term::Kind::Implies:
      for (std::size_t i = 0; i + 1 < t.args.size(); ++i)
        if (!eval_term_bool(*t.args[i], f, nu, bools)) return true;
      return eval_term_bool(*t.args.back(), f, nu, bools);
    case Term::Kind::Xor: {
      bool acc = false;
      for (const TermPtr& a : t.args) acc ^= eval_term_bool(*a, f, nu, bools);
      return acc;
    }
    default:
      throw InternalError("FF term in Boolean evaluation");
  }
}

std::string Problem::clause_string(const Clause& c) const {
  if (c.lits.empty()) return "[]";
  std::string s = "[";
  for (size_t i = 0; i < c.lits.size(); ++i) {
    if (i) s += " | ";
    s += literal_string(c.lits[i]);
  }
  return s + "]";
}

}  // namespace ffmcsat
