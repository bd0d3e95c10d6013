#include "ffmcsat/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "eval64.hpp"

namespace ffmcsat {

namespace {

struct Space {
  std::uint64_t p = 0;
  std::size_t nvars = 0;
  std::vector<AtomId> input_bools;
  std::vector<AtomId> aux_bools;
  std::uint64_t ff_total = 1;
  std::uint64_t bool_total = 1;

  void decode_ff(std::uint64_t idx, std::vector<std::uint64_t>& vals) const {
    // Lexicographic: variable 0 is the most significant digit.
    for (std::size_t v = nvars; v-- > 0;) {
      vals[v] = idx % p;
      idx /= p;
    }
  }
};

Space make_space(const Problem& problem, std::uint64_t guard) {
  Space s;
  s.nvars = problem.num_vars();
  for (AtomId a = 0; a < problem.atoms.size(); ++a) {
    if (problem.atoms[a].kind != AtomInfo::Kind::BoolVar) continue;
    (problem.atoms[a].aux ? s.aux_bools : s.input_bools).push_back(a);
  }
  double total = std::pow(2.0, double(s.input_bools.size()));
  if (s.nvars > 0) {
    if (!eval64::field_fits(problem.field))
      throw Error(Errc::SearchSpaceTooLarge,
                  "field order too large to enumerate");
    s.p = problem.field.order_ul();
    for (std::size_t i = 0; i < s.nvars; ++i) total *= double(s.p);
  } else {
    s.p = eval64::field_fits(problem.field) ? problem.field.order_ul() : 2;
  }
  if (total > double(guard))
    throw Error(Errc::SearchSpaceTooLarge,
                "assignment space exceeds the enumeration guard");
  for (std::size_t i = 0; i < s.nvars; ++i) s.ff_total *= s.p;
  for (std::size_t i = 0; i < s.input_bools.size(); ++i) s.bool_total *= 2;
  return s;
}

// One fully decoded candidate: does it satisfy the problem? Terms are the
// source of truth when present; otherwise the clauses, with Tseitin
// variables completed from their definitions. Word-sized fields use the
// compiled evaluators; the arbitrary-precision fallback only matters for
// variable-free problems over vast orders.
class Checker {
 public:
  Checker(const Problem& problem, const Space& space)
      : problem_(problem), space_(space), term_eval_(problem.field) {
    mpz_mode_ = !eval64::field_fits(problem.field);
    if (!mpz_mode_) {
      compiled_.resize(problem.atoms.size());
      for (AtomId a = 0; a < problem.atoms.size(); ++a)
        if (problem.atoms[a].kind == AtomInfo::Kind::Poly)
          compiled_[a] = eval64::Poly64::compile(*problem.atoms[a].poly);
    }
    use_terms_ = !problem.assertions.empty();
    if (!use_terms_)
      for (AtomId a : space.aux_bools)
        internal_check(problem.atoms[a].definition != nullptr,
                       "aux variable without definition in CNF-only problem");
  }

  bool satisfied(const std::vector<std::uint64_t>& ffvals,
                 std::vector<char>& boolvals) const {
    if (mpz_mode_) return satisfied_mpz(boolvals);
    if (use_terms_) {
      for (const TermPtr& t : problem_.assertions)
        if (!term_eval_.eval_bool(*t, ffvals, boolvals)) return false;
      return true;
    }
    for (AtomId a : space_.aux_bools)
      boolvals[a] = term_eval_.eval_bool(*problem_.atoms[a].definition, ffvals,
                                         boolvals);
    for (const Clause& c : problem_.clauses) {
      bool any = false;
      for (Literal l : c.lits) {
        const AtomInfo& info = problem_.atoms[l.atom()];
        bool v = info.kind == AtomInfo::Kind::Poly
                     ? compiled_[l.atom()]->eval(ffvals) == 0
                     : boolvals[l.atom()] != 0;
        if (v == l.positive()) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

 private:
  bool satisfied_mpz(const std::vector<char>& boolvals) const {
    // Only reachable with zero FF variables (make_space guards the rest).
    Assignment nu;
    std::vector<Lbool> bools(problem_.atoms.size(), Lbool::Undef);
    for (AtomId a : space_.input_bools) bools[a] = lbool_of(boolvals[a] != 0);
    if (use_terms_) {
      for (const TermPtr& t : problem_.assertions)
        if (!eval_term_bool(*t, problem_.field, nu, bools)) return false;
      return true;
    }
    for (AtomId a : space_.aux_bools)
      bools[a] = lbool_of(eval_term_bool(*problem_.atoms[a].definition,
                                         problem_.field, nu, bools));
    for (const Clause& c : problem_.clauses) {
      bool any = false;
      for (Literal l : c.lits) {
        const AtomInfo& info = problem_.atoms[l.atom()];
        bool v = info.kind == AtomInfo::Kind::Poly
                     ? info.poly->evaluate(nu).is_zero()
                     : bools[l.atom()] == Lbool::True;
        if (v == l.positive()) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  const Problem& problem_;
  const Space& space_;
  eval64::Term64 term_eval_;
  std::vector<std::optional<eval64::Poly64>> compiled_;
  bool use_terms_ = true;
  bool mpz_mode_ = false;
};

// First satisfying pair (ff index, bool index) at or after nothing, in
// lexicographic (ff-major) order; UINT64_MAX when none in the range.
std::uint64_t scan_range(const Checker& checker, const Space& space,
                         const Problem& problem, std::uint64_t begin,
                         std::uint64_t end, std::uint64_t* bool_idx_out) {
  std::vector<std::uint64_t> ffvals(space.nvars, 0);
  std::vector<char> boolvals(problem.atoms.size(), 0);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    space.decode_ff(idx, ffvals);
    for (std::uint64_t b = 0; b < space.bool_total; ++b) {
      std::uint64_t rest = b;
      for (AtomId a : space.input_bools) {
        boolvals[a] = rest & 1;
        rest >>= 1;
      }
      if (checker.satisfied(ffvals, boolvals)) {
        *bool_idx_out = b;
        return idx;
      }
    }
  }
  return UINT64_MAX;
}

Model build_model(const Problem& problem, const Space& space,
                  std::uint64_t ff_idx, std::uint64_t bool_idx) {
  Model m;
  std::vector<std::uint64_t> ffvals(space.nvars, 0);
  space.decode_ff(ff_idx, ffvals);
  for (VarId v = 0; v < space.nvars; ++v)
    m.ff.set(v, problem.field.element(mpz_class(ffvals[v])));
  m.bool_atoms.assign(problem.atoms.size(), Lbool::Undef);
  std::vector<char> boolvals(problem.atoms.size(), 0);
  std::uint64_t rest = bool_idx;
  for (AtomId a : space.input_bools) {
    boolvals[a] = rest & 1;
    rest >>= 1;
    m.bool_atoms[a] = lbool_of(boolvals[a] != 0);
  }
  eval64::Term64 term_eval(problem.field);
  for (AtomId a : space.aux_bools)
    if (problem.atoms[a].definition)
      m.bool_atoms[a] = lbool_of(
          term_eval.eval_bool(*problem.atoms[a].definition, ffvals, boolvals));
  return m;
}

}  // namespace

OracleVerdict brute_force_solve(const Problem& problem,
                                const OracleOptions& opts) {
  Space space = make_space(problem, opts.guard);
  Checker checker(problem, space);

  std::uint64_t found_ff = UINT64_MAX;
  std::uint64_t found_bool = 0;

  if (!opts.parallel || space.ff_total < 4096) {
    // Serial reference path.
    found_ff = scan_range(checker, space, problem, 0, space.ff_total,
                          &found_bool);
  } else {
    // Block scan: blocks in lexicographic order, each split across threads;
    // the minimum hit inside a block is the global first hit.
    const std::uint64_t block = 65536;
    for (std::uint64_t base = 0; base < space.ff_total && found_ff == UINT64_MAX;
         base += block) {
      std::uint64_t limit = std::min(space.ff_total, base + block);
      std::uint64_t best = UINT64_MAX;
      std::uint64_t best_bool = 0;
#pragma omp parallel
      {
        std::uint64_t local_bool = 0;
        int nt = omp_get_num_threads();
        int tid = omp_get_thread_num();
        std::uint64_t chunk = (limit - base + nt - 1) / nt;
        std::uint64_t lo = base + chunk * std::uint64_t(tid);
        std::uint64_t hi = std::min(limit, lo + chunk);
        std::uint64_t local = lo < hi ? scan_range(checker, space, problem, lo,
                                                   hi, &local_bool)
                                      : UINT64_MAX;
#pragma omp critical
        {
          if (local < best) {
            best = local;
            best_bool = local_bool;
          }
        }
      }
      if (best != UINT64_MAX) {
        found_ff = best;
        found_bool = best_bool;
      }
    }
  }

  OracleVerdict out;
  if (found_ff == UINT64_MAX) {
    out.verdict = Verdict::Unsat;
    out.enumerated = space.ff_total;
  } else {
    out.verdict = Verdict::Sat;
    out.enumerated = found_ff + 1;  // lex position of the first hit
    out.model = build_model(problem, space, found_ff, found_bool);
  }
  return out;
}

ModelCheckResult check_model(const Problem& problem, const Model& model) {
  for (VarId v = 0; v < problem.num_vars(); ++v)
    if (!model.ff.has(v))
      throw Error(Errc::IncompleteModel,
                  "model misses variable " + problem.var_names[v]);

  Assignment ff = model.ff;
  std::vector<Lbool> bools = model.bool_atoms;
  bools.resize(problem.atoms.size(), Lbool::Undef);

  // Complete Tseitin variables from their definitions; reject missing input
  // Booleans outright.
  for (AtomId a = 0; a < problem.atoms.size(); ++a) {
    const AtomInfo& info = problem.atoms[a];
    if (info.kind != AtomInfo::Kind::BoolVar) continue;
    if (bools[a] != Lbool::Undef) continue;
    if (!info.aux)
      throw Error(Errc::IncompleteModel, "model misses Boolean " + info.name);
  }
  for (AtomId a = 0; a < problem.atoms.size(); ++a) {
    const AtomInfo& info = problem.atoms[a];
    if (info.kind != AtomInfo::Kind::BoolVar || bools[a] != Lbool::Undef)
      continue;
    internal_check(info.definition != nullptr,
                   "cannot complete aux Boolean without definition");
    bools[a] = lbool_of(eval_term_bool(*info.definition, problem.field, ff, bools));
  }

  for (const Clause& c : problem.clauses) {
    bool any = false;
    for (Literal l : c.lits) {
      const AtomInfo& info = problem.atoms[l.atom()];
      bool v;
      if (info.kind == AtomInfo::Kind::Poly) {
        v = info.poly->evaluate(ff).is_zero();
      } else {
        v = bools[l.atom()] == Lbool::True;
      }
      if (v == l.positive()) {
        any = true;
        break;
      }
    }
    if (!any) return ModelCheckResult{false, c};
  }
  return ModelCheckResult{true, std::nullopt};
}

}  // namespace ffmcsat
