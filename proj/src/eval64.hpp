#pragma once

// Fast evaluation over word-sized fields for the enumeration-heavy paths
// (brute-force oracle, lemma audits). Only valid when p < 2^32 so products
// of canonical representatives fit in 64 bits.

#include <cstdint>
#include <vector>

#include "ffmcsat/formula.hpp"

namespace ffmcsat::eval64 {

inline bool field_fits(const Field& f) {
  return f.small() && f.order_ul() < (1ull << 32);
}

struct Poly64 {
  std::uint64_t p = 0;
  struct Term {
    std::uint64_t coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> exps;
  };
  std::vector<Term> terms;

  static Poly64 compile(const Polynomial& poly) {
    Poly64 out;
    out.p = poly.field().order_ul();
    for (const Monomial& m : poly.monomials()) {
      Term t{m.coeff.value().get_ui(), {}};
      for (auto& [v, e] : m.exps) t.exps.emplace_back(v, e);
      out.terms.push_back(std::move(t));
    }
    return out;
  }

  std::uint64_t eval(const std::vector<std::uint64_t>& vals) const {
    std::uint64_t acc = 0;
    for (const Term& t : terms) {
      std::uint64_t prod = t.coeff;
      for (auto& [v, e] : t.exps) {
        std::uint64_t base = vals[v];
        for (std::uint32_t k = 0; k < e; ++k) prod = prod * base % p;
      }
      acc = (acc + prod) % p;
    }
    return acc;
  }
};

// Recursive term evaluation; Boolean variables are looked up by atom id.
class Term64 {
 public:
  Term64(const Field& f) : p_(f.order_ul()) {}

  std::uint64_t eval_ff(const Term& t, const std::vector<std::uint64_t>& ffvals) const {
    switch (t.kind) {
      case Term::Kind::FFConst:
        return t.ff_value->value().get_ui();
      case Term::Kind::FFVar:
        return ffvals[t.var];
      case Term::Kind::FFAdd: {
        std::uint64_t acc = 0;
        for (const TermPtr& a : t.args) acc = (acc + eval_ff(*a, ffvals)) % p_;
        return acc;
      }
      case Term::Kind::FFMul: {
        std::uint64_t acc = 1 % p_;
        for (const TermPtr& a : t.args) acc = acc * eval_ff(*a, ffvals) % p_;
        return acc;
      }
      default:
        throw InternalError("Boolean term in FF evaluation");
    }
  }

  bool eval_bool(const Term& t, const std::vector<std::uint64_t>& ffvals,
                 const std::vector<char>& boolvals) const {
    switch (t.kind) {
      case Term::Kind::BoolConst:
        return t.bool_value;
      case Term::Kind::BoolVar:
        return boolvals[t.bool_atom] != 0;
      case Term::Kind::Eq:
        if (t.args[0]->kind == Term::Kind::BoolConst ||
            t.args[0]->kind == Term::Kind::BoolVar ||
            t.args[0]->kind == Term::Kind::Not ||
            t.args[0]->kind == Term::Kind::And ||
            t.args[0]->kind == Term::Kind::Or ||
            t.args[0]->kind == Term::Kind::Implies ||
            t.args[0]->kind == Term::Kind::Xor ||
            t.args[0]->kind == Term::Kind::Eq)
          return eval_bool(*t.args[0], ffvals, boolvals) ==
                 eval_bool(*t.args[1], ffvals, boolvals);
        return eval_ff(*t.args[0], ffvals) == eval_ff(*t.args[1], ffvals);
      case Term::Kind::Not:
        return !eval_bool(*t.args[0], ffvals, boolvals);
      case Term::Kind::And:
        for (const TermPtr& a : t.args)
          if (!eval_bool(*a, ffvals, boolvals)) return false;
        return true;
      case Term::Kind::Or:
        for (const TermPtr& a : t.args)
          if (eval_bool(*a, ffvals, boolvals)) return true;
        return false;
      case Term::Kind::Implies: {
        for (size_t i = 0; i + 1 < t.args.size(); ++i)
          if (!eval_bool(*t.args[i], ffvals, boolvals)) return true;
        return eval_bool(*t.args.back(), ffvals, boolvals);
      }
      case Term::Kind::Xor: {
        bool acc = false;
        for (const TermPtr& a : t.args) acc ^= eval_bool(*a, ffvals, boolvals);
        return acc;
      }
      default:
        throw InternalError("FF term in Boolean evaluation");
    }
  }

 private:
  std::uint64_t p_;
};

}  // namespace ffmcsat::eval64
