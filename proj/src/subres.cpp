#include <optional>

#include "ffmcsat/poly.hpp"

// Subresultant polynomial remainder sequence over F_p[other vars][x].
// Serves the SRS explainer hook only; not on the solving path.

namespace ffmcsat {

namespace {

int deg_in_x(const Polynomial& f, VarId x) {
  if (f.is_zero()) return -1;
  return static_cast<int>(f.degree_in(x));
}

// Coefficient of x^d in f, a polynomial in the remaining variables.
Polynomial coeff_of(const Polynomial& f, VarId x, unsigned d) {
  std::vector<Monomial> ms;
  for (const Monomial& m : f.monomials()) {
    if (m.degree_in(x) != d) continue;
    Monomial r{m.coeff, {}};
    for (auto& [v, e] : m.exps)
      if (v != x) r.exps.emplace_back(v, e);
    ms.push_back(std::move(r));
  }
  return Polynomial::from_monomials(f.field(), std::move(ms));
}

Polynomial x_power(const Field& f, VarId x, unsigned d) {
  if (d == 0) return Polynomial::constant(f.one());
  return Polynomial::from_monomials(f, {Monomial{f.one(), {{x, d}}}});
}

Polynomial poly_pow(const Polynomial& base, unsigned e) {
  Polynomial acc = Polynomial::constant(base.field().one());
  for (unsigned i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

// Leading-term division in lex order; exact or nothing.
std::optional<Polynomial> exact_div(const Polynomial& f, const Polynomial& d) {
  internal_check(!d.is_zero(), "exact division by zero");
  Polynomial rem = f;
  std::vector<Monomial> quo;
  const Monomial& dl = d.monomials().front();
  while (!rem.is_zero()) {
    const Monomial& rl = rem.monomials().front();
    Monomial q{rl.coeff * dl.coeff.inverse(), {}};
    size_t i = 0;
    for (auto& [v, e] : rl.exps) {
      if (i < dl.exps.size() && dl.exps[i].first < v) return std::nullopt;
      unsigned de = (i < dl.exps.size() && dl.exps[i].first == v)
                        ? dl.exps[i++].second
                        : 0;
      if (de > e) return std::nullopt;
      if (e - de > 0) q.exps.emplace_back(v, e - de);
    }
    if (i < dl.exps.size()) return std::nullopt;
    Polynomial qp = Polynomial::from_monomials(f.field(), {q});
    rem = rem - qp * d;
    quo.push_back(std::move(q));
  }
  return Polynomial::from_monomials(f.field(), std::move(quo));
}

// lc(B)^(deg A - deg B + 1) * A mod B, eliminating x top-down.
Polynomial prem(const Polynomial& A, const Polynomial& B, VarId x) {
  int da = deg_in_x(A, x), db = deg_in_x(B, x);
  internal_check(db >= 0, "pseudo-remainder by zero");
  Polynomial lcB = coeff_of(B, x, db);
  Polynomial R = A;
  int e = da - db + 1;
  for (int dR = deg_in_x(R, x); dR >= db && !R.is_zero();
       dR = deg_in_x(R, x)) {
    Polynomial lcR = coeff_of(R, x, dR);
    R = lcB * R - lcR * x_power(A.field(), x, dR - db) * B;
    --e;
  }
  for (; e > 0; --e) R = lcB * R;
  return R;
}

}  // namespace

std::vector<Polynomial> subresultant_chain(const Polynomial& f,
                                           const Polynomial& g, VarId x) {
  if (deg_in_x(f, x) <= 0 || deg_in_x(g, x) <= 0)
    throw Error(Errc::NotPolynomialInX,
                "subresultant chain needs positive degree in the main variable");
  std::vector<Polynomial> chain{f, g};
  Polynomial a = f, b = g;
  if (deg_in_x(a, x) < deg_in_x(b, x)) std::swap(a, b);
  Polynomial gprev = Polynomial::constant(f.field().one());
  Polynomial h = gprev;
  for (;;) {
    unsigned delta = unsigned(deg_in_x(a, x) - deg_in_x(b, x));
    Polynomial r = prem(a, b, x);
    if (r.is_zero()) {
      chain.push_back(r);
      break;
    }
    auto reduced = exact_div(r, gprev * poly_pow(h, delta));
    internal_check(reduced.has_value(), "subresultant divisor must divide");
    chain.push_back(*reduced);
    if (deg_in_x(*reduced, x) <= 0) break;
    a = b;
    b = *reduced;
    gprev = coeff_of(a, x, deg_in_x(a, x));
    if (delta == 1) {
      h = gprev;
    } else if (delta > 1) {
      auto hh = exact_div(poly_pow(gprev, delta), poly_pow(h, delta - 1));
      internal_check(hh.has_value(), "subresultant h update must divide");
      h = *hh;
    }
  }
  return chain;
}

}  // namespace ffmcsat
