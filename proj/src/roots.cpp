#include "ffmcsat/roots.hpp"

#include <algorithm>

namespace ffmcsat {

namespace {

// Arithmetic modulo m in F_p[x]; operands already reduced.
UnivariatePoly mulmod(const UnivariatePoly& a, const UnivariatePoly& b,
                      const UnivariatePoly& m) {
  return (a * b).divmod(m).second;
}

// base^e mod m by square-and-multiply over the bits of e.
UnivariatePoly powmod(const UnivariatePoly& base, const mpz_class& e,
                      const UnivariatePoly& m) {
  const Field& f = base.field();
  UnivariatePoly acc(f, base.var(), {f.one()});
  UnivariatePoly sq = base.divmod(m).second;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mulmod(acc, sq, m);
    if (i + 1 < bits) sq = mulmod(sq, sq, m);
  }
  return acc;
}

std::vector<FieldElement> scan_roots(const UnivariatePoly& g) {
  const Field& f = g.field();
  internal_check(f.small() && f.order_ul() < (1ul << 10),
                 "scan root finding requires p < 2^10");
  std::vector<FieldElement> rs;
  unsigned long p = f.order_ul();
  for (unsigned long v = 0; v < p; ++v) {
    FieldElement x = f.element(mpz_class(v));
    if (g.evaluate(x).is_zero()) rs.push_back(x);
  }
  return rs;
}

// Splits s, a monic squarefree product of distinct linear factors, into its
// roots. Cantor-Zassenhaus with degree-1 targets: for random a, the factors
// of s split between gcd(s, (x+a)^((p-1)/2) - 1) and the rest.
void split_linear(const UnivariatePoly& s, Rng& rng,
                  std::vector<FieldElement>& out) {
  const Field& f = s.field();
  if (s.degree() <= 0) return;
  if (s.degree() == 1) {
    // s = x + c monic, root = -c
    out.push_back(-s.coeffs()[0]);
    return;
  }
  const mpz_class& p = f.order();
  if (p == 2) {
    for (unsigned long v = 0; v < 2; ++v) {
      FieldElement x = f.element(mpz_class(v));
      if (s.evaluate(x).is_zero()) out.push_back(x);
    }
    return;
  }
  mpz_class half = (p - 1) / 2;
  for (;;) {
    FieldElement a = f.element(rng.below(p));
    UnivariatePoly shifted(f, s.var(), {a, f.one()});  // x + a
    UnivariatePoly t = powmod(shifted, half, s);
    t = t - UnivariatePoly(f, s.var(), {f.one()});
    UnivariatePoly d = univ_gcd(t, s);
    if (d.degree() > 0 && d.degree() < s.degree()) {
      split_linear(d, rng, out);
      split_linear(s.divmod(d).first.monic(), rng, out);
      return;
    }
  }
}

std::vector<FieldElement> cz_roots(const UnivariatePoly& g, Rng& rng) {
  const Field& f = g.field();
  if (f.order() == 2) {
    std::vector<FieldElement> rs;
    for (unsigned long v = 0; v < 2; ++v) {
      FieldElement x = f.element(mpz_class(v));
      if (g.evaluate(x).is_zero()) rs.push_back(x);
    }
    return rs;
  }
  if (g.degree() == 0) return {};
  // s = gcd(x^p - x, g) is the monic product of (x - r) over the roots r.
  UnivariatePoly x(f, g.var(), {f.zero(), f.one()});
  UnivariatePoly xp = powmod(x, f.order(), g);
  UnivariatePoly s = univ_gcd(xp - x, g);
  std::vector<FieldElement> rs;
  split_linear(s.monic(), rng, rs);
  return rs;
}

}  // namespace

std::vector<FieldElement> roots(const UnivariatePoly& g, Rng& rng,
                                RootsMode mode) {
  if (g.is_zero())
    throw Error(Errc::ZeroPolynomial, "every field element is a root of 0");
  const Field& f = g.field();
  std::vector<FieldElement> rs;
  bool small = f.small() && f.order_ul() < (1ul << 10);
  switch (mode) {
    case RootsMode::Auto:
      rs = small ? scan_roots(g) : cz_roots(g, rng);
      break;
    case RootsMode::Scan:
      rs = scan_roots(g);
      break;
    case RootsMode::FactorCZ:
      rs = cz_roots(g, rng);
      break;
  }
  std::sort(rs.begin(), rs.end());
  return rs;
}

}  // namespace ffmcsat
