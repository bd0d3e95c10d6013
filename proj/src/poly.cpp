#include "ffmcsat/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ffmcsat {

VarNamer default_namer() {
  return [](VarId v) { return "x" + std::to_string(v); };
}

void Assignment::set(VarId v, const FieldElement& value) {
  if (v >= slots_.size()) slots_.resize(v + 1);
  slots_[v] = value;
}

void Assignment::unset(VarId v) {
  if (v < slots_.size()) slots_[v].reset();
}

const FieldElement& Assignment::get(VarId v) const {
  const FieldElement* e = try_get(v);
  if (!e) throw Error(Errc::IncompleteAssignment,
                      "variable " + std::to_string(v) + " unassigned");
  return *e;
}

const FieldElement* Assignment::try_get(VarId v) const {
  if (v >= slots_.size() || !slots_[v].has_value()) return nullptr;
  return &*slots_[v];
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto& [v, e] : exps) d += e;
  return d;
}

unsigned Monomial::degree_in(VarId v) const {
  for (auto& [w, e] : exps)
    if (w == v) return e;
  return 0;
}

bool lex_less(const std::vector<std::pair<VarId, unsigned>>& a,
              const std::vector<std::pair<VarId, unsigned>>& b) {
  // Exponent vectors are sparse and sorted by variable; a missing variable
  // has exponent 0. Lower index = more significant.
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    VarId va = i < a.size() ? a[i].first : UINT32_MAX;
    VarId vb = j < b.size() ? b[j].first : UINT32_MAX;
    if (va < vb) return false;  // a has positive exp where b has 0
    if (vb < va) return true;
    if (a[i].second != b[j].second) return a[i].second < b[j].second;
    ++i, ++j;
  }
  return false;
}

Polynomial Polynomial::zero(const Field& f) { return Polynomial(f, {}); }

Polynomial Polynomial::constant(const FieldElement& c) {
  if (c.is_zero()) return zero(c.field());
  return Polynomial(c.field(), {Monomial{c, {}}});
}

Polynomial Polynomial::variable(const Field& f, VarId v) {
  return Polynomial(f, {Monomial{f.one(), {{v, 1}}}});
}

Polynomial Polynomial::from_monomials(const Field& f, std::vector<Monomial> ms) {
  std::map<std::vector<std::pair<VarId, unsigned>>, FieldElement,
           decltype(&lex_less)>
      acc(&lex_less);
  for (auto& m : ms) {
    std::vector<std::pair<VarId, unsigned>> key = m.exps;
    std::sort(key.begin(), key.end());
    std::erase_if(key, [](auto& p) { return p.second == 0; });
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(std::move(key), m.coeff);
    else
      it->second = it->second + m.coeff;
  }
  std::vector<Monomial> terms;
  terms.reserve(acc.size());
  // map is ordered ascending; canonical form wants strictly decreasing.
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (!it->second.is_zero()) terms.push_back(Monomial{it->second, it->first});
  return Polynomial(f, std::move(terms));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exps.empty());
}

FieldElement Polynomial::constant_value() const {
  internal_check(is_constant(), "constant_value on non-constant polynomial");
  return terms_.empty() ? field_.zero() : terms_[0].coeff;
}

void Polynomial::check_same_field(const Polynomial& g) const {
  if (field_ != g.field_)
    throw Error(Errc::FieldMismatch, "polynomials over distinct fields");
}

Polynomial Polynomial::operator+(const Polynomial& g) const {
  check_same_field(g);
  // Merge of two strictly decreasing monomial lists.
  std::vector<Monomial> out;
  out.reserve(terms_.size() + g.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < g.terms_.size()) {
    const Monomial& a = terms_[i];
    const Monomial& b = g.terms_[j];
    if (a.exps == b.exps) {
      FieldElement c = a.coeff + b.coeff;
      if (!c.is_zero()) out.push_back(Monomial{c, a.exps});
      ++i, ++j;
    } else if (lex_less(b.exps, a.exps)) {
      out.push_back(a), ++i;
    } else {
      out.push_back(b), ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < g.terms_.size(); ++j) out.push_back(g.terms_[j]);
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator-() const {
  std::vector<Monomial> out = terms_;
  for (auto& m : out) m.coeff = -m.coeff;
  return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& g) const {
  return *this + (-g);
}

Polynomial Polynomial::operator*(const Polynomial& g) const {
  check_same_field(g);
  std::vector<Monomial> products;
  products.reserve(terms_.size() * g.terms_.size());
  for (const Monomial& a : terms_) {
    for (const Monomial& b : g.terms_) {
      Monomial m{a.coeff * b.coeff, {}};
      m.exps.reserve(a.exps.size() + b.exps.size());
      size_t i = 0, j = 0;
      while (i < a.exps.size() && j < b.exps.size()) {
        if (a.exps[i].first == b.exps[j].first) {
          m.exps.emplace_back(a.exps[i].first, a.exps[i].second + b.exps[j].second);
          ++i, ++j;
        } else if (a.exps[i].first < b.exps[j].first) {
          m.exps.push_back(a.exps[i++]);
        } else {
          m.exps.push_back(b.exps[j++]);
        }
      }
      for (; i < a.exps.size(); ++i) m.exps.push_back(a.exps[i]);
      for (; j < b.exps.size(); ++j) m.exps.push_back(b.exps[j]);
      products.push_back(std::move(m));
    }
  }
  return from_monomials(field_, std::move(products));
}

FieldElement Polynomial::evaluate(const Assignment& nu) const {
  FieldElement acc = field_.zero();
  for (const Monomial& m : terms_) {
    FieldElement term = m.coeff;
    for (auto& [v, e] : m.exps) term = term * nu.get(v).pow(e);
    acc = acc + term;
  }
  return acc;
}

Polynomial Polynomial::partial_evaluate(const Assignment& nu) const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const Monomial& m : terms_) {
    Monomial r{m.coeff, {}};
    for (auto& [v, e] : m.exps) {
      if (const FieldElement* val = nu.try_get(v))
        r.coeff = r.coeff * val->pow(e);
      else
        r.exps.emplace_back(v, e);
    }
    out.push_back(std::move(r));
  }
  return from_monomials(field_, std::move(out));
}

std::vector<VarId> Polynomial::vars() const {
  std::vector<VarId> vs;
  for (const Monomial& m : terms_)
    for (auto& [v, e] : m.exps) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool Polynomial::contains_var(VarId v) const {
  for (const Monomial& m : terms_)
    if (m.degree_in(v) > 0) return true;
  return false;
}

unsigned Polynomial::degree_in(VarId v) const {
  unsigned d = 0;
  for (const Monomial& m : terms_) d = std::max(d, m.degree_in(v));
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const Monomial& m : terms_) d = std::max(d, m.total_degree());
  return d;
}

bool Polynomial::operator==(const Polynomial& g) const {
  if (field_ != g.field_ || terms_.size() != g.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != g.terms_[i].exps ||
        terms_[i].coeff != g.terms_[i].coeff)
      return false;
  return true;
}

std::size_t Polynomial::hash() const {
  std::size_t h = hash_mpz(field_.order());
  for (const Monomial& m : terms_) {
    h = h * 1099511628211ull + hash_mpz(m.coeff.value());
    for (auto& [v, e] : m.exps) h = h * 1099511628211ull + (std::size_t(v) << 16 | e);
  }
  return h;
}

std::string Polynomial::to_string(const VarNamer& namer) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Monomial& m : terms_) {
    if (!first) os << " + ";
    first = false;
    bool coeff_one = m.coeff.value() == 1;
    if (!coeff_one || m.exps.empty()) os << m.coeff.to_string();
    bool lead = coeff_one && !m.exps.empty();
    for (auto& [v, e] : m.exps) {
      if (!lead) os << "*";
      lead = false;
      os << namer(v);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

UnivariatePoly::UnivariatePoly(Field f, VarId var, std::vector<FieldElement> coeffs)
    : field_(std::move(f)), var_(var), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const FieldElement& UnivariatePoly::leading_coeff() const {
  internal_check(!coeffs_.empty(), "leading coefficient of zero polynomial");
  return coeffs_.back();
}

FieldElement UnivariatePoly::evaluate(const FieldElement& x) const {
  FieldElement acc = field_.zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

UnivariatePoly UnivariatePoly::monic() const {
  if (is_zero()) return *this;
  FieldElement inv = leading_coeff().inverse();
  std::vector<FieldElement> out;
  out.reserve(coeffs_.size());
  for (const FieldElement& c : coeffs_) out.push_back(c * inv);
  return UnivariatePoly(field_, var_, std::move(out));
}

void UnivariatePoly::check_compatible(const UnivariatePoly& g) const {
  if (field_ != g.field_)
    throw Error(Errc::FieldMismatch, "univariate polynomials over distinct fields");
  if (var_ != g.var_)
    throw Error(Errc::VariableMismatch, "univariate polynomials in distinct variables");
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& g) const {
  check_compatible(g);
  std::vector<FieldElement> out;
  size_t n = std::max(coeffs_.size(), g.coeffs_.size());
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    FieldElement a = i < coeffs_.size() ? coeffs_[i] : field_.zero();
    FieldElement b = i < g.coeffs_.size() ? g.coeffs_[i] : field_.zero();
    out.push_back(a + b);
  }
  return UnivariatePoly(field_, var_, std::move(out));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& g) const {
  check_compatible(g);
  std::vector<FieldElement> out;
  size_t n = std::max(coeffs_.size(), g.coeffs_.size());
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    FieldElement a = i < coeffs_.size() ? coeffs_[i] : field_.zero();
    FieldElement b = i < g.coeffs_.size() ? g.coeffs_[i] : field_.zero();
    out.push_back(a - b);
  }
  return UnivariatePoly(field_, var_, std::move(out));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& g) const {
  check_compatible(g);
  if (is_zero() || g.is_zero()) return UnivariatePoly(field_, var_, {});
  std::vector<FieldElement> out(coeffs_.size() + g.coeffs_.size() - 1,
                                field_.zero());
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < g.coeffs_.size(); ++j)
      out[i + j] = out[i + j] + coeffs_[i] * g.coeffs_[j];
  return UnivariatePoly(field_, var_, std::move(out));
}

std::pair<UnivariatePoly, UnivariatePoly> UnivariatePoly::divmod(
    const UnivariatePoly& g) const {
  check_compatible(g);
  if (g.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  if (degree() < g.degree())
    return {UnivariatePoly(field_, var_, {}), *this};
  FieldElement lc_inv = g.leading_coeff().inverse();
  std::vector<FieldElement> rem = coeffs_;
  std::vector<FieldElement> quo(degree() - g.degree() + 1, field_.zero());
  for (int d = degree(); d >= g.degree(); --d) {
    FieldElement& top = rem[d];
    if (top.is_zero()) continue;
    FieldElement q = top * lc_inv;
    quo[d - g.degree()] = q;
    for (int i = 0; i <= g.degree(); ++i)
      rem[d - g.degree() + i] = rem[d - g.degree() + i] - q * g.coeffs_[i];
  }
  return {UnivariatePoly(field_, var_, std::move(quo)),
          UnivariatePoly(field_, var_, std::move(rem))};
}

std::string UnivariatePoly::to_string(const VarNamer& namer) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool one = coeffs_[i].value() == 1;
    if (!one || i == 0) os << coeffs_[i].to_string();
    if (i > 0) {
      if (!one) os << "*";
      os << namer(var_);
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UnivariatePoly to_univariate(const Polynomial& f) {
  std::vector<VarId> vs = f.vars();
  if (vs.size() != 1)
    throw Error(Errc::NotUnivariate,
                "polynomial has " + std::to_string(vs.size()) +
                    " variables, need exactly 1");
  VarId x = vs[0];
  std::vector<FieldElement> coeffs(f.degree_in(x) + 1, f.field().zero());
  for (const Monomial& m : f.monomials())
    coeffs[m.degree_in(x)] = m.coeff;
  return UnivariatePoly(f.field(), x, std::move(coeffs));
}

UnivariatePoly univ_gcd(const UnivariatePoly& g, const UnivariatePoly& h) {
  if (g.is_zero() && h.is_zero())
    throw Error(Errc::BothZero, "gcd(0, 0) undefined");
  UnivariatePoly a = g, b = h;
  while (!b.is_zero()) {
    UnivariatePoly r = a.divmod(b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

}  // namespace ffmcsat
