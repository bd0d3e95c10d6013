#include "ffmcsat/field.hpp"

#include "ffmcsat/rng.hpp"

namespace ffmcsat {

namespace {

bool miller_rabin_round(const mpz_class& n, const mpz_class& base,
                        const mpz_class& d, unsigned long r) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool probably_prime(const mpz_class& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (unsigned long d = 3; d < (1ul << 16); d += 2) {
    if (mpz_cmp_ui(n.get_mpz_t(), d * d) < 0) return true;
    if (mpz_fdiv_ui(n.get_mpz_t(), d) == 0) return false;
  }
  // n >= 2^32 and has no factor below 2^16 yet; Miller-Rabin from here.
  // Bases come from a fixed-seed PRNG so the check is reproducible.
  mpz_class d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  d >>= r;
  Rng rng(0x9e3779b97f4a7c15ull);
  mpz_class span = n - 4;  // bases in [2, n-2]
  for (int round = 0; round < 64; ++round) {
    mpz_class base = rng.below(span) + 2;
    if (!miller_rabin_round(n, base, d, r)) return false;
  }
  return true;
}

Field Field::make(const mpz_class& order) {
  if (!probably_prime(order))
    throw Error(Errc::NonPrimeOrder,
                "field order " + order.get_str() + " is not prime");
  return Field(order);
}

FieldElement Field::element(const mpz_class& z) const {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), order_->get_mpz_t());
  return FieldElement(*this, std::move(r));
}

FieldElement Field::zero() const { return FieldElement(*this, 0); }

FieldElement Field::one() const { return FieldElement(*this, 1); }

void FieldElement::check_same_field(const FieldElement& b) const {
  if (field_ != b.field_)
    throw Error(Errc::FieldMismatch,
                "operands in F_" + field_.order().get_str() + " and F_" +
                    b.field_.order().get_str());
}

FieldElement FieldElement::operator+(const FieldElement& b) const {
  check_same_field(b);
  mpz_class r = value_ + b.value_;
  if (r >= field_.order()) r -= field_.order();
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& b) const {
  check_same_field(b);
  mpz_class r = value_ - b.value_;
  if (r < 0) r += field_.order();
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& b) const {
  check_same_field(b);
  mpz_class r = (value_ * b.value_) % field_.order();
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
  if (value_ == 0) return *this;
  return FieldElement(field_, field_.order() - value_);
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  mpz_class r;
  int ok = mpz_invert(r.get_mpz_t(), value_.get_mpz_t(),
                      field_.order().get_mpz_t());
  internal_check(ok != 0, "non-invertible nonzero element in prime field");
  return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::pow(const mpz_class& e) const {
  internal_check(e >= 0, "negative exponent");
  if (e == 0) return field_.one();  // includes 0^0 = 1
  mpz_class r;
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(),
           field_.order().get_mpz_t());
  return FieldElement(field_, std::move(r));
}

std::size_t hash_mpz(const mpz_class& v) {
  // Residue mod a Mersenne prime mixed with the sign and bit length.
  unsigned long res = mpz_fdiv_ui(v.get_mpz_t(), (1ul << 61) - 1);
  std::size_t h = res * 0x9e3779b97f4a7c15ull;
  h ^= mpz_sizeinbase(v.get_mpz_t(), 2) + (mpz_sgn(v.get_mpz_t()) < 0 ? 0x5851ull : 0);
  return h;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeOrder: return "NonPrimeOrder";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IncompleteAssignment: return "IncompleteAssignment";
    case Errc::NotUnivariate: return "NotUnivariate";
    case Errc::VariableMismatch: return "VariableMismatch";
    case Errc::BothZero: return "BothZero";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotPolynomialInX: return "NotPolynomialInX";
    case Errc::LexError: return "LexError";
    case Errc::ParseError: return "ParseError";
    case Errc::UnsupportedFeature: return "UnsupportedFeature";
    case Errc::SortError: return "SortError";
    case Errc::MixedFields: return "MixedFields";
    case Errc::ConstantResidual: return "ConstantResidual";
    case Errc::EmptyFeasible: return "EmptyFeasible";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::IncompleteModel: return "IncompleteModel";
    case Errc::NotImplemented: return "NotImplemented";
  }
  return "UnknownError";
}

}  // namespace ffmcsat
