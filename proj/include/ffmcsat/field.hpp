#pragma once

// Arithmetic in the prime field F_p. Orders are arbitrary-precision: the
// ZK-derived problem classes use primes beyond 2^255, so everything is mpz
// backed. Field and FieldElement are immutable values and safe to share
// across threads.

#include <memory>
#include <string>

#include <gmpxx.h>

#include "ffmcsat/error.hpp"

namespace ffmcsat {

// Probabilistic primality: deterministic trial division below 2^16 (which is
// exact for n < 2^32), Miller-Rabin with 64 fixed-seed rounds above. Error
// bound <= 4^-64.
bool probably_prime(const mpz_class& n);

class FieldElement;

class Field {
 public:
  // Throws Errc::NonPrimeOrder unless order is (probably) prime.
  static Field make(const mpz_class& order);
  static Field make(unsigned long order) { return make(mpz_class(order)); }

  const mpz_class& order() const { return *order_; }

  bool operator==(const Field& other) const {
    return order_ == other.order_ || *order_ == *other.order_;
  }
  bool operator!=(const Field& other) const { return !(*this == other); }

  // Canonical representative of z mod p; negative z wraps into [0, p).
  FieldElement element(const mpz_class& z) const;
  FieldElement element(long z) const;
  FieldElement zero() const;
  FieldElement one() const;

  // True iff the order fits in 64 bits; used by fast evaluation paths.
  bool small() const { return mpz_fits_ulong_p(order_->get_mpz_t()); }
  unsigned long order_ul() const { return mpz_get_ui(order_->get_mpz_t()); }

 private:
  explicit Field(mpz_class order)
      : order_(std::make_shared<const mpz_class>(std::move(order))) {}
  std::shared_ptr<const mpz_class> order_;
};

class FieldElement {
 public:
  FieldElement(Field field, mpz_class canonical_value)
      : field_(std::move(field)), value_(std::move(canonical_value)) {}

  const mpz_class& value() const { return value_; }
  const Field& field() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& b) const;
  FieldElement operator-(const FieldElement& b) const;
  FieldElement operator*(const FieldElement& b) const;
  FieldElement operator-() const;

  // Multiplicative inverse via the extended Euclidean algorithm.
  // Throws Errc::DivisionByZero on zero.
  FieldElement inverse() const;

  // Square-and-multiply; pow(a, 0) = 1 with the 0^0 = 1 convention.
  FieldElement pow(const mpz_class& e) const;

  bool operator==(const FieldElement& b) const {
    return field_ == b.field_ && value_ == b.value_;
  }
  bool operator!=(const FieldElement& b) const { return !(*this == b); }
  // Order on the canonical representatives; FeasibleSet keeps sorted sets.
  bool operator<(const FieldElement& b) const { return value_ < b.value_; }

  std::string to_string() const { return value_.get_str(); }

 private:
  void check_same_field(const FieldElement& b) const;
  Field field_;
  mpz_class value_;
};

inline FieldElement Field::element(long z) const { return element(mpz_class(z)); }

// Cheap structural hash for hash-consing polynomials.
std::size_t hash_mpz(const mpz_class& v);

}  // namespace ffmcsat
