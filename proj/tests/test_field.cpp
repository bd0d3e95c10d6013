#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffmcsat/field.hpp"
#include "ffmcsat/rng.hpp"

using namespace ffmcsat;

TEST_CASE("mk_field accepts primes and rejects composites") {
  CHECK(Field::make(3ul).order() == 3);
  CHECK(Field::make(211ul).order() == 211);
  CHECK_THROWS_AS(Field::make(4ul), Error);
  CHECK_THROWS_AS(Field::make(1ul), Error);
  CHECK_THROWS_AS(Field::make(0ul), Error);
  try {
    Field::make(4ul);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrimeOrder);
  }
  // Large orders: a 64-bit prime and a ZK-style 255-bit prime (2^255 - 19).
  CHECK_NOTHROW(Field::make(mpz_class("18446744073709551557")));
  mpz_class big = (mpz_class(1) << 255) - 19;
  CHECK_NOTHROW(Field::make(big));
  CHECK_THROWS_AS(Field::make(big + 2), Error);  // even
}

TEST_CASE("from_integer canonicalizes, including negatives") {
  Field f3 = Field::make(3ul);
  CHECK(f3.element(-1).value() == 2);
  CHECK(f3.element(5).value() == 2);
  Field f7 = Field::make(7ul);
  CHECK(f7.element(0).value() == 0);
  CHECK(f7.element(-7).value() == 0);
}

TEST_CASE("arithmetic examples") {
  Field f3 = Field::make(3ul);
  CHECK((f3.element(2) + f3.element(2)).value() == 1);
  CHECK((f3.element(1) * f3.element(1)).value() == 1);
  CHECK((-f3.element(0)).value() == 0);

  Field f5 = Field::make(5ul);
  // inv(2) in F5 by independent enumeration: the x with 2x = 1 mod 5.
  long expected = -1;
  for (long x = 1; x < 5; ++x)
    if (2 * x % 5 == 1) expected = x;
  CHECK(expected == 3);
  CHECK(f5.element(2).inverse().value() == expected);
  CHECK(f5.element(1).inverse().value() == 1);
  CHECK_THROWS_AS(f3.element(0).inverse(), Error);

  CHECK(f5.element(2).pow(4).value() == 1);  // Fermat
  CHECK(f5.element(2).pow(5).value() == 2);  // a^p = a
  Field f7 = Field::make(7ul);
  CHECK(f7.element(3).pow(2).value() == 2);  // 9 mod 7
  CHECK(f7.element(0).pow(0).value() == 1);  // 0^0 = 1 convention
}

TEST_CASE("field mismatch is rejected") {
  Field f3 = Field::make(3ul);
  Field f5 = Field::make(5ul);
  CHECK_THROWS_AS(f3.element(1) + f5.element(1), Error);
  CHECK(f3 == Field::make(3ul));
  CHECK(f3 != f5);
}

TEST_CASE("field axioms hold on random samples") {
  std::vector<mpz_class> orders{2, 3, 13, 211, 1009,
                                mpz_class("18446744073709551557"),
                                (mpz_class(1) << 255) - 19};
  Rng rng(42);
  for (const mpz_class& p : orders) {
    Field f = Field::make(p);
    int triples = p < 100 ? 4000 : 1500;
    for (int i = 0; i < triples; ++i) {
      FieldElement a = f.element(rng.below(p));
      FieldElement b = f.element(rng.below(p));
      FieldElement c = f.element(rng.below(p));
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a + (-a) == f.zero());
      if (!a.is_zero()) REQUIRE(a * a.inverse() == f.one());
      REQUIRE(a.pow(p) == a);  // Fermat
    }
  }
}

TEST_CASE("from_integer is stable modulo p") {
  Rng rng(7);
  for (const mpz_class& p : {mpz_class(13), mpz_class((mpz_class(1) << 255) - 19)}) {
    Field f = Field::make(p);
    for (int i = 0; i < 500; ++i) {
      mpz_class z = rng.below(p * 3) - p;
      mpz_class k = rng.below(mpz_class(1000));
      REQUIRE(f.element(z + k * p) == f.element(z));
    }
  }
}
