#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ffmcsat/roots.hpp"

using namespace ffmcsat;

namespace {

// Independent oracle: direct evaluation of every field element.
std::vector<FieldElement> exhaustive_roots(const UnivariatePoly& g) {
  std::vector<FieldElement> out;
  const Field& f = g.field();
  for (unsigned long v = 0; v < f.order_ul(); ++v) {
    FieldElement x = f.element(mpz_class(v));
    if (g.evaluate(x).is_zero()) out.push_back(x);
  }
  return out;
}

UnivariatePoly random_upoly(const Field& f, Rng& rng, int maxdeg) {
  int d = 1 + int(rng.below(std::uint64_t(maxdeg)));
  std::vector<FieldElement> cs;
  for (int i = 0; i < d; ++i) cs.push_back(f.element(rng.below(f.order())));
  cs.push_back(f.element(rng.below(f.order() - 1) + 1));  // nonzero leader
  return UnivariatePoly(f, 0, std::move(cs));
}

}  // namespace

TEST_CASE("root finding examples") {
  Field f3 = Field::make(3ul);
  Rng rng(1);
  UnivariatePoly linear(f3, 0, {f3.element(-1), f3.one()});  // x - 1
  auto r = roots(linear, rng);
  REQUIRE(r.size() == 1);
  CHECK(r[0].value() == 1);

  UnivariatePoly no_roots(f3, 0, {f3.one(), f3.zero(), f3.one()});  // x^2+1
  CHECK(roots(no_roots, rng).empty());

  Field f5 = Field::make(5ul);
  UnivariatePoly x2m1(f5, 0, {f5.element(-1), f5.zero(), f5.one()});
  auto r2 = roots(x2m1, rng);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].value() == 1);
  CHECK(r2[1].value() == 4);

  // x^3 - x over F3 vanishes everywhere.
  UnivariatePoly x3mx(f3, 0, {f3.zero(), f3.element(-1), f3.zero(), f3.one()});
  CHECK(roots(x3mx, rng).size() == 3);

  UnivariatePoly zero(f3, 0, {});
  CHECK_THROWS_AS(roots(zero, rng), Error);
}

TEST_CASE("scan agrees with the independent oracle on small orders") {
  Rng rng(1234);
  for (unsigned long p : {3ul, 13ul, 211ul, 1009ul}) {
    Field f = Field::make(p);
    for (int iter = 0; iter < 120; ++iter) {
      UnivariatePoly g = random_upoly(f, rng, 8);
      REQUIRE(roots(g, rng) == exhaustive_roots(g));
    }
  }
}

TEST_CASE("Cantor-Zassenhaus route agrees with the scan on small orders") {
  // Dual route: force the large-field algorithm where exhaustive checking is
  // still possible.
  Rng rng(77);
  for (unsigned long p : {2ul, 3ul, 13ul, 211ul, 1009ul}) {
    Field f = Field::make(p);
    for (int iter = 0; iter < 60; ++iter) {
      UnivariatePoly g = random_upoly(f, rng, 6);
      REQUIRE(roots(g, rng, RootsMode::FactorCZ) == exhaustive_roots(g));
    }
  }
}

TEST_CASE("planted roots over a 64-bit prime are recovered exactly") {
  Field f = Field::make(mpz_class("18446744073709551557"));
  Rng rng(2024);
  for (int iter = 0; iter < 100; ++iter) {
    int nroots = 1 + int(rng.below(6));
    std::vector<FieldElement> planted;
    for (int i = 0; i < nroots; ++i) planted.push_back(f.element(rng.below(f.order())));
    std::sort(planted.begin(), planted.end());
    planted.erase(std::unique(planted.begin(), planted.end()), planted.end());
    UnivariatePoly prod(f, 0, {f.one()});
    for (const FieldElement& r : planted)
      prod = prod * UnivariatePoly(f, 0, {-r, f.one()});
    auto found = roots(prod, rng);
    REQUIRE(found == planted);
    REQUIRE(found.size() <= std::size_t(prod.degree()));
    for (const FieldElement& r : found) REQUIRE(prod.evaluate(r).is_zero());
  }
}

TEST_CASE("root count never exceeds the degree on large orders") {
  Field f = Field::make(mpz_class("18446744073709551557"));
  Rng rng(5150);
  for (int iter = 0; iter < 25; ++iter) {
    std::vector<FieldElement> cs;
    for (int i = 0; i < 5; ++i) cs.push_back(f.element(rng.below(f.order())));
    cs.push_back(f.one());
    UnivariatePoly g(f, 0, std::move(cs));
    auto rs = roots(g, rng);
    REQUIRE(rs.size() <= std::size_t(g.degree()));
    for (const FieldElement& r : rs) REQUIRE(g.evaluate(r).is_zero());
  }
}
