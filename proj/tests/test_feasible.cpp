#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ffmcsat/feasible.hpp"

using namespace ffmcsat;

namespace {

std::vector<FieldElement> elems(const Field& f, std::initializer_list<long> vs) {
  std::vector<FieldElement> out;
  for (long v : vs) out.push_back(f.element(v));
  return out;
}

// Independent materialization for small fields.
std::set<long> explicit_set(const FeasibleSet& s) {
  std::set<long> out;
  const Field& f = s.field();
  for (unsigned long v = 0; v < f.order_ul(); ++v)
    if (s.contains(f.element(long(v)))) out.insert(long(v));
  return out;
}

}  // namespace

TEST_CASE("intersection table examples") {
  Field f3 = Field::make(3ul);
  auto a = FeasibleSet::allowed(f3, elems(f3, {1, 2}));
  auto b = FeasibleSet::excluded(f3, elems(f3, {1}));
  auto c = a.intersect(b);
  CHECK(c.mode() == FeasMode::Allowed);
  REQUIRE(c.elements().size() == 1);
  CHECK(c.elements()[0].value() == 2);

  auto d = FeasibleSet::excluded(f3, elems(f3, {0}));
  auto e = FeasibleSet::excluded(f3, elems(f3, {1, 2}));
  auto de = d.intersect(e);
  CHECK(de.mode() == FeasMode::Excluded);
  CHECK(de.elements().size() == 3);
  CHECK(de.is_empty());

  auto full = FeasibleSet::excluded(f3, {});
  auto s = FeasibleSet::allowed(f3, elems(f3, {0, 2}));
  CHECK(s.intersect(full) == s);
}

TEST_CASE("intersect agrees with explicit set algebra") {
  Rng rng(17);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 13ul}) {
    Field f = Field::make(p);
    auto random_set = [&]() {
      std::vector<FieldElement> vs;
      std::uint64_t count = rng.below(p + 1);
      for (std::uint64_t i = 0; i < count; ++i)
        vs.push_back(f.element(mpz_class(rng.below(p))));
      return rng.coin() ? FeasibleSet::allowed(f, std::move(vs))
                        : FeasibleSet::excluded(f, std::move(vs));
    };
    for (int iter = 0; iter < 200; ++iter) {
      FeasibleSet a = random_set(), b = random_set();
      std::set<long> ea = explicit_set(a), eb = explicit_set(b);
      std::set<long> want;
      for (long v : ea)
        if (eb.count(v)) want.insert(v);
      REQUIRE(explicit_set(a.intersect(b)) == want);
      REQUIRE(a.intersect(b).is_empty() == want.empty());
    }
  }
}

TEST_CASE("emptiness and singleton detection") {
  Field f3 = Field::make(3ul);
  CHECK(FeasibleSet::allowed(f3, {}).is_empty());
  CHECK(FeasibleSet::excluded(f3, elems(f3, {0, 1, 2})).is_empty());
  CHECK(!FeasibleSet::excluded(f3, elems(f3, {0, 1})).is_empty());
  auto s1 = FeasibleSet::allowed(f3, elems(f3, {2}));
  REQUIRE(s1.singleton().has_value());
  CHECK(s1.singleton()->value() == 2);
  auto s2 = FeasibleSet::excluded(f3, elems(f3, {0, 2}));
  REQUIRE(s2.singleton().has_value());
  CHECK(s2.singleton()->value() == 1);
  CHECK(!FeasibleSet::excluded(f3, elems(f3, {0})).singleton().has_value());
}

TEST_CASE("pick_value examples") {
  Field f5 = Field::make(5ul);
  CHECK(FeasibleSet::allowed(f5, elems(f5, {1})).min_value().value() == 1);
  CHECK(FeasibleSet::excluded(f5, elems(f5, {0, 1})).min_value().value() == 2);
  CHECK_THROWS_AS(FeasibleSet::allowed(f5, {}).min_value(), Error);
  try {
    FeasibleSet::allowed(f5, {}).min_value();
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyFeasible);
  }
  // Excluded with a huge order still picks the smallest natural.
  Field big = Field::make(mpz_class("18446744073709551557"));
  auto ex = FeasibleSet::excluded(
      big, {big.element(0), big.element(1), big.element(3)});
  CHECK(ex.min_value().value() == 2);
}

TEST_CASE("random pick is feasible and deterministic under a seed") {
  Field f13 = Field::make(13ul);
  auto s = FeasibleSet::excluded(f13,
                                 elems(f13, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  Rng r1(5), r2(5);
  for (int i = 0; i < 50; ++i) {
    FieldElement v1 = s.random_value(r1);
    REQUIRE(s.contains(v1));
    REQUIRE(v1 == s.random_value(r2));
  }
  auto a = FeasibleSet::allowed(f13, elems(f13, {3, 7}));
  for (int i = 0; i < 50; ++i) REQUIRE(a.contains(a.random_value(r1)));
}

TEST_CASE("feasible_update maps roots through polarity") {
  Field f3 = Field::make(3ul);
  Rng rng(1);
  UnivariatePoly ym1(f3, 1, {f3.element(-1), f3.one()});  // y - 1
  auto eq = feasible_update(ym1, true, rng);
  CHECK(eq.mode() == FeasMode::Allowed);
  REQUIRE(eq.elements().size() == 1);
  CHECK(eq.elements()[0].value() == 1);
  auto diseq = feasible_update(ym1, false, rng);
  CHECK(diseq.mode() == FeasMode::Excluded);
  REQUIRE(diseq.elements().size() == 1);

  UnivariatePoly y2p1(f3, 1, {f3.one(), f3.zero(), f3.one()});  // y^2 + 1
  auto none = feasible_update(y2p1, true, rng);
  CHECK(none.mode() == FeasMode::Allowed);
  CHECK(none.is_empty());

  UnivariatePoly constant(f3, 1, {f3.one()});
  CHECK_THROWS_AS(feasible_update(constant, true, rng), Error);
  try {
    feasible_update(constant, true, rng);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConstantResidual);
  }
}
