#pragma once

// Feasible-value sets: the values a variable can take without falsifying an
// asserted unit constraint. Stored as allowed or excluded finite sets so
// vast field orders stay representable; root sets are bounded by constraint
// degrees.

#include <optional>
#include <vector>

#include "ffmcsat/poly.hpp"
#include "ffmcsat/rng.hpp"

namespace ffmcsat {

enum class FeasMode { Allowed, Excluded };

class FeasibleSet {
 public:
  // The full domain: nothing excluded.
  static FeasibleSet full(const Field& f) { return FeasibleSet(f, FeasMode::Excluded, {}); }
  static FeasibleSet allowed(const Field& f, std::vector<FieldElement> elems) {
    return FeasibleSet(f, FeasMode::Allowed, std::move(elems));
  }
  static FeasibleSet excluded(const Field& f, std::vector<FieldElement> elems) {
    return FeasibleSet(f, FeasMode::Excluded, std::move(elems));
  }

  FeasMode mode() const { return mode_; }
  const std::vector<FieldElement>& elements() const { return elements_; }
  const Field& field() const { return field_; }

  // Empty iff Allowed({}) or Excluded(S) with |S| = p.
  bool is_empty() const;
  bool contains(const FieldElement& v) const;
  // The unique feasible value, when there is exactly one.
  std::optional<FieldElement> singleton() const;

  // Allowed(A) ^ Allowed(B) = Allowed(A n B); Allowed(A) ^ Excluded(B) =
  // Allowed(A \ B); Excluded(A) ^ Excluded(B) = Excluded(A u B).
  FeasibleSet intersect(const FeasibleSet& other) const;

  // Deterministic pick: min of Allowed, or the smallest natural not in the
  // Excluded set. Throws Errc::EmptyFeasible.
  FieldElement min_value() const;
  // Seeded uniform pick: uniform over Allowed, rejection sampling over [0,p)
  // for Excluded. Throws Errc::EmptyFeasible.
  FieldElement random_value(Rng& rng) const;

  bool operator==(const FeasibleSet& o) const {
    return mode_ == o.mode_ && elements_ == o.elements_;
  }

  std::string to_string() const;

 private:
  FeasibleSet(Field f, FeasMode m, std::vector<FieldElement> elems);
  Field field_;
  FeasMode mode_;
  std::vector<FieldElement> elements_;  // sorted ascending, distinct
};

// Allowed(roots(residual)) for an asserted equality, Excluded(roots) for a
// disequality. The residual must be nonconstant (Errc::ConstantResidual:
// fully evaluated constraints belong to evaluation propagation).
FeasibleSet feasible_update(const UnivariatePoly& residual, bool polarity,
                            Rng& rng);

}  // namespace ffmcsat
