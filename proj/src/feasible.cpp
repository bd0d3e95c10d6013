#include "ffmcsat/feasible.hpp"

#include <algorithm>

#include "ffmcsat/roots.hpp"

namespace ffmcsat {

FeasibleSet::FeasibleSet(Field f, FeasMode m, std::vector<FieldElement> elems)
    : field_(std::move(f)), mode_(m), elements_(std::move(elems)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
}

bool FeasibleSet::is_empty() const {
  if (mode_ == FeasMode::Allowed) return elements_.empty();
  return mpz_cmp_ui(field_.order().get_mpz_t(), elements_.size()) == 0;
}

bool FeasibleSet::contains(const FieldElement& v) const {
  bool in_set = std::binary_search(elements_.begin(), elements_.end(), v);
  return mode_ == FeasMode::Allowed ? in_set : !in_set;
}

std::optional<FieldElement> FeasibleSet::singleton() const {
  if (mode_ == FeasMode::Allowed)
    return elements_.size() == 1 ? std::optional(elements_[0]) : std::nullopt;
  // Excluded: singleton iff |S| = p - 1; find the gap.
  mpz_class missing = field_.order() - 1;
  if (mpz_cmp_ui(missing.get_mpz_t(), elements_.size()) != 0)
    return std::nullopt;
  mpz_class expect = 0;
  for (const FieldElement& e : elements_) {
    if (e.value() != expect) break;
    ++expect;
  }
  return field_.element(expect);
}

FeasibleSet FeasibleSet::intersect(const FeasibleSet& other) const {
  internal_check(field_ == other.field_, "feasible sets over distinct fields");
  const FeasibleSet& a = *this;
  const FeasibleSet& b = other;
  std::vector<FieldElement> out;
  if (a.mode_ == FeasMode::Allowed && b.mode_ == FeasMode::Allowed) {
    std::set_intersection(a.elements_.begin(), a.elements_.end(),
                          b.elements_.begin(), b.elements_.end(),
                          std::back_inserter(out));
    return allowed(field_, std::move(out));
  }
  if (a.mode_ == FeasMode::Allowed) {
    std::set_difference(a.elements_.begin(), a.elements_.end(),
                        b.elements_.begin(), b.elements_.end(),
                        std::back_inserter(out));
    return allowed(field_, std::move(out));
  }
  if (b.mode_ == FeasMode::Allowed) {
    std::set_difference(b.elements_.begin(), b.elements_.end(),
                        a.elements_.begin(), a.elements_.end(),
                        std::back_inserter(out));
    return allowed(field_, std::move(out));
  }
  std::set_union(a.elements_.begin(), a.elements_.end(), b.elements_.begin(),
                 b.elements_.end(), std::back_inserter(out));
  return excluded(field_, std::move(out));
}

FieldElement FeasibleSet::min_value() const {
  if (is_empty()) throw Error(Errc::EmptyFeasible, "no feasible value");
  if (mode_ == FeasMode::Allowed) return elements_.front();
  mpz_class cand = 0;
  for (const FieldElement& e : elements_) {
    if (e.value() > cand) break;
    if (e.value() == cand) ++cand;
  }
  return field_.element(cand);
}

FieldElement FeasibleSet::random_value(Rng& rng) const {
  if (is_empty()) throw Error(Errc::EmptyFeasible, "no feasible value");
  if (mode_ == FeasMode::Allowed)
    return elements_[rng.below(std::uint64_t(elements_.size()))];
  for (;;) {
    FieldElement v = field_.element(rng.below(field_.order()));
    if (contains(v)) return v;
  }
}

std::string FeasibleSet::to_string() const {
  std::string s = mode_ == FeasMode::Allowed ? "allowed{" : "excluded{";
  for (size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ",";
    s += elements_[i].to_string();
  }
  return s + "}";
}

FeasibleSet feasible_update(const UnivariatePoly& residual, bool polarity,
                            Rng& rng) {
  if (residual.degree() < 1)
    throw Error(Errc::ConstantResidual,
                "constant residual belongs to evaluation propagation");
  std::vector<FieldElement> rs = roots(residual, rng);
  return polarity ? FeasibleSet::allowed(residual.field(), std::move(rs))
                  : FeasibleSet::excluded(residual.field(), std::move(rs));
}

}  // namespace ffmcsat
