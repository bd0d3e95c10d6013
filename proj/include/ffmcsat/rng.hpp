#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace ffmcsat {

// Deterministic PRNG shared by value picking, Cantor-Zassenhaus splitting and
// the benchmark generators. Sampling is hand-rolled rejection on mt19937_64
// words so output does not depend on the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t word() { return gen_(); }

  bool coin() { return word() & 1u; }

  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      std::uint64_t w = word();
      if (w < limit) return w % bound;
    }
  }

  // Uniform in [0, bound), bound > 0; rejection on fixed-width bit strings.
  mpz_class below(const mpz_class& bound) {
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    size_t words = (bits + 63) / 64;
    for (;;) {
      mpz_class r = 0;
      for (size_t i = 0; i < words; ++i) {
        r <<= 64;
        mpz_class w = word();
        r |= w;
      }
      r >>= (words * 64 - bits);
      if (r < bound) return r;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ffmcsat
