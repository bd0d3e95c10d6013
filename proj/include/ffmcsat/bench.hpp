#pragma once

// Benchmark generation in the two families (random polynomial systems and
// crafted products of degree-1 factors) plus a timed suite runner emitting
// CSV rows for cactus-style plotting.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffmcsat/solver.hpp"

namespace ffmcsat {

struct RandomGenParams {
  mpz_class p;
  unsigned nvars = 3;
  unsigned npolys = 4;
  unsigned max_degree = 2;
  double density = 0.5;
  std::uint64_t seed = 0;
};

// Random polynomials asserted as equalities or disequalities (seeded coin),
// one unit clause each. Deterministic: equal seeds give byte-identical
// output. Errc::NonPrimeOrder on composite p.
std::string gen_random(const RandomGenParams& params);

struct CraftedGenParams {
  mpz_class p;
  unsigned nvars = 4;
  unsigned factors_per_poly = 3;
  unsigned npolys = 2;
  std::uint64_t seed = 0;
  // Append one disequality clause blocking a sampled common root, producing
  // harder (possibly unsat) instances.
  bool block_root = false;
};

// Each polynomial is the expanded product of random degree-1 factors, one of
// which vanishes at a sampled common point, asserted = 0 (sat-biased by
// construction).
std::string gen_crafted(const CraftedGenParams& params);

struct SuiteRow {
  std::string file;     // base name
  std::string verdict;  // sat | unsat | unknown | timeout | error
  double time_s = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
};

struct SuiteOptions {
  SolverConfig config;
  double timeout_s = 300.0;
  bool parallel = true;  // one solver instance per OpenMP worker
};

// Runs every .smt2 file in the directory; per-file parse errors become rows,
// never abort the suite. Rows sorted by time then name.
std::vector<SuiteRow> run_suite(const std::string& directory,
                                const SuiteOptions& opts);

std::string suite_csv(const std::vector<SuiteRow>& rows);

}  // namespace ffmcsat
