// Times the serial reference implementation of the brute-force oracle
// against the OpenMP block-scan kernel on generated instances, and checks
// that both return identical verdicts and counts.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "ffmcsat/bench.hpp"
#include "ffmcsat/frontend.hpp"
#include "ffmcsat/oracle.hpp"

using namespace ffmcsat;

namespace {

double time_run(const Problem& problem, bool parallel, OracleVerdict* out) {
  OracleOptions opts;
  opts.parallel = parallel;
  auto t0 = std::chrono::steady_clock::now();
  *out = brute_force_solve(problem, opts);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  struct Case {
    const char* name;
    std::string text;
  };
  std::vector<Case> cases;

  RandomGenParams r1{mpz_class(13), 6, 6, 3, 0.4, 11};
  cases.push_back({"random_p13_n6", gen_random(r1)});
  RandomGenParams r2{mpz_class(7), 8, 7, 3, 0.4, 12};
  cases.push_back({"random_p7_n8", gen_random(r2)});
  CraftedGenParams c1{mpz_class(11), 6, 2, 4, 13, true};
  cases.push_back({"crafted_p11_n6", gen_crafted(c1)});
  RandomGenParams r3{mpz_class(5), 9, 8, 2, 0.5, 14};
  cases.push_back({"random_p5_n9", gen_random(r3)});
  // Unsat: the scan cannot exit early, so this one is all about throughput.
  RandomGenParams r4{mpz_class(7), 8, 9, 3, 0.4, 48};
  cases.push_back({"random_p7_n8_unsat", gen_random(r4)});

  std::printf("%-18s %12s %12s %9s %8s %10s\n", "instance", "serial_s",
              "parallel_s", "speedup", "verdict", "enumerated");
  int failures = 0;
  for (const Case& c : cases) {
    ElabResult elab = parse_smt2(c.text);
    OracleVerdict serial, parallel;
    double ts = time_run(elab.problem, false, &serial);
    double tp = time_run(elab.problem, true, &parallel);
    bool same = serial.verdict == parallel.verdict &&
                serial.enumerated == parallel.enumerated;
    if (!same) ++failures;
    std::printf("%-18s %12.4f %12.4f %8.2fx %8s %10llu%s\n", c.name, ts, tp,
                tp > 0 ? ts / tp : 0.0, verdict_name(serial.verdict),
                static_cast<unsigned long long>(serial.enumerated),
                same ? "" : "  MISMATCH");
  }
  std::printf("threads=%d\n", omp_get_max_threads());
  return failures;
}
