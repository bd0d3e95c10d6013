// Command-line entry point: solve SMT-LIB 2 finite-field problems, generate
// benchmark instances, run timed suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ffmcsat/bench.hpp"
#include "ffmcsat/frontend.hpp"
#include "ffmcsat/oracle.hpp"
#include "ffmcsat/solver.hpp"

namespace {

using namespace ffmcsat;

std::string read_input(const std::string& file) {
  if (file == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(file);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& file, const std::string& text) {
  if (file.empty() || file == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(file);
  if (!out) throw Error(Errc::ParseError, "cannot open '" + file + "' for writing");
  out << text;
}

struct SolveFlags {
  std::string file;
  bool show_model = false;
  bool run_oracle = false;
};

int do_solve(const SolveFlags& flags, const SolverConfig& config) {
  ElabResult elab = parse_smt2(read_input(flags.file));
  Result res = solve(elab.problem, config);
  std::cout << verdict_name(res.verdict) << "\n";
  if (res.verdict == Verdict::Sat && (flags.show_model || elab.saw_get_model))
    std::cout << print_model_smt2(elab.problem, *res.model);
  if (res.verdict == Verdict::Unknown)
    std::cerr << "unknown: " << res.unknown_reason << "\n";

  if (flags.run_oracle) {
    OracleVerdict ov = brute_force_solve(elab.problem);
    bool agree = (ov.verdict == res.verdict) ||
                 (res.verdict == Verdict::Unknown);
    if (res.verdict == Verdict::Sat) {
      ModelCheckResult mc = check_model(elab.problem, *res.model);
      if (!mc.accepted) agree = false;
    }
    if (ov.verdict == Verdict::Sat && ov.model) {
      ModelCheckResult mc = check_model(elab.problem, *ov.model);
      if (!mc.accepted) agree = false;
    }
    if (!agree) {
      std::cerr << "oracle mismatch: solver=" << verdict_name(res.verdict)
                << " oracle=" << verdict_name(ov.verdict) << "\n";
      std::cerr << "instance:\n" << print_problem_smt2(elab.problem);
      return 2;
    }
    std::cerr << "oracle agreement: " << verdict_name(ov.verdict) << " ("
              << ov.enumerated << " assignments tried)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MCSat-based SMT solver for non-linear arithmetic over prime "
               "finite fields (QF_FF / QF_FFA)"};
  app.require_subcommand(0, 1);

  SolverConfig config;
  bool have_seed = false;
  std::string explainer = "point";
  auto add_solver_flags = [&](CLI::App* cmd, bool with_timeout) {
    cmd->add_option("--seed", config.seed, "PRNG seed (fixes all stochastic behavior)")
        ->each([&](const std::string&) { have_seed = true; });
    cmd->add_option("--explainer", explainer, "conflict explainer: point | srs")
        ->check(CLI::IsMember({"point", "srs"}));
    cmd->add_flag_callback("--no-theory-prop",
                           [&] { config.theory_propagation = false; },
                           "disable theory value propagation");
    cmd->add_flag("--check-model,!--no-check-model", config.model_check,
                  "verify models internally before reporting sat");
    cmd->add_flag("--stats", config.stats, "print statistics to stderr");
    if (with_timeout)
      cmd->add_option("--timeout", config.time_budget_s, "time budget in seconds");
    cmd->add_option("--max-conflicts", config.max_conflicts, "conflict budget");
  };

  SolveFlags solve_flags;
  CLI::App* cmd_solve = app.add_subcommand("solve", "solve an .smt2 file (default)");
  cmd_solve->add_option("file", solve_flags.file, "input file, or - for stdin")
      ->required();
  cmd_solve->add_flag("--model", solve_flags.show_model, "print a model on sat");
  cmd_solve->add_flag("--oracle", solve_flags.run_oracle,
                      "also run the brute-force oracle and compare");
  add_solver_flags(cmd_solve, true);

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate benchmark instances");
  cmd_gen->require_subcommand(1);
  std::string gen_out;
  RandomGenParams rnd;
  std::string rnd_p = "3", crafted_p = "13";
  CLI::App* cmd_random = cmd_gen->add_subcommand("random", "random polynomial systems");
  cmd_random->add_option("-o,--output", gen_out, "output file (default stdout)");
  cmd_random->add_option("--p", rnd_p, "field order (prime)")->required();
  cmd_random->add_option("--nvars", rnd.nvars, "number of variables");
  cmd_random->add_option("--npolys", rnd.npolys, "number of constraints");
  cmd_random->add_option("--max-degree", rnd.max_degree, "total degree bound");
  cmd_random->add_option("--density", rnd.density, "monomial density in (0,1]");
  cmd_random->add_option("--seed", rnd.seed, "generator seed");

  CraftedGenParams crafted;
  CLI::App* cmd_crafted =
      cmd_gen->add_subcommand("crafted", "products of degree-1 factors");
  cmd_crafted->add_option("-o,--output", gen_out, "output file (default stdout)");
  cmd_crafted->add_option("--p", crafted_p, "field order (prime)")->required();
  cmd_crafted->add_option("--nvars", crafted.nvars, "number of variables");
  cmd_crafted->add_option("--factors", crafted.factors_per_poly,
                          "degree-1 factors per polynomial");
  cmd_crafted->add_option("--npolys", crafted.npolys, "number of polynomials");
  cmd_crafted->add_option("--seed", crafted.seed, "generator seed");
  cmd_crafted->add_flag("--block", crafted.block_root,
                        "append a disequality clause blocking the common root");

  std::string suite_dir, suite_out;
  double suite_timeout = 300.0;
  bool suite_serial = false;
  CLI::App* cmd_suite = app.add_subcommand("suite", "run a directory of .smt2 files");
  cmd_suite->add_option("dir", suite_dir, "directory of instances")->required();
  cmd_suite->add_option("-o,--output", suite_out, "CSV output (default stdout)");
  cmd_suite->add_option("--timeout", suite_timeout, "per-instance timeout (s)");
  cmd_suite->add_flag("--serial", suite_serial, "disable worker parallelism");
  add_solver_flags(cmd_suite, false);

  // `ffmcsat FILE` acts as `ffmcsat solve FILE`.
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] != "solve" && args[0] != "gen" &&
      args[0] != "suite" && args[0][0] != '-') {
    args.insert(args.begin(), "solve");
  }

  try {
    std::vector<const char*> cargs{argv[0]};
    for (const std::string& s : args) cargs.push_back(s.c_str());
    app.parse(int(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!have_seed) {
      if (const char* env = std::getenv("FFMCSAT_SEED"))
        config.seed = std::strtoull(env, nullptr, 10);
    }
    config.explainer =
        explainer == "srs" ? ExplainStrategy::Srs : ExplainStrategy::Point;

    if (cmd_solve->parsed()) return do_solve(solve_flags, config);
    if (cmd_gen->parsed()) {
      if (cmd_random->parsed()) {
        rnd.p = mpz_class(rnd_p);
        write_output(gen_out, gen_random(rnd));
      } else {
        crafted.p = mpz_class(crafted_p);
        write_output(gen_out, gen_crafted(crafted));
      }
      return 0;
    }
    if (cmd_suite->parsed()) {
      SuiteOptions opts;
      opts.config = config;
      opts.timeout_s = suite_timeout;
      opts.parallel = !suite_serial;
      write_output(suite_out, suite_csv(run_suite(suite_dir, opts)));
      return 0;
    }
    std::cerr << app.help();
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
