#include "ffmcsat/bench.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <omp.h>

#include "ffmcsat/frontend.hpp"
#include "ffmcsat/oracle.hpp"

namespace ffmcsat {

namespace {

std::vector<std::string> var_names(unsigned nvars) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (unsigned i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

void emit_header(std::ostringstream& os, const Field& field,
                 const std::vector<std::string>& names) {
  os << "(set-logic QF_FFA)\n";
  os << "(define-sort FF () (_ FiniteField " << field.order().get_str()
     << "))\n";
  for (const std::string& n : names) os << "(declare-fun " << n << " () FF)\n";
}

FieldElement random_nonzero(const Field& f, Rng& rng) {
  mpz_class v = rng.below(mpz_class(f.order() - 1)) + 1;
  return f.element(v);
}

}  // namespace

std::string gen_random(const RandomGenParams& params) {
  Field field = Field::make(params.p);  // NonPrimeOrder check
  Rng rng(params.seed);
  unsigned monomials =
      std::max(1u, unsigned(params.density * params.nvars * params.max_degree));

  std::ostringstream os;
  os << ";; param: generator=random\n";
  os << ";; param: p=" << params.p.get_str() << "\n";
  os << ";; param: nvars=" << params.nvars << "\n";
  os << ";; param: npolys=" << params.npolys << "\n";
  os << ";; param: max_degree=" << params.max_degree << "\n";
  os << ";; param: density=" << params.density << "\n";
  os << ";; param: monomials_per_poly=" << monomials << "\n";
  os << ";; param: seed=" << params.seed << "\n";
  std::vector<std::string> names = var_names(params.nvars);
  emit_header(os, field, names);

  for (unsigned k = 0; k < params.npolys; ++k) {
    Polynomial poly = Polynomial::zero(field);
    for (;;) {
      std::vector<Monomial> ms;
      for (unsigned m = 0; m < monomials; ++m) {
        // First monomial gets positive degree so the constraint is never
        // trivially constant; the rest draw degree 0..max_degree.
        unsigned degree = m == 0 ? 1 + unsigned(rng.below(params.max_degree))
                                 : unsigned(rng.below(params.max_degree + 1));
        Monomial mono{random_nonzero(field, rng), {}};
        std::vector<unsigned> exps(params.nvars, 0);
        for (unsigned d = 0; d < degree; ++d)
          ++exps[rng.below(params.nvars)];
        for (unsigned v = 0; v < params.nvars; ++v)
          if (exps[v]) mono.exps.emplace_back(v, exps[v]);
        ms.push_back(std::move(mono));
      }
      poly = Polynomial::from_monomials(field, std::move(ms));
      if (!poly.is_constant()) break;  // cancellation; redraw
    }
    bool equality = rng.coin();
    std::string term = poly_to_smt2(poly, names, "FF");
    if (equality)
      os << "(assert (= " << term << " (as ff0 FF)))\n";
    else
      os << "(assert (not (= " << term << " (as ff0 FF))))\n";
  }
  os << "(check-sat)\n";
  return os.str();
}

std::string gen_crafted(const CraftedGenParams& params) {
  Field field = Field::make(params.p);
  Rng rng(params.seed);

  std::ostringstream os;
  os << ";; param: generator=crafted\n";
  os << ";; param: p=" << params.p.get_str() << "\n";
  os << ";; param: nvars=" << params.nvars << "\n";
  os << ";; param: factors_per_poly=" << params.factors_per_poly << "\n";
  os << ";; param: npolys=" << params.npolys << "\n";
  os << ";; param: seed=" << params.seed << "\n";
  os << ";; param: block_root=" << (params.block_root ? 1 : 0) << "\n";
  os << ";; param: factor_vars=1..3\n";
  std::vector<std::string> names = var_names(params.nvars);
  emit_header(os, field, names);

  // Common point every anchored factor vanishes on.
  std::vector<FieldElement> root;
  root.reserve(params.nvars);
  for (unsigned v = 0; v < params.nvars; ++v)
    root.push_back(field.element(rng.below(params.p)));

  for (unsigned k = 0; k < params.npolys; ++k) {
    unsigned anchored = unsigned(rng.below(params.factors_per_poly));
    Polynomial product = Polynomial::constant(field.one());
    for (unsigned fidx = 0; fidx < params.factors_per_poly; ++fidx) {
      // Random degree-1 polynomial over a small variable subset; sparse
      // factors keep unit detection firing early during the search.
      unsigned width = 1 + unsigned(rng.below(std::min(3u, params.nvars)));
      std::vector<Monomial> ms;
      for (;;) {
        ms.clear();
        std::set<unsigned> chosen;
        while (chosen.size() < width)
          chosen.insert(unsigned(rng.below(params.nvars)));
        for (unsigned v : chosen) {
          mpz_class c = rng.below(params.p);
          if (c != 0)
            ms.push_back(Monomial{field.element(c), {{v, 1}}});
        }
        if (!ms.empty()) break;
      }
      Polynomial linear = Polynomial::from_monomials(field, std::move(ms));
      if (fidx == anchored) {
        // Shift so the factor vanishes at the common point.
        Assignment at_root;
        for (unsigned v = 0; v < params.nvars; ++v) at_root.set(v, root[v]);
        linear = linear - Polynomial::constant(linear.evaluate(at_root));
      } else {
        mpz_class c = rng.below(params.p);
        linear = linear + Polynomial::constant(field.element(c));
      }
      product = product * linear;
    }
    os << "(assert (= " << poly_to_smt2(product, names, "FF")
       << " (as ff0 FF)))\n";
  }
  if (params.block_root) {
    os << "(assert (or";
    for (unsigned v = 0; v < params.nvars; ++v)
      os << " (not (= " << names[v] << " (as ff" << root[v].value().get_str()
         << " FF)))";
    os << "))\n";
  }
  os << "(check-sat)\n";
  return os.str();
}

namespace {

SuiteRow run_one(const std::filesystem::path& path, const SuiteOptions& opts) {
  SuiteRow row;
  row.file = path.filename().string();
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  try {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ElabResult elab = parse_smt2(buf.str());
    SolverConfig config = opts.config;
    config.time_budget_s = opts.timeout_s;
    Result res = solve(elab.problem, config);
    row.time_s = elapsed();
    row.decisions = res.stats.decisions;
    row.conflicts = res.stats.conflicts;
    bool timed_out =
        (res.verdict == Verdict::Unknown && res.unknown_reason == "time-budget") ||
        (opts.timeout_s > 0 && row.time_s >= opts.timeout_s);
    if (timed_out) {
      row.verdict = "timeout";
      row.time_s = opts.timeout_s;
    } else {
      row.verdict = verdict_name(res.verdict);
    }
  } catch (const Error&) {
    row.verdict = "error";
    row.time_s = elapsed();
  }
  return row;
}

}  // namespace

std::vector<SuiteRow> run_suite(const std::string& directory,
                                const SuiteOptions& opts) {
  std::vector<std::filesystem::path> files;
  for (auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".smt2")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<SuiteRow> rows(files.size());
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < files.size(); ++i)
      rows[i] = run_one(files[i], opts);
  } else {
    for (std::size_t i = 0; i < files.size(); ++i)
      rows[i] = run_one(files[i], opts);
  }
  std::sort(rows.begin(), rows.end(), [](const SuiteRow& a, const SuiteRow& b) {
    if (a.time_s != b.time_s) return a.time_s < b.time_s;
    return a.file < b.file;
  });
  return rows;
}

std::string suite_csv(const std::vector<SuiteRow>& rows) {
  std::ostringstream os;
  os << "file,verdict,time_s,decisions,conflicts\n";
  os.setf(std::ios::fixed);
  os.precision(6);
  for (const SuiteRow& r : rows)
    os << r.file << "," << r.verdict << "," << r.time_s << "," << r.decisions
       << "," << r.conflicts << "\n";
  return os.str();
}

}  // namespace ffmcsat
