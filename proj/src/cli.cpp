#include "hardy/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>

#include "hardy/bounds_report.hpp"
#include "hardy/error.hpp"
#include "hardy/invariant_suite.hpp"
#include "hardy/serialize.hpp"
#include "hardy/sweep.hpp"

namespace hardy {

namespace {

struct ChainSpec {
  std::string boundary;
  long long uniform = -1;
  std::vector<double> geometric;
  std::string file;
};

void add_chain_options(CLI::App* cmd, ChainSpec& spec) {
  cmd->add_option("--case", spec.boundary, "nd or dn");
  auto* u = cmd->add_option("--uniform", spec.uniform, "uniform chain with largest index N");
  auto* g = cmd->add_option("--geometric", spec.geometric, "a r N: mu_k = r^k, nu_k = a r^(k+1)")->expected(3);
  auto* f = cmd->add_option("--file", spec.file, "chain JSON file");
  u->excludes(g)->excludes(f);
  g->excludes(f);
}

std::size_t chain_index(double x, const char* what) {
  if (!(x >= 0.0) || x != std::floor(x) || x > static_cast<double>(kMaxChainIndex)) {
    throw InputError(std::string(what) + " must be an integer in [0, " + std::to_string(kMaxChainIndex) + "]");
  }
  return static_cast<std::size_t>(x);
}

Chain build_chain(const ChainSpec& spec) {
  std::optional<BoundaryCase> c;
  if (!spec.boundary.empty()) c = parse_boundary_case(spec.boundary);
  if (!spec.file.empty()) return load_chain_file(spec.file, c);
  if (!c) throw InputError("--case nd|dn is required with --uniform or --geometric");
  if (spec.uniform >= 0) return uniform_chain(chain_index(static_cast<double>(spec.uniform), "--uniform N"), *c);
  if (spec.geometric.size() == 3) {
    return geometric_chain(spec.geometric[0], spec.geometric[1], chain_index(spec.geometric[2], "--geometric N"), *c);
  }
  throw InputError("no chain given: use --uniform N, --geometric a r N or --file PATH");
}

Exponent require_p(const std::optional<double>& p) {
  if (!p) throw InputError("--p is required");
  return Exponent(*p);
}

void print_checks(std::ostream& out, const VerificationReport& r) {
  std::size_t width = 5;
  for (const Check& c : r.checks) width = std::max(width, c.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "check" << "  result  worst       tolerance\n";
  for (const Check& c : r.checks) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-4s    %-10.3e  %.1e", c.pass ? "pass" : "FAIL", c.value, c.tolerance);
    out << std::left << std::setw(static_cast<int>(width)) << c.name << line;
    if (!c.pass && !c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal mixed eigenvalue of the discrete p-Laplacian on weighted chains", "hardy"};
  app.require_subcommand(1);

  ChainSpec spec;
  std::optional<double> p;
  std::size_t iters = 0;
  std::size_t stride = 1;
  std::vector<double> grid_spec;
  std::string transform = "root";
  std::string out_path;
  std::string csv_path = "sweep.csv";
  std::size_t trials = 20;
  double tol = 1e-9;

  auto* bounds = app.add_subcommand("bounds", "sigma_p, basic bounds and improved estimates as JSON");
  add_chain_options(bounds, spec);
  bounds->add_option("--p", p, "exponent p > 1");
  bounds->add_option("--iters", iters, "also iterate delta_n, delta'_n, delta_bar_n for n = 1..iters");
  bounds->add_option("--stride", stride, "scan every stride-th cut (non-exhaustive above 1)");

  auto* solve_cmd = app.add_subcommand("solve", "eigenvalue and eigenfunction by shooting, verified");
  add_chain_options(solve_cmd, spec);
  solve_cmd->add_option("--p", p, "exponent p > 1");
  solve_cmd->add_option("--tol", tol, "verification tolerance");

  auto* sweep_cmd = app.add_subcommand("sweep", "closed-form estimates and lambda over a p grid, as CSV");
  add_chain_options(sweep_cmd, spec);
  auto* p_single = sweep_cmd->add_option("--p", p, "single p");
  auto* p_grid_opt =
      sweep_cmd->add_option("--p-grid", grid_spec, "START STOP [COUNT] (COUNT defaults to 200)")->expected(2, 3);
  p_single->excludes(p_grid_opt);
  sweep_cmd->add_option("--transform", transform, "root (x^(1/p)) or raw");
  sweep_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite and print a table");
  add_chain_options(verify_cmd, spec);
  verify_cmd->add_option("--p", p, "exponent p > 1");
  verify_cmd->add_option("--trials", trials, "random test functions per class");
  verify_cmd->add_option("--iters", iters, "length of the delta sequences (default 5)");
  verify_cmd->add_option("--tol", tol, "relative tolerance");
  verify_cmd->add_option("--stride", stride, "scan every stride-th cut (non-exhaustive above 1)");

  auto* duality_cmd = app.add_subcommand("duality", "compare lambda_p(DN)^(-1/p) with the dual chain");
  add_chain_options(duality_cmd, spec);
  duality_cmd->add_option("--p", p, "exponent p > 1");

  auto* gnuplot_cmd = app.add_subcommand("gnuplot", "print a gnuplot script for a sweep CSV");
  gnuplot_cmd->add_option("--csv", csv_path, "CSV file the script plots");
  gnuplot_cmd->add_option("--transform", transform, "root or raw, as used for the sweep");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gnuplot_cmd->parsed()) {
      out << gnuplot_script(csv_path, parse_transform(transform));
      return kExitOk;
    }

    const Chain chain = build_chain(spec);

    if (bounds->parsed()) {
      ScanOptions scan;
      scan.m_stride = stride;
      out << to_json(compute_bounds(chain, require_p(p), iters, scan)).dump(2) << '\n';
      return kExitOk;
    }

    if (solve_cmd->parsed()) {
      const Exponent e = require_p(p);
      const EigenSolution sol = solve(chain, e);
      const VerificationReport checks = verify_solution(chain, e, sol, tol);
      out << to_json(sol, checks).dump(2) << '\n';
      if (!checks.all_pass()) {
        for (const Check& c : checks.checks) {
          if (!c.pass) err << "verification failed: " << c.name << " (" << c.value << " > " << c.tolerance << ")\n";
        }
        return kExitVerification;
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const Transform t = parse_transform(transform);
      std::vector<double> grid;
      if (!grid_spec.empty()) {
        const double count = grid_spec.size() == 3 ? grid_spec[2] : 200.0;
        if (!(count >= 1.0) || count != std::floor(count) || count > 1e7) {
          throw InputError("--p-grid COUNT must be a positive integer");
        }
        grid = p_grid(grid_spec[0], grid_spec[1], static_cast<std::size_t>(count));
      } else {
        grid = {require_p(p).p()};
      }
      const std::vector<SweepRow> rows = run_sweep(chain, grid);
      if (out_path.empty()) {
        write_sweep_csv(out, rows, t);
      } else {
        write_sweep_file(out_path, rows, t);
      }
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      SuiteOptions opts;
      opts.trials = trials;
      if (iters > 0) opts.iters = iters;
      opts.tol = tol;
      opts.scan.m_stride = stride;
      const VerificationReport r = run_invariant_suite(chain, require_p(p), opts);
      print_checks(out, r);
      if (!r.all_pass()) {
        for (const Check& c : r.checks) {
          if (!c.pass) err << "check failed: " << c.name << '\n';
        }
        return kExitVerification;
      }
      return kExitOk;
    }

    if (duality_cmd->parsed()) {
      if (chain.boundary() != BoundaryCase::DN) throw InputError("duality takes a DN chain");
      const DualityReport r = check_duality(chain, require_p(p));
      nlohmann::json j = to_json(r);
      j["pass"] = r.gap <= 1e-8;
      out << j.dump(2) << '\n';
      return r.gap <= 1e-8 ? kExitOk : kExitVerification;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace hardy
