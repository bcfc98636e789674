#include "hardy/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardy/eigensolver.hpp"
#include "hardy/error.hpp"
#include "hardy/estimators.hpp"

namespace hardy {

Transform parse_transform(const std::string& text) {
  if (text == "raw") return Transform::Raw;
  if (text == "root") return Transform::Root;
  throw InputError("transform must be \"root\" or \"raw\", got \"" + text + "\"");
}

std::vector<double> p_grid(double start, double stop, std::size_t count) {
  if (count == 0) throw InputError("p grid needs at least one point");
  if (!(start <= stop)) throw InputError("p grid start must not exceed stop");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
  } else {
    const double h = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + h * static_cast<double>(i);
    out.back() = stop;
  }
  for (double p : out) (void)Exponent(p);  // validates the window
  return out;
}

std::vector<SweepRow> run_sweep(const Chain& chain, const std::vector<double>& grid) {
  std::vector<SweepRow> rows(grid.size());
  for (double p : grid) (void)Exponent(p);
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Exponent e(grid[static_cast<std::size_t>(i)]);
    SweepRow& row = rows[static_cast<std::size_t>(i)];
    row.p = e.p();
    const SigmaResult s = sigma_p(chain, e);
    row.sigma = s.value;
    row.k_sigma = e.k() * s.value;
    const ImprovedEstimates im = improved_estimates(chain, e);
    row.delta1 = im.delta1;
    row.delta_bar1 = im.delta_bar1;
    row.delta1_prime = im.delta1_prime;
    try {
      const EigenSolution sol = solve(chain, e);
      if (verify_solution(chain, e, sol).all_pass()) row.lambda_exact = sol.lambda;
    } catch (const NumericalError&) {
      // left empty; reported as NA
    }
  }
  return rows;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "NA";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double root(double x, double p) { return std::pow(x, 1.0 / p); }

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, Transform transform) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    const bool t = transform == Transform::Root;
    const double p = r.p;
    out << format_number(p) << ',' << format_number(t ? root(r.k_sigma, p) : r.k_sigma) << ','
        << format_number(t ? root(r.delta1, p) : r.delta1) << ','
        << format_number(t ? root(r.delta_bar1, p) : r.delta_bar1) << ','
        << format_number(t ? root(r.delta1_prime, p) : r.delta1_prime) << ','
        << format_number(t ? root(r.sigma, p) : r.sigma) << ',';
    if (r.lambda_exact) {
      out << format_number(t ? std::pow(*r.lambda_exact, -1.0 / p) : *r.lambda_exact);
    } else {
      out << "NA";
    }
    out << '\n';
  }
}

void write_sweep_file(const std::string& path, const std::vector<SweepRow>& rows, Transform transform) {
  const std::string tmp = path + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + tmp);
    write_sweep_csv(f, rows, transform);
    f.flush();
    if (!f) {
      f.close();
      std::remove(tmp.c_str());
      throw InputError("write to " + tmp + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw InputError("cannot move sweep output into " + path + ": " + ec.message());
  }
}

std::string gnuplot_script(const std::string& csv_path, Transform transform) {
  std::ostringstream s;
  const bool t = transform == Transform::Root;
  s << "set datafile separator ','\n"
    << "set datafile missing 'NA'\n"
    << "set key top left\n"
    << "set xlabel 'p'\n"
    << "set ylabel '" << (t ? "value^(1/p)" : "value") << "'\n"
    << "set logscale y\n"
    << "plot '" << csv_path << "' using 1:2 with lines title 'k(p) sigma', \\\n"
    << "     '' using 1:3 with lines title 'delta_1', \\\n"
    << "     '' using 1:4 with lines title 'delta_bar_1', \\\n"
    << "     '' using 1:5 with lines title \"delta_1'\", \\\n"
    << "     '' using 1:6 with lines title 'sigma', \\\n"
    << "     '' using 1:7 with points pt 7 ps 0.4 title '" << (t ? "lambda^(-1/p)" : "lambda") << "'\n";
  return s.str();
}

}  // namespace hardy
