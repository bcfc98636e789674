#pragma once

// Closed-form estimates and the exact eigenvalue over a grid of p, written
// as CSV. Rows are computed in parallel and emitted in grid order.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hardy/chain.hpp"

namespace hardy {

enum class Transform {
  Raw,
  Root,  ///< bound columns x^(1/p), lambda_exact as lambda^(-1/p)
};

Transform parse_transform(const std::string& text);

/// `count` evenly spaced points from start to stop, both included. count = 1 gives {start}.
std::vector<double> p_grid(double start, double stop, std::size_t count);

struct SweepRow {
  double p = 0.0;
  double k_sigma = 0.0;
  double delta1 = 0.0;
  double delta_bar1 = 0.0;
  double delta1_prime = 0.0;
  double sigma = 0.0;
  /// Empty when the solver failed or its solution did not verify.
  std::optional<double> lambda_exact;
};

std::vector<SweepRow> run_sweep(const Chain& chain, const std::vector<double>& grid);

inline constexpr const char* kSweepHeader = "p,k_sigma,delta1,delta_bar1,delta1_prime,sigma,lambda_exact";

/// Shortest round-trip-safe form limited to 17 significant digits, locale independent.
std::string format_number(double x);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, Transform transform);

/// Writes to a sibling temporary and renames, so `path` holds either the
/// complete CSV or whatever it held before.
void write_sweep_file(const std::string& path, const std::vector<SweepRow>& rows, Transform transform);

/// A gnuplot script that plots the sweep columns of `csv_path` against p.
std::string gnuplot_script(const std::string& csv_path, Transform transform);

}  // namespace hardy
