#pragma once

// Principal eigenpair of the p-Laplacian on a chain by shooting in lambda,
// plus the independent checks used to trust it.
//
// ND: g_0 = 1, and the flux recursion nu_i (g_i - g_{i+1})^(p-1) =
// lambda sum_{k<=i} mu_k g_k^(p-1) is run forward; lambda is the eigenvalue
// exactly when g first reaches zero at the ghost state N+1.
// DN: g_0 = 0, g_1 = 1, flux T_{k+1} = T_k - lambda mu_k g_k^(p-1) starting
// from T_1 = nu_1; lambda is the eigenvalue when T_{N+1} = 0.
//
// Both terminal quantities are positive below lambda_p and change sign at it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/chain.hpp"

namespace hardy {

struct ShotResult {
  /// ND: g_{N+1} with g_0 = 1. DN: the flux T_{N+1} (not normalized).
  double terminal = 0.0;
  /// Storage position where g stopped being positive before the end, if any.
  std::optional<std::size_t> failed_at;
  /// g over the chain's states (entries past failed_at are left at 0).
  std::vector<double> g;

  /// True when the shot stays positive with a positive terminal (lambda < lambda_p).
  [[nodiscard]] bool below() const noexcept { return !failed_at && terminal > 0.0; }
};

ShotResult shoot_nd(const Chain& chain, const Exponent& e, double lambda);
ShotResult shoot_dn(const Chain& chain, const Exponent& e, double lambda);
ShotResult shoot(const Chain& chain, const Exponent& e, double lambda);

struct SolveOptions {
  double tol = 1e-12;  ///< relative width of the final lambda bracket
  std::size_t max_bisections = 400;
  std::size_t max_polish = 2000;
};

struct EigenSolution {
  BoundaryCase boundary = BoundaryCase::ND;
  double p = 2.0;
  double lambda = 0.0;
  /// Eigenfunction normalized to max 1 (ND: g_0 = 1; DN: g_N = 1).
  std::vector<double> g;
  std::vector<double> log_g;
  /// log |g_i - g_{i+1}| (ND, g_{N+1} = 0) or log (g_i - g_{i-1}) (DN, g_0 = 0),
  /// carried separately because the differences can be far below g's ulp.
  std::vector<double> log_step;
  /// max relative defect of the summed eigen-equation over all edges.
  double residual = 0.0;
  /// Terminal of the last shot from below, relative (ND: g_{N+1}/g_0, DN: T_{N+1}/T_1).
  double terminal = 0.0;
  std::size_t iterations = 0;         ///< bisection steps
  std::size_t polish_iterations = 0;  ///< fixed-point sweeps on the eigenfunction
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool used_scan_fallback = false;
  /// The terminals seen during bisection decreased with lambda.
  bool shot_monotone = true;
};

/// Throws NumericalError if no sign change is found.
EigenSolution solve(const Chain& chain, const Exponent& e, const SolveOptions& opts = {});
EigenSolution solve_nd(const Chain& chain, const Exponent& e, const SolveOptions& opts = {});
EigenSolution solve_dn(const Chain& chain, const Exponent& e, const SolveOptions& opts = {});

struct Check {
  std::string name;
  bool pass = true;
  double value = 0.0;      ///< worst observed defect
  double tolerance = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  [[nodiscard]] bool all_pass() const noexcept;
  [[nodiscard]] const Check* find(std::string_view name) const noexcept;
};

/// Recomputes residual, positivity, monotonicity, the boundary/terminal
/// condition and (ND) the truncation identity
///   min_{i<=m} II_i(g 1_{[0,m]}) = (1 - g_{m+1}/g_m)^(p-1) / lambda  for every m.
/// `g` is authoritative: an edit to it that is not mirrored in log_g shows up
/// as a residual failure.
VerificationReport verify_solution(const Chain& chain, const Exponent& e, const EigenSolution& sol,
                                   double tol = 1e-9);

/// Independent estimate by iterating f <- f II(f)^(p*-1) until sup II and inf II
/// agree to `tol` relative.
struct InverseIterationResult {
  double lambda = 0.0;
  double lower = 0.0;  ///< 1 / sup II
  double upper = 0.0;  ///< 1 / inf II
  std::vector<double> f;
  std::size_t iterations = 0;
  bool converged = false;
};
InverseIterationResult inverse_iteration(const Chain& chain, const Exponent& e, double tol = 1e-11,
                                         std::size_t max_iter = 1000000);

/// ND: the chain restricted to {0..m}. DN: {1..m} with mu_m replaced by mu[m,N].
Chain truncated_chain(const Chain& chain, std::size_t m);

/// lambda of each truncation; nonincreasing in m, and m = N reproduces solve().
std::vector<double> lambda_truncated_seq(const Chain& chain, const Exponent& e, std::span<const std::size_t> m_list,
                                         const SolveOptions& opts = {});

struct DualityReport {
  double lambda = 0.0;       ///< lambda_p of the input chain
  double dual_lambda = 0.0;  ///< lambda_{p*} of the dual chain
  double lhs = 0.0;          ///< lambda^(-1/p)
  double rhs = 0.0;          ///< dual_lambda^(-1/p*)
  double gap = 0.0;          ///< |lhs - rhs| / max(lhs, rhs)
};
DualityReport check_duality(const Chain& chain, const Exponent& e, const SolveOptions& opts = {});

}  // namespace hardy
