#include "hardy/eigensolver.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <utility>

#include "hardy/error.hpp"
#include "hardy/estimators.hpp"
#include "hardy/logspace.hpp"
#include "kernels.hpp"

namespace hardy {

namespace {

void require_nonnegative(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InputError("shooting parameter lambda must be finite and nonnegative");
  }
}

}  // namespace

ShotResult shoot_nd(const Chain& chain, const Exponent& e, double lambda) {
  detail::require_case(chain, BoundaryCase::ND);
  require_nonnegative(lambda);
  const std::size_t n = chain.size();
  const double log_lambda = std::log(lambda);
  ShotResult r;
  r.g.assign(n, 0.0);
  r.g[0] = 1.0;
  double log_g = 0.0;
  LogAccumulator flux;
  for (std::size_t i = 0; i < n; ++i) {
    flux.add(chain.log_mu()[i] + e.pm1() * log_g);
    const double drop = exp_or_limit(e.pstar_m1() * (log_lambda + flux.log_value() - chain.log_nu()[i]));
    const double next = r.g[i] - drop;
    if (i + 1 == n) {
      r.terminal = next;
    } else if (!(next > 0.0)) {
      r.failed_at = i + 1;
      r.terminal = next;
      return r;
    } else {
      r.g[i + 1] = next;
      log_g = std::log(next);
    }
  }
  return r;
}

ShotResult shoot_dn(const Chain& chain, const Exponent& e, double lambda) {
  detail::require_case(chain, BoundaryCase::DN);
  require_nonnegative(lambda);
  const std::size_t n = chain.size();
  const double log_lambda = std::log(lambda);
  ShotResult r;
  r.g.assign(n, 0.0);
  r.g[0] = 1.0;
  double log_T = chain.log_nu()[0];
  for (std::size_t k = 0; k < n; ++k) {
    const double loss = log_lambda + chain.log_mu()[k] + e.pm1() * std::log(r.g[k]);
    if (k + 1 == n) {
      r.terminal = detail::signed_log_difference(log_T, loss, 0.0);
      break;
    }
    const double next = log_sub(log_T, loss);
    if (!(next > kNegInf)) {  // NaN or -inf: the flux ran out before the last state
      r.failed_at = k + 1;
      r.terminal = detail::signed_log_difference(log_T, loss, 0.0);
      return r;
    }
    log_T = next;
    r.g[k + 1] = r.g[k] + exp_or_limit(e.pstar_m1() * (log_T - chain.log_nu()[k + 1]));
  }
  return r;
}

ShotResult shoot(const Chain& chain, const Exponent& e, double lambda) {
  return chain.boundary() == BoundaryCase::ND ? shoot_nd(chain, e, lambda) : shoot_dn(chain, e, lambda);
}

namespace {

bool is_nd(const Chain& chain) { return chain.boundary() == BoundaryCase::ND; }

double relative_terminal(const Chain& chain, const ShotResult& s) {
  return is_nd(chain) ? s.terminal : s.terminal / chain.nu()[0];
}

// One sweep of g <- F(g) normalized to max 1, in logs. Returns the
// largest change in log g.
double polish_sweep(const Chain& chain, const Exponent& e, const NuHat& nh, std::vector<double>& log_g,
                    std::vector<double>& log_step) {
  const std::size_t n = chain.size();
  std::vector<double> log_F(n);
  if (is_nd(chain)) {
    detail::nd_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_g, n, log_step, log_F);
  } else {
    detail::dn_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_g, n, log_step, log_F);
  }
  // lambda would only rescale F, which the normalization removes.
  const double scale = is_nd(chain) ? log_F[0] : log_F[n - 1];
  double change = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = log_F[i] - scale;
    change = std::max(change, std::fabs(v - log_g[i]));
    log_g[i] = v;
    log_step[i] -= scale;
  }
  return change;
}

// max_j |nu_j step_j^(p-1) / (lambda * flux_j) - 1|, flux_j the mass sum feeding edge j.
double equation_defect(const Chain& chain, const Exponent& e, double log_lambda, std::span<const double> log_g,
                       std::span<const double> log_step) {
  const std::size_t n = chain.size();
  std::vector<double> log_A(n);
  LogAccumulator acc;
  if (is_nd(chain)) {
    for (std::size_t j = 0; j < n; ++j) {
      acc.add(chain.log_mu()[j] + e.pm1() * log_g[j]);
      log_A[j] = acc.log_value();
    }
  } else {
    for (std::size_t j = n; j-- > 0;) {
      acc.add(chain.log_mu()[j] + e.pm1() * log_g[j]);
      log_A[j] = acc.log_value();
    }
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = e.pm1() * log_step[j] + chain.log_nu()[j] - log_lambda - log_A[j];
    const double defect = std::isfinite(d) ? std::fabs(std::expm1(d)) : kPosInf;
    worst = std::max(worst, defect);
  }
  return worst;
}

struct Evaluation {
  double log_lambda;
  bool below;
  bool failed;
  double terminal;
};

bool evaluations_monotone(std::vector<Evaluation> evals) {
  std::sort(evals.begin(), evals.end(),
            [](const Evaluation& a, const Evaluation& b) { return a.log_lambda < b.log_lambda; });
  bool seen_above = false;
  double last_terminal = kPosInf;
  for (const Evaluation& ev : evals) {
    if (ev.below && seen_above) return false;
    if (!ev.below) seen_above = true;
    if (!ev.failed) {
      if (ev.terminal > last_terminal) return false;
      last_terminal = ev.terminal;
    }
  }
  return true;
}

}  // namespace

EigenSolution solve(const Chain& chain, const Exponent& e, const SolveOptions& opts) {
  EigenSolution sol;
  sol.boundary = chain.boundary();
  sol.p = e.p();

  std::vector<Evaluation> evals;
  ShotResult last_below;
  auto evaluate = [&](double log_lambda) {
    ShotResult s = shoot(chain, e, std::exp(log_lambda));
    const bool below = s.below();
    evals.push_back({log_lambda, below, s.failed_at.has_value(), relative_terminal(chain, s)});
    if (below) last_below = std::move(s);
    return below;
  };

  const SigmaResult sig = sigma_p(chain, e);
  // The basic bounds are exact at the ends in degenerate cases (N = 0), so widen a little.
  double lo = -sig.log_value - std::log(e.k()) - 1e-6;
  double hi = -sig.log_value + 1e-6;
  if (!evaluate(lo) || evaluate(hi)) {
    sol.used_scan_fallback = true;
    const double a = lo - std::log(4.0), b = hi + std::log(4.0);
    constexpr int kPoints = 64;
    bool found = false;
    bool prev = evaluate(a);
    for (int i = 1; i < kPoints && !found; ++i) {
      const double x = a + (b - a) * i / (kPoints - 1);
      const bool cur = evaluate(x);
      if (prev && !cur) {
        lo = a + (b - a) * (i - 1) / (kPoints - 1);
        hi = x;
        found = true;
        evaluate(lo);  // refresh last_below at the new lower end
      }
      prev = cur;
    }
    if (!found) {
      throw NumericalError("no sign change of the shooting terminal in the scanned lambda range");
    }
  }
  sol.bracket_lo = std::exp(lo);
  sol.bracket_hi = std::exp(hi);

  const double width_tol = std::log1p(opts.tol);
  while (hi - lo > width_tol && sol.iterations < opts.max_bisections) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++sol.iterations;
    if (evaluate(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  sol.shot_monotone = evaluations_monotone(evals);
  const double log_lambda = 0.5 * (lo + hi);
  sol.lambda = std::exp(log_lambda);
  sol.terminal = relative_terminal(chain, last_below);

  // Polish the eigenfunction: the forward shot loses relative accuracy once g
  // falls below round-off of g_0, the fixed-point map does not.
  const std::size_t n = chain.size();
  const NuHat nh = nu_hat(chain, e);
  sol.log_g.resize(n);
  sol.log_step.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) sol.log_g[i] = std::log(last_below.g[i]);
  double prev_change = kPosInf;
  for (std::size_t it = 0; it < opts.max_polish; ++it) {
    const double change = polish_sweep(chain, e, nh, sol.log_g, sol.log_step);
    ++sol.polish_iterations;
    if (change <= 1e-14) break;
    // Stalled at round-off.
    if (change <= 1e-12 && change >= prev_change) break;
    prev_change = change;
  }
  if (is_nd(chain)) {
    const double shift = sol.log_g[0];
    for (std::size_t i = 0; i < n; ++i) {
      sol.log_g[i] -= shift;
      sol.log_step[i] -= shift;
    }
  }
  sol.g.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.g[i] = exp_or_limit(sol.log_g[i]);
  sol.residual = equation_defect(chain, e, log_lambda, sol.log_g, sol.log_step);
  if (!std::isfinite(sol.lambda) || !std::isfinite(sol.residual)) {
    throw NumericalError("eigen solve produced a non-finite result");
  }
  return sol;
}

EigenSolution solve_nd(const Chain& chain, const Exponent& e, const SolveOptions& opts) {
  detail::require_case(chain, BoundaryCase::ND);
  return solve(chain, e, opts);
}

EigenSolution solve_dn(const Chain& chain, const Exponent& e, const SolveOptions& opts) {
  detail::require_case(chain, BoundaryCase::DN);
  return solve(chain, e, opts);
}

bool VerificationReport::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(std::string_view name) const noexcept {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport verify_solution(const Chain& chain, const Exponent& e, const EigenSolution& sol, double tol) {
  VerificationReport rep;
  const std::size_t n = chain.size();
  auto add = [&](std::string name, double value, std::string detail = {}) {
    rep.checks.push_back({std::move(name), value <= tol, value, tol, std::move(detail)});
  };
  if (sol.boundary != chain.boundary() || sol.g.size() != n || sol.log_g.size() != n || sol.log_step.size() != n) {
    rep.checks.push_back({"shape", false, 1.0, 0.0, "solution does not match the chain"});
    return rep;
  }

  // Positivity, and the log representation actually used below.
  std::vector<double> log_g(n);
  double mismatch = 0.0;
  std::size_t nonpositive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = sol.g[i];
    if (g >= DBL_MIN && std::isfinite(g)) {
      log_g[i] = std::log(g);
      mismatch = std::max(mismatch, std::fabs(log_g[i] - sol.log_g[i]));
    } else if (g == 0.0 && sol.log_g[i] < std::log(DBL_MIN)) {
      log_g[i] = sol.log_g[i];  // underflowed in linear scale only
    } else {
      ++nonpositive;
      log_g[i] = sol.log_g[i];
    }
  }
  rep.checks.push_back({"positivity", nonpositive == 0, static_cast<double>(nonpositive), 0.0,
                        nonpositive == 0 ? "" : std::to_string(nonpositive) + " entries not positive"});

  const double log_lambda = std::log(sol.lambda);
  add("residual", std::max(mismatch, equation_defect(chain, e, log_lambda, log_g, sol.log_step)));

  // Strict monotonicity: every step positive and consistent with neighbouring values.
  double increment = 0.0;
  bool steps_positive = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(sol.log_step[i])) steps_positive = false;
    double lower_neighbour;
    if (is_nd(chain)) {
      lower_neighbour = i + 1 < n ? sol.g[i + 1] : 0.0;
    } else {
      lower_neighbour = i > 0 ? sol.g[i - 1] : 0.0;
    }
    const double scale = sol.g[i];
    if (scale > 0.0) {
      increment = std::max(increment, std::fabs(scale - lower_neighbour - std::exp(sol.log_step[i])) / scale);
    }
  }
  if (!steps_positive) increment = kPosInf;
  add("monotonicity", increment);

  // Boundary: normalization at the reflecting end for ND, g_0 = 0 for DN
  // (already part of the step check above), and the shot terminal.
  double boundary = std::fabs(sol.terminal);
  if (is_nd(chain)) boundary = std::max(boundary, std::fabs(sol.g[0] - 1.0));
  add("boundary", boundary);
  rep.checks.push_back({"shot_monotone", sol.shot_monotone, sol.shot_monotone ? 0.0 : 1.0, 0.0,
                        sol.shot_monotone ? "" : "shooting terminal not monotone in lambda"});

  if (is_nd(chain)) {
    const NuHat nh = nu_hat(chain, e);
    std::vector<double> log_B(n), log_F(n);
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      detail::nd_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_g, m + 1, log_B, log_F);
      double lowest = kPosInf;
      for (std::size_t i = 0; i <= m; ++i) lowest = std::min(lowest, e.pm1() * (log_F[i] - log_g[i]));
      const double expected = e.pm1() * (sol.log_step[m] - log_g[m]) - log_lambda;
      const double d = lowest - expected;
      worst = std::max(worst, std::isfinite(d) ? std::fabs(std::expm1(d)) : kPosInf);
    }
    add("truncation_identity", worst);
  }
  return rep;
}

InverseIterationResult inverse_iteration(const Chain& chain, const Exponent& e, double tol, std::size_t max_iter) {
  const std::size_t n = chain.size();
  const NuHat nh = nu_hat(chain, e);
  const PartialSumTable t = partial_sums(chain, e);
  std::vector<double> log_f(n), log_B(n), log_F(n);
  for (std::size_t i = 0; i < n; ++i) log_f[i] = t.log_nuhat_sum[i] / e.conjugate();
  InverseIterationResult out;
  double hi = 0.0, lo = 0.0;
  const double log_tol = std::log1p(tol);
  while (out.iterations < max_iter) {
    ++out.iterations;
    if (is_nd(chain)) {
      detail::nd_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_f, n, log_B, log_F);
    } else {
      detail::dn_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_f, n, log_B, log_F);
    }
    hi = kNegInf;
    lo = kPosInf;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = e.pm1() * (log_F[i] - log_f[i]);
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
    const double scale = is_nd(chain) ? log_F[0] : log_F[n - 1];
    for (std::size_t i = 0; i < n; ++i) log_f[i] = log_F[i] - scale;
    if (hi - lo <= log_tol) {
      out.converged = true;
      break;
    }
  }
  out.lower = std::exp(-hi);
  out.upper = std::exp(-lo);
  out.lambda = 0.5 * (out.lower + out.upper);
  out.f.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.f[i] = exp_or_limit(log_f[i]);
  return out;
}

Chain truncated_chain(const Chain& chain, std::size_t m) {
  if (m < chain.first_index() || m > chain.last_index()) {
    throw InputError("truncation point m=" + std::to_string(m) + " outside the chain's index range");
  }
  const std::size_t len = m + 1 - chain.first_index();
  std::vector<double> lmu(chain.log_mu().begin(), chain.log_mu().begin() + static_cast<std::ptrdiff_t>(len));
  std::vector<double> lnu(chain.log_nu().begin(), chain.log_nu().begin() + static_cast<std::ptrdiff_t>(len));
  if (!is_nd(chain)) lmu.back() = log_sum(chain.log_mu().subspan(len - 1));
  return Chain::from_log_weights(chain.boundary(), std::move(lmu), std::move(lnu));
}

std::vector<double> lambda_truncated_seq(const Chain& chain, const Exponent& e, std::span<const std::size_t> m_list,
                                         const SolveOptions& opts) {
  std::vector<double> out;
  out.reserve(m_list.size());
  for (std::size_t m : m_list) out.push_back(solve(truncated_chain(chain, m), e, opts).lambda);
  return out;
}

DualityReport check_duality(const Chain& chain, const Exponent& e, const SolveOptions& opts) {
  DualityReport r;
  const Exponent dual_e(e.conjugate());
  r.lambda = solve(chain, e, opts).lambda;
  r.dual_lambda = solve(dual_chain(chain, e), dual_e, opts).lambda;
  r.lhs = std::exp(-std::log(r.lambda) / e.p());
  r.rhs = std::exp(-std::log(r.dual_lambda) / dual_e.p());
  r.gap = std::fabs(r.lhs - r.rhs) / std::max(r.lhs, r.rhs);
  return r;
}

}  // namespace hardy
