#include "hardy/invariant_suite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hardy/estimators.hpp"
#include "hardy/random_functions.hpp"

namespace hardy {

namespace {

// Worst relative excess of a over b in "a <= b"; zero when it holds.
double excess(double a, double b) {
  if (a <= b) return 0.0;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale > 0.0 ? (a - b) / scale : 0.0;
}

double rel_gap(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale > 0.0 ? std::fabs(a - b) / scale : 0.0;
}

class Tally {
 public:
  Tally(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

  void observe(double defect, const std::string& where) {
    if (std::isnan(defect)) defect = INFINITY;
    if (defect > worst_) {
      worst_ = defect;
      where_ = where;
    }
  }

  Check finish() const {
    Check c;
    c.name = name_;
    c.value = worst_;
    c.tolerance = tol_;
    c.pass = worst_ <= tol_;
    if (!c.pass) c.detail = where_;
    return c;
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
  std::string where_;
};

std::string at(const char* what, std::size_t n) { return std::string(what) + " n=" + std::to_string(n); }

std::vector<std::size_t> truncation_points(const Chain& chain) {
  const std::size_t first = chain.first_index(), last = chain.last_index();
  const std::size_t count = last - first + 1;
  const std::size_t stride = std::max<std::size_t>(1, count / 64);
  std::vector<std::size_t> out;
  for (std::size_t m = first; m < last; m += stride) out.push_back(m);
  out.push_back(last);
  return out;
}

}  // namespace

VerificationReport run_invariant_suite(const Chain& chain, const Exponent& e, const SuiteOptions& opts) {
  const double tol = opts.tol;
  const bool nd = chain.boundary() == BoundaryCase::ND;
  const std::size_t iters = std::max<std::size_t>(opts.iters, 2);
  VerificationReport report;

  const EigenSolution sol = solve(chain, e);
  const double lambda = sol.lambda;

  const SigmaResult sigma = sigma_p(chain, e);
  const BasicBounds basic = basic_bounds(chain, e);
  Tally sandwich("basic_sandwich", tol);
  sandwich.observe(excess(basic.lower, lambda), "lower");
  sandwich.observe(excess(lambda, basic.upper), "upper");
  report.checks.push_back(sandwich.finish());

  const std::vector<double> delta = delta_sequence(chain, e, iters);
  const FamilyScan fam = scan_family_parallel(chain, e, iters, opts.scan);
  Tally mono("delta_monotone", tol), approx("approximating_sandwich", tol), bar("delta_bar_relations", tol);
  for (std::size_t n = 0; n < iters; ++n) {
    if (n + 1 < iters) {
      mono.observe(excess(delta[n + 1], delta[n]), at("delta", n + 1));
      mono.observe(excess(fam.delta_prime[n], fam.delta_prime[n + 1]), at("delta'", n + 1));
      bar.observe(excess(fam.delta_prime[n], fam.delta_bar[n + 1]), at("delta_bar_{n+1} vs delta'", n + 1));
    }
    approx.observe(excess(1.0 / delta[n], lambda), at("delta^-1", n + 1));
    approx.observe(excess(lambda, 1.0 / fam.delta_prime[n]), at("delta'^-1", n + 1));
    bar.observe(excess(lambda, 1.0 / fam.delta_bar[n]), at("delta_bar^-1", n + 1));
  }
  approx.observe(excess(basic.lower, 1.0 / delta[0]), "k sigma vs delta_1");
  approx.observe(excess(1.0 / fam.delta_prime[0], basic.upper), "delta'_1 vs sigma");
  bar.observe(excess(sigma.value, fam.delta_bar[0]), "delta_bar_1 >= sigma");
  bar.observe(excess(fam.delta_bar[0], e.p() * sigma.value), "delta_bar_1 <= p sigma");
  report.checks.push_back(mono.finish());
  report.checks.push_back(approx.finish());
  report.checks.push_back(bar.finish());

  const ImprovedEstimates im = improved_estimates(chain, e);
  Tally closed("closed_form_agreement", 1e-12);
  closed.observe(rel_gap(im.delta1, delta[0]), "delta_1");
  closed.observe(rel_gap(im.delta1_prime, fam.delta_prime[0]), "delta'_1");
  closed.observe(rel_gap(im.delta_bar1, fam.delta_bar[0]), "delta_bar_1");
  report.checks.push_back(closed.finish());

  Tally order("estimate_ordering", 1e-10);
  if (e.p() <= 2.0) order.observe(excess(im.delta_bar1, im.delta1_prime), "delta_bar_1 <= delta'_1");
  if (e.p() >= 2.0) order.observe(excess(im.delta1_prime, im.delta_bar1), "delta_bar_1 >= delta'_1");
  report.checks.push_back(order.finish());

  // Every admissible (operator, class, side) combination.
  using FC = FunctionClass;
  std::vector<std::tuple<OperatorKind, FC, Side>> combos = {
      {OperatorKind::I, FC::F_I, Side::Lower},          {OperatorKind::II, FC::F_I, Side::Lower},
      {OperatorKind::II, FC::F_II, Side::Lower},        {OperatorKind::R, FC::W, Side::Lower},
      {OperatorKind::I, FC::TildeF_I, Side::Upper},     {OperatorKind::II, FC::TildeF_I, Side::Upper},
      {OperatorKind::II, FC::TildeF_II, Side::Upper},   {OperatorKind::II, FC::TildePrimeF_II, Side::Upper},
      {OperatorKind::R, FC::TildeW, Side::Upper},
  };
  if (nd) {
    combos.emplace_back(OperatorKind::I, FC::TildePrimeF_I, Side::Upper);
    combos.emplace_back(OperatorKind::II, FC::TildePrimeF_I, Side::Upper);
  }
  std::mt19937_64 rng(opts.seed);
  Tally cert("certificate_soundness", tol);
  for (const auto& [op, cls, side] : combos) {
    for (std::size_t t = 0; t < opts.trials; ++t) {
      const TestFunction f = random_member(chain, e, cls, rng);
      const Certificate c = bound_from_test_function(chain, e, op, f, side);
      const std::string where = std::string(to_string(cls)) + " trial " + std::to_string(t);
      if (side == Side::Lower) {
        cert.observe(excess(c.bound, lambda), where);
      } else {
        cert.observe(excess(lambda, c.bound), where);
      }
    }
  }
  report.checks.push_back(cert.finish());

  for (Check& c : verify_solution(chain, e, sol, tol).checks) {
    c.name = "solution." + c.name;
    report.checks.push_back(std::move(c));
  }

  const std::vector<std::size_t> ms = truncation_points(chain);
  const std::vector<double> trunc = lambda_truncated_seq(chain, e, ms);
  Tally tr("truncated_monotone", tol);
  for (std::size_t k = 0; k + 1 < trunc.size(); ++k) tr.observe(excess(trunc[k + 1], trunc[k]), at("m", ms[k + 1]));
  tr.observe(rel_gap(trunc.back(), lambda) > 1e-12 ? INFINITY : 0.0, "m = N");
  report.checks.push_back(tr.finish());

  const InverseIterationResult inv = inverse_iteration(chain, e);
  Tally oracle("oracle_agreement", 1e-8);
  oracle.observe(inv.converged ? rel_gap(inv.lambda, lambda) : INFINITY, "inverse iteration");
  report.checks.push_back(oracle.finish());

  // Random positive functions, and small multiplicative perturbations of g.
  Tally ray("rayleigh_optimality", tol);
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3)), jitter(-1e-3, 1e-3);
  std::vector<double> f(chain.size());
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const bool near = t % 2 == 1;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = near ? sol.g[i] * (1.0 + jitter(rng)) : std::exp(logu(rng));
    const double q = dirichlet_form(chain, e, f) / mu_norm_p(chain, e, f);
    if (std::isfinite(q)) ray.observe(excess(lambda, q), "trial " + std::to_string(t));
  }
  report.checks.push_back(ray.finish());

  const DualityReport dual = check_duality(chain, e);
  Tally du("duality", 1e-8);
  du.observe(dual.gap, "dual chain");
  report.checks.push_back(du.finish());

  return report;
}

}  // namespace hardy
