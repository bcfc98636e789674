#pragma once

// Quantities shared by both boundary cases: sigma_p, the basic bounds, the
// three variational operators, certificates from test functions, the delta_n
// sequence and the closed-form first-step estimates. Every function reads
// the boundary case off the chain; nd_estimators.hpp and dn_estimators.hpp
// expose case-checked entry points.

#include <cstddef>
#include <vector>

#include "hardy/chain.hpp"
#include "hardy/test_function.hpp"

namespace hardy {

namespace detail {
/// Throws InputError unless the chain has the expected boundary case.
void require_case(const Chain& chain, BoundaryCase expected);
}  // namespace detail

struct SigmaResult {
  double value = 0.0;
  double log_value = 0.0;
  std::size_t argmax = 0;  ///< state label of the first maximizer
};

/// sigma_p = sup_n mu[0,n] nu_hat[n,N]^(p-1) (ND) or sup_n mu[n,N] nu_hat[1,n]^(p-1) (DN).
SigmaResult sigma_p(const Chain& chain, const Exponent& e);

struct BasicBounds {
  double lower = 0.0;  ///< (k(p) sigma_p)^(-1)
  double upper = 0.0;  ///< sigma_p^(-1)
};
BasicBounds basic_bounds(const Chain& chain, const Exponent& e);

/// I_i(f) over all states; +inf where f does not move across the edge.
/// Accepts F_I, TildeF_I and (ND) TildePrimeF_I.
std::vector<double> operator_I(const Chain& chain, const Exponent& e, const TestFunction& f);

/// II_i(f) over the support (ND) or all states (DN). Accepts every f-class.
std::vector<double> operator_II(const Chain& chain, const Exponent& e, const TestFunction& f);

/// R_i(w) on W (all states) or on TildeW (ND: states 0..m; DN: the truncated
/// variant with mu_m replaced by mu[m,N], zero past m).
std::vector<double> operator_R(const Chain& chain, const Exponent& e, const TestFunction& w);

enum class Side { Lower, Upper };
enum class OperatorKind { I, II, R };

struct Certificate {
  double bound = 0.0;
  Side side = Side::Lower;
  OperatorKind op = OperatorKind::II;
  FunctionClass cls = FunctionClass::Unclassified;
  std::size_t attained_at = 0;  ///< state label of the extremal term
};

/// Lower side: inf I^(-1), inf II^(-1), inf R. Upper side: the sup over the
/// support of the same. Throws InputError if the class does not certify the
/// requested side for the requested operator.
Certificate bound_from_test_function(const Chain& chain, const Exponent& e, OperatorKind op,
                                     const TestFunction& f, Side side);

/// delta_1..delta_n from f_1 = nu_hat[., absorbing end]^(1/p*), f_{k+1} = f_k II(f_k)^(p*-1).
/// Nonincreasing, and delta_n^(-1) <= lambda_p.
std::vector<double> delta_sequence(const Chain& chain, const Exponent& e, std::size_t n_max);

/// Closed forms for the first step of the three sequences.
struct ImprovedEstimates {
  double delta1 = 0.0;
  double delta1_prime = 0.0;
  double delta_bar1 = 0.0;
  std::size_t delta1_prime_at = 0;  ///< state label of the maximizing l (ND) or m (DN)
  std::size_t delta_bar1_at = 0;
  /// delta_bar1 <= delta1' for p <= 2 and >= for p >= 2, to 1e-10 relative.
  bool ordering_consistent = true;
};
ImprovedEstimates improved_estimates(const Chain& chain, const Exponent& e);

}  // namespace hardy
