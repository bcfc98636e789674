#pragma once

// Shared log-domain kernels behind the operators, the iterated sequences and
// the eigensolver. Everything works on storage positions.

#include <cstddef>
#include <span>

#include "hardy/chain.hpp"
#include "hardy/logspace.hpp"

namespace hardy::detail {

// ND, positions [0, len):
//   A_j = sum_{k<=j} mu_k f_k^(p-1)
//   B_j = nu_hat_j A_j^(p*-1)
//   F_i = sum_{i<=j<len} B_j
// so that II_i(f) = (F_i / f_i)^(p-1) and F is the next iterate.
inline void nd_double_sum(std::span<const double> log_mu, std::span<const double> log_nuhat, double pm1,
                          double pstar_m1, std::span<const double> log_f, std::size_t len,
                          std::span<double> log_B, std::span<double> log_F) {
  LogAccumulator inner;
  for (std::size_t j = 0; j < len; ++j) {
    inner.add(log_mu[j] + pm1 * log_f[j]);
    log_B[j] = log_nuhat[j] + pstar_m1 * inner.log_value();
  }
  LogAccumulator outer;
  for (std::size_t i = len; i-- > 0;) {
    outer.add(log_B[i]);
    log_F[i] = outer.log_value();
  }
}

// DN, positions [0, len) with len = N:
//   A_j = sum_{k>=j} mu_k f_k^(p-1)
//   B_j = nu_hat_j A_j^(p*-1)
//   F_i = sum_{j<=i} B_j
inline void dn_double_sum(std::span<const double> log_mu, std::span<const double> log_nuhat, double pm1,
                          double pstar_m1, std::span<const double> log_f, std::size_t len,
                          std::span<double> log_B, std::span<double> log_F) {
  LogAccumulator inner;
  for (std::size_t j = len; j-- > 0;) {
    inner.add(log_mu[j] + pm1 * log_f[j]);
    log_B[j] = log_nuhat[j] + pstar_m1 * inner.log_value();
  }
  LogAccumulator outer;
  for (std::size_t i = 0; i < len; ++i) {
    outer.add(log_B[i]);
    log_F[i] = outer.log_value();
  }
}

// exp(a) - exp(b), both given as logs, divided by exp(log_den).
inline double signed_log_difference(double a, double b, double log_den) noexcept {
  if (a >= b) return exp_or_limit(log_sub(a, b) - log_den);
  return -exp_or_limit(log_sub(b, a) - log_den);
}

// R_i(w) for ND at position i; w_i is read as given (the caller supplies w_N = 0).
inline double nd_R(const Chain& chain, const Exponent& e, std::span<const double> w, std::size_t i) {
  const double pm1 = e.pm1();
  const double t1 = chain.log_nu()[i] + pm1 * std::log1p(-w[i]);
  double t2 = kNegInf;
  if (i > 0) t2 = chain.log_nu()[i - 1] + pm1 * (std::log1p(-w[i - 1]) - std::log(w[i - 1]));
  return signed_log_difference(t1, t2, chain.log_mu()[i]);
}

// R_i(w) for DN at position i (state i+1), with w_0 = inf and nu_{N+1} = 0.
// When log_mu_override is finite it replaces log mu_i (the truncated variant).
inline double dn_R(const Chain& chain, const Exponent& e, std::span<const double> w, std::size_t i,
                   double log_mu_override = kNegInf) {
  const double pm1 = e.pm1();
  double t1 = chain.log_nu()[i];
  if (i > 0) t1 += pm1 * std::log1p(-1.0 / w[i - 1]);
  double t2 = kNegInf;
  if (i + 1 < chain.size() && w[i] != 1.0) t2 = chain.log_nu()[i + 1] + pm1 * std::log(w[i] - 1.0);
  const double lmu = log_mu_override == kNegInf ? chain.log_mu()[i] : log_mu_override;
  return signed_log_difference(t1, t2, lmu);
}

}  // namespace hardy::detail
