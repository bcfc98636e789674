#include "hardy/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardy/error.hpp"
#include "hardy/logspace.hpp"
#include "kernels.hpp"

namespace hardy {

namespace detail {

void require_case(const Chain& chain, BoundaryCase expected) {
  if (chain.boundary() != expected) {
    throw InputError("expected a " + std::string(to_string(expected)) + " chain, got " +
                     std::string(to_string(chain.boundary())));
  }
}

}  // namespace detail

SigmaResult sigma_p(const Chain& chain, const Exponent& e) {
  const PartialSumTable t = partial_sums(chain, e);
  SigmaResult out;
  out.log_value = kNegInf;
  for (std::size_t n = 0; n < chain.size(); ++n) {
    const double v = t.log_mu_sum[n] + e.pm1() * t.log_nuhat_sum[n];
    if (v > out.log_value) {
      out.log_value = v;
      out.argmax = chain.index(n);
    }
  }
  out.value = exp_or_limit(out.log_value);
  return out;
}

BasicBounds basic_bounds(const Chain& chain, const Exponent& e) {
  const SigmaResult s = sigma_p(chain, e);
  return {exp_or_limit(-s.log_value - std::log(e.k())), exp_or_limit(-s.log_value)};
}

namespace {

bool is_nd(const Chain& chain) { return chain.boundary() == BoundaryCase::ND; }

std::vector<double> logs_of(std::span<const double> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0.0 ? std::log(v[i]) : kNegInf;
  return out;
}

void require_one_of(const TestFunction& f, std::initializer_list<FunctionClass> allowed, std::string_view what) {
  for (FunctionClass c : allowed) {
    if (f.cls == c) return;
  }
  throw InputError(std::string(what) + " does not accept class " + std::string(to_string(f.cls)));
}

}  // namespace

std::vector<double> operator_I(const Chain& chain, const Exponent& e, const TestFunction& f) {
  require_one_of(f, {FunctionClass::F_I, FunctionClass::TildeF_I, FunctionClass::TildePrimeF_I}, "operator I");
  require_class(chain, e, f);
  const std::size_t n = chain.size();
  const auto& v = f.values;
  const std::vector<double> log_f = logs_of(v);
  std::vector<double> log_A(n);
  LogAccumulator acc;
  if (is_nd(chain)) {
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(chain.log_mu()[i] + e.pm1() * log_f[i]);
      log_A[i] = acc.log_value();
    }
  } else {
    for (std::size_t i = n; i-- > 0;) {
      acc.add(chain.log_mu()[i] + e.pm1() * log_f[i]);
      log_A[i] = acc.log_value();
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double diff;
    if (is_nd(chain)) {
      diff = v[i] - (i + 1 < n ? v[i + 1] : 0.0);
    } else {
      diff = v[i] - (i > 0 ? v[i - 1] : 0.0);
    }
    out[i] = diff > 0.0 ? exp_or_limit(log_A[i] - chain.log_nu()[i] - e.pm1() * std::log(diff)) : kPosInf;
  }
  return out;
}

std::vector<double> operator_II(const Chain& chain, const Exponent& e, const TestFunction& f) {
  require_one_of(f,
                 {FunctionClass::F_I, FunctionClass::F_II, FunctionClass::TildeF_I, FunctionClass::TildeF_II,
                  FunctionClass::TildePrimeF_I, FunctionClass::TildePrimeF_II},
                 "operator II");
  require_class(chain, e, f);
  const std::size_t len = support_length(chain, f);
  const std::vector<double> log_f = logs_of(f.values);
  const NuHat nh = nu_hat(chain, e);
  std::vector<double> log_B(len), log_F(len);
  if (is_nd(chain)) {
    detail::nd_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_f, len, log_B, log_F);
  } else {
    detail::dn_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_f, len, log_B, log_F);
  }
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = exp_or_limit(e.pm1() * (log_F[i] - log_f[i]));
  return out;
}

std::vector<double> operator_R(const Chain& chain, const Exponent& e, const TestFunction& w) {
  require_one_of(w, {FunctionClass::W, FunctionClass::TildeW}, "operator R");
  require_class(chain, e, w);
  const std::size_t n = chain.size();
  std::vector<double> out;
  if (is_nd(chain)) {
    const std::size_t len = support_length(chain, w);
    out.resize(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = detail::nd_R(chain, e, w.values, i);
    return out;
  }
  out.assign(n, 0.0);
  if (w.cls == FunctionClass::W) {
    for (std::size_t i = 0; i < n; ++i) out[i] = detail::dn_R(chain, e, w.values, i);
    return out;
  }
  const std::size_t m = *w.support_end - 1;
  const double log_mu_tail = log_sum(chain.log_mu().subspan(m));
  for (std::size_t i = 0; i < m; ++i) out[i] = detail::dn_R(chain, e, w.values, i);
  out[m] = detail::dn_R(chain, e, w.values, m, log_mu_tail);
  return out;
}

namespace {

bool certifies(const Chain& chain, OperatorKind op, FunctionClass c, Side side) {
  using FC = FunctionClass;
  if (side == Side::Lower) {
    switch (op) {
      case OperatorKind::I: return c == FC::F_I;
      case OperatorKind::II: return c == FC::F_I || c == FC::F_II;
      case OperatorKind::R: return c == FC::W;
    }
    return false;
  }
  switch (op) {
    case OperatorKind::I:
      return c == FC::TildeF_I || (is_nd(chain) && c == FC::TildePrimeF_I);
    case OperatorKind::II:
      return c == FC::TildeF_I || c == FC::TildeF_II || c == FC::TildePrimeF_II ||
             (is_nd(chain) && c == FC::TildePrimeF_I);
    case OperatorKind::R:
      return c == FC::TildeW;
  }
  return false;
}

const char* op_name(OperatorKind op) {
  switch (op) {
    case OperatorKind::I: return "I";
    case OperatorKind::II: return "II";
    case OperatorKind::R: return "R";
  }
  return "?";
}

}  // namespace

Certificate bound_from_test_function(const Chain& chain, const Exponent& e, OperatorKind op,
                                     const TestFunction& f, Side side) {
  if (!certifies(chain, op, f.cls, side)) {
    throw InputError(std::string("class ") + std::string(to_string(f.cls)) + " does not certify " +
                     (side == Side::Lower ? "a lower" : "an upper") + " bound through operator " + op_name(op));
  }
  std::vector<double> values;
  switch (op) {
    case OperatorKind::I: values = operator_I(chain, e, f); break;
    case OperatorKind::II: values = operator_II(chain, e, f); break;
    case OperatorKind::R: values = operator_R(chain, e, f); break;
  }
  // I and II certify through their reciprocals, R directly.
  if (op != OperatorKind::R) {
    for (double& x : values) x = 1.0 / x;
  }
  std::size_t len = values.size();
  if (side == Side::Upper && op == OperatorKind::I && is_nd(chain)) len = support_length(chain, f);
  Certificate c;
  c.side = side;
  c.op = op;
  c.cls = f.cls;
  std::size_t best = 0;
  for (std::size_t i = 1; i < len; ++i) {
    if (side == Side::Lower ? values[i] < values[best] : values[i] > values[best]) best = i;
  }
  c.bound = values[best];
  c.attained_at = chain.index(best);
  return c;
}

std::vector<double> delta_sequence(const Chain& chain, const Exponent& e, std::size_t n_max) {
  const std::size_t n = chain.size();
  const NuHat nh = nu_hat(chain, e);
  const PartialSumTable t = partial_sums(chain, e);
  std::vector<double> log_f(n), log_B(n), log_F(n);
  for (std::size_t i = 0; i < n; ++i) log_f[i] = t.log_nuhat_sum[i] / e.conjugate();
  std::vector<double> out;
  out.reserve(n_max);
  for (std::size_t step = 0; step < n_max; ++step) {
    if (is_nd(chain)) {
      detail::nd_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_f, n, log_B, log_F);
    } else {
      detail::dn_double_sum(chain.log_mu(), nh.log_nuhat, e.pm1(), e.pstar_m1(), log_f, n, log_B, log_F);
    }
    double best = kNegInf;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, e.pm1() * (log_F[i] - log_f[i]));
    out.push_back(exp_or_limit(best));
    // II is homogeneous of degree zero, so the next iterate is rescaled freely.
    const double scale = is_nd(chain) ? log_F[0] : log_F[n - 1];
    for (std::size_t i = 0; i < n; ++i) log_f[i] = log_F[i] - scale;
  }
  return out;
}

namespace {

// ND closed forms. S_i = log nu_hat[i,N].
ImprovedEstimates nd_closed_forms(const Chain& chain, const Exponent& e) {
  const std::size_t n = chain.size();
  const auto lmu = chain.log_mu();
  const NuHat nh = nu_hat(chain, e);
  const std::vector<double> S = log_suffix_sums(nh.log_nuhat);
  const double p = e.p(), pm1 = e.pm1(), qm1 = e.pstar_m1(), q = e.conjugate();
  ImprovedEstimates out;

  // delta_1 = sup_i [S_i^(-1/p*) sum_{j>=i} nu_hat_j (sum_{k<=j} mu_k S_k^((p-1)/p*))^(p*-1)]^(p-1)
  {
    std::vector<double> outer(n);
    LogAccumulator inner;
    for (std::size_t j = 0; j < n; ++j) {
      inner.add(lmu[j] + pm1 / q * S[j]);
      outer[j] = nh.log_nuhat[j] + qm1 * inner.log_value();
    }
    LogAccumulator tail;
    double best = kNegInf;
    for (std::size_t i = n; i-- > 0;) {
      tail.add(outer[i]);
      best = std::max(best, pm1 * (tail.log_value() - S[i] / q));
    }
    out.delta1 = exp_or_limit(best);
  }

  // delta_1' = sup_l phi_l^(-1) [sum_{j>=l} nu_hat_j (sum_{k<=j} mu_k phi_{max(k,l)})^(p*-1)]^(p-1),
  // phi = nu_hat[.,N]^(p-1)
  {
    const std::vector<double> M = log_prefix_sums(lmu);
    double best = kNegInf;
    for (std::size_t l = 0; l < n; ++l) {
      const double log_phi_l = pm1 * S[l];
      LogAccumulator inner;
      inner.add(M[l] + log_phi_l);
      LogAccumulator tail;
      tail.add(nh.log_nuhat[l] + qm1 * inner.log_value());
      for (std::size_t j = l + 1; j < n; ++j) {
        inner.add(lmu[j] + pm1 * S[j]);
        tail.add(nh.log_nuhat[j] + qm1 * inner.log_value());
      }
      const double v = pm1 * tail.log_value() - log_phi_l;
      if (v > best) {
        best = v;
        out.delta1_prime_at = l;
      }
    }
    out.delta1_prime = exp_or_limit(best);
  }

  // delta_bar_1 = sup_m nu_hat[m,N]^(-1) sum_j mu_j nu_hat[max(j,m),N]^p
  {
    const std::vector<double> M = log_prefix_sums(lmu);
    std::vector<double> tail_terms(n);
    for (std::size_t j = 0; j < n; ++j) tail_terms[j] = lmu[j] + p * S[j];
    const std::vector<double> T = log_suffix_sums(tail_terms);
    double best = kNegInf;
    for (std::size_t m = 0; m < n; ++m) {
      double num = M[m] + p * S[m];
      if (m + 1 < n) num = log_add(num, T[m + 1]);
      const double v = num - S[m];
      if (v > best) {
        best = v;
        out.delta_bar1_at = m;
      }
    }
    out.delta_bar1 = exp_or_limit(best);
  }
  return out;
}

// DN closed forms. P_i = log nu_hat[1,i].
ImprovedEstimates dn_closed_forms(const Chain& chain, const Exponent& e) {
  const std::size_t n = chain.size();
  const auto lmu = chain.log_mu();
  const NuHat nh = nu_hat(chain, e);
  const std::vector<double> P = log_prefix_sums(nh.log_nuhat);
  const double p = e.p(), pm1 = e.pm1(), qm1 = e.pstar_m1(), q = e.conjugate();
  ImprovedEstimates out;

  // delta_1 = sup_i [P_i^(-1/p*) sum_{j<=i} nu_hat_j (sum_{k>=j} mu_k P_k^((p-1)/p*))^(p*-1)]^(p-1)
  {
    std::vector<double> outer(n);
    LogAccumulator inner;
    for (std::size_t j = n; j-- > 0;) {
      inner.add(lmu[j] + pm1 / q * P[j]);
      outer[j] = nh.log_nuhat[j] + qm1 * inner.log_value();
    }
    LogAccumulator head;
    double best = kNegInf;
    for (std::size_t i = 0; i < n; ++i) {
      head.add(outer[i]);
      best = std::max(best, pm1 * (head.log_value() - P[i] / q));
    }
    out.delta1 = exp_or_limit(best);
  }

  // delta_1' = sup_m P_m^(-(p-1)) [sum_{j<=m} nu_hat_j (sum_{k>=j} mu_k P_{min(k,m)}^(p-1))^(p*-1)]^(p-1)
  {
    const std::vector<double> Mt = log_suffix_sums(lmu);
    double best = kNegInf;
    for (std::size_t m = 0; m < n; ++m) {
      // inner sum for j <= m: mu[m+1,N] P_m^(p-1) + sum_{j<=k<=m} mu_k P_k^(p-1)
      LogAccumulator inner;
      if (m + 1 < n) inner.add(Mt[m + 1] + pm1 * P[m]);
      LogAccumulator head;
      for (std::size_t j = m + 1; j-- > 0;) {
        inner.add(lmu[j] + pm1 * P[j]);
        head.add(nh.log_nuhat[j] + qm1 * inner.log_value());
      }
      const double v = pm1 * head.log_value() - pm1 * P[m];
      if (v > best) {
        best = v;
        out.delta1_prime_at = m + 1;
      }
    }
    out.delta1_prime = exp_or_limit(best);
  }

  // delta_bar_1 = sup_m P_m^(-1) sum_j mu_j P_{min(j,m)}^p
  {
    const std::vector<double> Mt = log_suffix_sums(lmu);
    std::vector<double> head_terms(n);
    for (std::size_t j = 0; j < n; ++j) head_terms[j] = lmu[j] + p * P[j];
    const std::vector<double> H = log_prefix_sums(head_terms);
    double best = kNegInf;
    for (std::size_t m = 0; m < n; ++m) {
      double num = Mt[m] + p * P[m];
      if (m > 0) num = log_add(num, H[m - 1]);
      const double v = num - P[m];
      if (v > best) {
        best = v;
        out.delta_bar1_at = m + 1;
      }
    }
    out.delta_bar1 = exp_or_limit(best);
  }
  return out;
}

}  // namespace

ImprovedEstimates improved_estimates(const Chain& chain, const Exponent& e) {
  ImprovedEstimates out = is_nd(chain) ? nd_closed_forms(chain, e) : dn_closed_forms(chain, e);
  const double tol = 1e-10;
  const double slack = tol * std::max(out.delta_bar1, out.delta1_prime);
  if (e.p() <= 2.0 && out.delta_bar1 > out.delta1_prime + slack) out.ordering_consistent = false;
  if (e.p() >= 2.0 && out.delta_bar1 < out.delta1_prime - slack) out.ordering_consistent = false;
  return out;
}

}  // namespace hardy
