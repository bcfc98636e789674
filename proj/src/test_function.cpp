#include "hardy/test_function.hpp"

#include <cmath>
#include <string>

#include "hardy/error.hpp"
#include "kernels.hpp"

namespace hardy {

std::string_view to_string(FunctionClass c) noexcept {
  switch (c) {
    case FunctionClass::F_I: return "F_I";
    case FunctionClass::F_II: return "F_II";
    case FunctionClass::TildeF_I: return "TildeF_I";
    case FunctionClass::TildeF_II: return "TildeF_II";
    case FunctionClass::TildePrimeF_I: return "TildePrimeF_I";
    case FunctionClass::TildePrimeF_II: return "TildePrimeF_II";
    case FunctionClass::W: return "W";
    case FunctionClass::TildeW: return "TildeW";
    case FunctionClass::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

namespace {

using Violation = std::optional<std::string>;

std::string at(const Chain& chain, std::size_t pos) { return "at index " + std::to_string(chain.index(pos)); }

bool finite_positive(double x) { return x > 0.0 && std::isfinite(x); }

Violation all_positive(const Chain& chain, std::span<const double> f, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    if (!finite_positive(f[i])) return "value must be positive and finite " + at(chain, i);
  }
  return std::nullopt;
}

Violation zero_after(const Chain& chain, std::span<const double> f, std::size_t from) {
  for (std::size_t i = from; i < f.size(); ++i) {
    if (f[i] != 0.0) return "value must vanish beyond the support end " + at(chain, i);
  }
  return std::nullopt;
}

Violation strictly_decreasing(const Chain& chain, std::span<const double> f, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i + 1 < to; ++i) {
    if (!(f[i] > f[i + 1])) return "sequence must decrease strictly " + at(chain, i + 1);
  }
  return std::nullopt;
}

Violation strictly_increasing(const Chain& chain, std::span<const double> f, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i + 1 < to; ++i) {
    if (!(f[i] < f[i + 1])) return "sequence must increase strictly " + at(chain, i + 1);
  }
  return std::nullopt;
}

// Storage position of the support end, validated against the chain.
std::size_t support_pos(const Chain& chain, const TestFunction& f) {
  if (!f.support_end) {
    throw InputError(std::string("class ") + std::string(to_string(f.cls)) + " needs a support end m");
  }
  const std::size_t m = *f.support_end;
  if (m < chain.first_index() || m > chain.last_index()) {
    throw InputError("support end m=" + std::to_string(m) + " outside the chain's index range");
  }
  return m - chain.first_index();
}

Violation nd_violation(const Chain& chain, const Exponent& e, const TestFunction& tf) {
  const std::span<const double> f = tf.values;
  const std::size_t n = f.size();
  switch (tf.cls) {
    case FunctionClass::F_I:
      if (auto v = all_positive(chain, f, 0, n)) return v;
      return strictly_decreasing(chain, f, 0, n);
    case FunctionClass::F_II:
    case FunctionClass::TildePrimeF_II:
      return all_positive(chain, f, 0, n);
    case FunctionClass::TildeF_I: {
      const std::size_t m = support_pos(chain, tf);
      if (auto v = all_positive(chain, f, 0, m + 1)) return v;
      if (auto v = zero_after(chain, f, m + 1)) return v;
      std::size_t plateau = 0;
      while (plateau < m && f[plateau + 1] == f[0]) ++plateau;
      return strictly_decreasing(chain, f, plateau, m + 1);
    }
    case FunctionClass::TildePrimeF_I: {
      const std::size_t m = support_pos(chain, tf);
      if (auto v = all_positive(chain, f, 0, m + 1)) return v;
      if (auto v = zero_after(chain, f, m + 1)) return v;
      return strictly_decreasing(chain, f, 0, m + 1);
    }
    case FunctionClass::TildeF_II: {
      const std::size_t m = support_pos(chain, tf);
      if (auto v = all_positive(chain, f, 0, m + 1)) return v;
      return zero_after(chain, f, m + 1);
    }
    case FunctionClass::W:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(f[i] > 0.0 && f[i] < 1.0)) return "ratio must lie in (0,1) " + at(chain, i);
      }
      if (f[n - 1] != 0.0) return "ratio must be 0 at the absorbing end";
      return std::nullopt;
    case FunctionClass::TildeW: {
      const std::size_t m = support_pos(chain, tf);
      for (std::size_t i = 0; i < m; ++i) {
        if (!(f[i] > 0.0 && f[i] < 1.0)) return "ratio must lie in (0,1) " + at(chain, i);
      }
      if (f[m] != 0.0) return "ratio must be 0 at the support end " + at(chain, m);
      for (std::size_t i = 0; i <= m; ++i) {
        if (!(detail::nd_R(chain, e, f, i) > 0.0)) return "R must be positive " + at(chain, i);
      }
      return std::nullopt;
    }
    case FunctionClass::Unclassified:
      return "function carries no class tag";
  }
  return "unknown class";
}

Violation dn_violation(const Chain& chain, const Exponent& e, const TestFunction& tf) {
  const std::span<const double> f = tf.values;
  const std::size_t n = f.size();
  switch (tf.cls) {
    case FunctionClass::F_I:
      if (auto v = all_positive(chain, f, 0, n)) return v;
      return strictly_increasing(chain, f, 0, n);
    case FunctionClass::F_II:
    case FunctionClass::TildePrimeF_II:
      return all_positive(chain, f, 0, n);
    case FunctionClass::TildeF_I:
    case FunctionClass::TildeF_II: {
      const std::size_t m = support_pos(chain, tf);
      if (auto v = all_positive(chain, f, 0, n)) return v;
      for (std::size_t i = m + 1; i < n; ++i) {
        if (f[i] != f[m]) return "value must stay frozen beyond the support end " + at(chain, i);
      }
      if (tf.cls == FunctionClass::TildeF_I) return strictly_increasing(chain, f, 0, m + 1);
      return std::nullopt;
    }
    case FunctionClass::TildePrimeF_I:
      return "class TildePrimeF_I is defined for ND chains only";
    case FunctionClass::W:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(f[i] > 1.0) || !std::isfinite(f[i])) return "ratio must exceed 1 " + at(chain, i);
      }
      return std::nullopt;
    case FunctionClass::TildeW: {
      const std::size_t m = support_pos(chain, tf);
      const double pstar_m1 = e.pstar_m1();
      for (std::size_t i = 0; i < m; ++i) {
        if (!(f[i] > 1.0) || !std::isfinite(f[i])) return "ratio must exceed 1 " + at(chain, i);
        // 1 < w_i < 1 + (nu_i/nu_{i+1})^(p*-1) (1 - 1/w_{i-1}), with w_0 = inf
        const double prev = i == 0 ? 1.0 : 1.0 - 1.0 / f[i - 1];
        const double cap =
            std::exp(pstar_m1 * (chain.log_nu()[i] - chain.log_nu()[i + 1])) * prev;
        if (!(f[i] - 1.0 < cap)) return "ratio exceeds the admissible cap " + at(chain, i);
      }
      for (std::size_t i = m; i < n; ++i) {
        if (f[i] != 1.0) return "ratio must equal 1 from the support end on " + at(chain, i);
      }
      return std::nullopt;
    }
    case FunctionClass::Unclassified:
      return "function carries no class tag";
  }
  return "unknown class";
}

}  // namespace

std::optional<std::string> class_violation(const Chain& chain, const Exponent& e, const TestFunction& f) {
  if (f.values.size() != chain.size()) {
    return "function has " + std::to_string(f.values.size()) + " entries but the chain has " +
           std::to_string(chain.size()) + " states";
  }
  return chain.boundary() == BoundaryCase::ND ? nd_violation(chain, e, f) : dn_violation(chain, e, f);
}

void require_class(const Chain& chain, const Exponent& e, const TestFunction& f) {
  if (auto v = class_violation(chain, e, f)) {
    throw InputError(std::string("test function not in class ") + std::string(to_string(f.cls)) + ": " + *v);
  }
}

std::size_t support_length(const Chain& chain, const TestFunction& f) {
  if (chain.boundary() == BoundaryCase::DN) return chain.size();
  switch (f.cls) {
    case FunctionClass::TildeF_I:
    case FunctionClass::TildeF_II:
    case FunctionClass::TildePrimeF_I:
    case FunctionClass::TildeW:
      return support_pos(chain, f) + 1;
    default:
      return chain.size();
  }
}

}  // namespace hardy
