#pragma once

// DN-case entry points, mirroring nd_estimators.hpp.

#include "hardy/estimators.hpp"
#include "hardy/family_scan.hpp"

namespace hardy {

inline SigmaResult sigma_p_dn(const Chain& chain, const Exponent& e) {
  detail::require_case(chain, BoundaryCase::DN);
  return sigma_p(chain, e);
}

inline BasicBounds basic_bounds_dn(const Chain& chain, const Exponent& e) {
  detail::require_case(chain, BoundaryCase::DN);
  return basic_bounds(chain, e);
}

inline Certificate bound_from_test_function_dn(const Chain& chain, const Exponent& e, OperatorKind op,
                                               const TestFunction& f, Side side) {
  detail::require_case(chain, BoundaryCase::DN);
  return bound_from_test_function(chain, e, op, f, side);
}

inline std::vector<double> delta_seq_dn(const Chain& chain, const Exponent& e, std::size_t n_max) {
  detail::require_case(chain, BoundaryCase::DN);
  return delta_sequence(chain, e, n_max);
}

/// delta'_n and delta_bar_n over the cut points m.
inline FamilyScan delta_prime_bar_seq_dn(const Chain& chain, const Exponent& e, std::size_t n_max,
                                         const ScanOptions& opts = {}) {
  detail::require_case(chain, BoundaryCase::DN);
  return scan_family_parallel(chain, e, n_max, opts);
}

inline ImprovedEstimates improved_estimates_dn(const Chain& chain, const Exponent& e) {
  detail::require_case(chain, BoundaryCase::DN);
  return improved_estimates(chain, e);
}

}  // namespace hardy
