#pragma once

// Everything the estimator modules know about one (chain, p), in one place.

#include <cstddef>
#include <vector>

#include "hardy/chain.hpp"
#include "hardy/estimators.hpp"
#include "hardy/family_scan.hpp"

namespace hardy {

struct BoundsReport {
  BoundaryCase boundary = BoundaryCase::ND;
  double p = 2.0;
  double k_p = 0.0;
  SigmaResult sigma;
  /// Basic bounds: lower = (k_p sigma_p)^(-1), upper = sigma_p^(-1).
  double lower = 0.0;
  double upper = 0.0;
  ImprovedEstimates improved;
  /// delta_n, delta'_n, delta_bar_n for n = 1..iterations (empty when iterations = 0).
  std::size_t iterations = 0;
  std::vector<double> delta;
  FamilyScan family;
  /// Tightest interval certified by any of the above.
  double best_lower = 0.0;
  double best_upper = 0.0;
};

/// Closed forms always; the iterated sequences only when iterations > 0.
BoundsReport compute_bounds(const Chain& chain, const Exponent& e, std::size_t iterations = 0,
                            const ScanOptions& scan = {});

}  // namespace hardy
