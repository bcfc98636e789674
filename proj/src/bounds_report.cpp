#include "hardy/bounds_report.hpp"

#include <algorithm>

namespace hardy {

BoundsReport compute_bounds(const Chain& chain, const Exponent& e, std::size_t iterations, const ScanOptions& scan) {
  BoundsReport r;
  r.boundary = chain.boundary();
  r.p = e.p();
  r.k_p = e.k();
  r.sigma = sigma_p(chain, e);
  const BasicBounds basic = basic_bounds(chain, e);
  r.lower = basic.lower;
  r.upper = basic.upper;
  r.improved = improved_estimates(chain, e);
  r.iterations = iterations;

  r.best_lower = std::max(r.lower, 1.0 / r.improved.delta1);
  r.best_upper = std::min({r.upper, 1.0 / r.improved.delta1_prime, 1.0 / r.improved.delta_bar1});
  if (iterations > 0) {
    r.delta = delta_sequence(chain, e, iterations);
    r.family = scan_family_parallel(chain, e, iterations, scan);
    for (double d : r.delta) r.best_lower = std::max(r.best_lower, 1.0 / d);
    for (double d : r.family.delta_prime) r.best_upper = std::min(r.best_upper, 1.0 / d);
    for (double d : r.family.delta_bar) r.best_upper = std::min(r.best_upper, 1.0 / d);
  }
  return r;
}

}  // namespace hardy
