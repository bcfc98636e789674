#pragma once

// The delta'_n / delta_bar_n families. Each member of the family is iterated
// on its own, so the scan is embarrassingly parallel; the serial version is
// kept as the reference the parallel one must reproduce bit for bit.
//
// ND members are indexed by pairs l <= m: f_1 = nu_hat[max(., l), m] on {0..m},
// zero beyond. DN members are indexed by a cut m: f_1 = nu_hat[1, min(., m)].
// Either way f_{k+1} is the double-sum image of f_k, kept inside the member's
// shape. delta'_n is the sup over members of inf II(f_n), delta_bar_n the sup
// of the Rayleigh quotient mu(f_n^p) / D_p(f_n).

#include <cstddef>
#include <vector>

#include "hardy/chain.hpp"

namespace hardy {

struct ScanPair {
  std::size_t ell = 0;  ///< ND only; 0 for DN
  std::size_t m = 0;
  friend bool operator==(const ScanPair&, const ScanPair&) = default;
};

struct ScanOptions {
  /// Evaluate every stride-th cut point m (the last one always included).
  /// Anything above 1 makes the result a non-exhaustive lower estimate of the sups.
  std::size_t m_stride = 1;
  /// Largest N scanned exhaustively; a bigger chain needs m_stride > 1 or a raised cap.
  std::size_t exhaustive_cap = 2000;
};

struct FamilyScan {
  std::vector<double> delta_prime;  ///< index n-1 holds delta'_n
  std::vector<double> delta_bar;
  std::vector<ScanPair> delta_prime_at;
  std::vector<ScanPair> delta_bar_at;
  bool exhaustive = true;
};

/// Single-threaded reference.
FamilyScan scan_family_serial(const Chain& chain, const Exponent& e, std::size_t n_max,
                              const ScanOptions& opts = {});

/// OpenMP over cut points. Ties go to the lexicographically smallest pair, so
/// the result does not depend on thread count or scheduling.
FamilyScan scan_family_parallel(const Chain& chain, const Exponent& e, std::size_t n_max,
                                const ScanOptions& opts = {});

}  // namespace hardy
