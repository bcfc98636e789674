#pragma once

// The property checks behind `hardy verify`: every bound the estimators emit
// is compared with the shooting eigenvalue, and the eigenfunction itself is
// put through verify_solution.

#include <cstddef>
#include <cstdint>

#include "hardy/chain.hpp"
#include "hardy/eigensolver.hpp"
#include "hardy/family_scan.hpp"

namespace hardy {

struct SuiteOptions {
  std::size_t trials = 20;  ///< random test functions per admissible class
  std::size_t iters = 5;    ///< length of the delta sequences
  double tol = 1e-9;
  std::uint64_t seed = 20240601;
  ScanOptions scan;
};

VerificationReport run_invariant_suite(const Chain& chain, const Exponent& e, const SuiteOptions& opts = {});

}  // namespace hardy
