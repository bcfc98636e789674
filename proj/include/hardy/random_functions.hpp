#pragma once

// Random members of each admissible class, for soundness checks.

#include <random>

#include "hardy/chain.hpp"
#include "hardy/test_function.hpp"

namespace hardy {

/// A random member of `cls` for this chain. The result always satisfies
/// class_violation() == nullopt; TildeW may come back with a shorter support
/// than first drawn when the admissible interval closes up.
TestFunction random_member(const Chain& chain, const Exponent& e, FunctionClass cls, std::mt19937_64& rng);

}  // namespace hardy
