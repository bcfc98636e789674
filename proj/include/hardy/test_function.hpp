#pragma once

// Candidate sequences fed to the variational operators, and the admissibility
// classes that decide which side of lambda_p an operator value certifies.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/chain.hpp"

namespace hardy {

enum class FunctionClass {
  F_I,             ///< lower side, operator I
  F_II,            ///< lower side, operator II
  TildeF_I,        ///< upper side: plateau, strict monotone stretch, then cut
  TildeF_II,       ///< upper side: compactly supported (ND) / frozen after m (DN)
  TildePrimeF_I,   ///< upper side, ND only: strictly decreasing up to m, then zero
  TildePrimeF_II,  ///< upper side: positive everywhere (square-summable at finite N)
  W,               ///< lower side, ratio form
  TildeW,          ///< upper side, ratio form
  Unclassified,
};

std::string_view to_string(FunctionClass c) noexcept;

/// Values over the chain's states in storage order (DN position 0 is state 1).
/// For the ratio classes the entries are w_i.
struct TestFunction {
  std::vector<double> values;
  FunctionClass cls = FunctionClass::Unclassified;
  /// State label m closing the support or plateau; required by the tilde classes
  /// except TildePrimeF_II.
  std::optional<std::size_t> support_end;
};

/// Describes the first violated predicate, or nullopt when `f` is in its class.
std::optional<std::string> class_violation(const Chain& chain, const Exponent& e, const TestFunction& f);

/// Throws InputError with the violated predicate.
void require_class(const Chain& chain, const Exponent& e, const TestFunction& f);

/// Number of leading storage positions on which an ND function of a
/// compact-support class is nonzero (N+1 for the full-support classes).
std::size_t support_length(const Chain& chain, const TestFunction& f);

}  // namespace hardy
