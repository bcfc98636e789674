#pragma once

// Weighted chains, exponents and the sums every estimator is built from.
//
// ND chains live on {0..N} with a reflecting left end (nu_{-1} = 0) and an
// absorbing right end (f_{N+1} = 0). DN chains live on {1..N} with an
// absorbing left end (f_0 = 0) and a reflecting right end (nu_{N+1} = 0).
// Boundary values are never stored; every evaluation applies them.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

enum class BoundaryCase { ND, DN };

std::string_view to_string(BoundaryCase c) noexcept;
BoundaryCase parse_boundary_case(std::string_view text);

/// p together with its conjugate p* = p/(p-1) and k(p) = p * p*^(p-1).
class Exponent {
 public:
  static constexpr double kMinP = 1.0 + 1e-6;
  static constexpr double kMaxP = 1e6;

  /// Throws InputError outside [kMinP, kMaxP]; p = 1 and p = inf are excluded.
  explicit Exponent(double p);

  [[nodiscard]] double p() const noexcept { return p_; }
  [[nodiscard]] double conjugate() const noexcept { return pstar_; }
  [[nodiscard]] double k() const noexcept { return kp_; }
  /// p - 1
  [[nodiscard]] double pm1() const noexcept { return p_ - 1.0; }
  /// p* - 1 == 1/(p - 1)
  [[nodiscard]] double pstar_m1() const noexcept { return pstar_ - 1.0; }

 private:
  double p_;
  double pstar_;
  double kp_;
};

/// Immutable weighted chain. Weights are held in log scale (authoritative)
/// with linear mirrors that may be 0 or inf when not representable.
///
/// Positions 0..size()-1 address the storage; index(pos) gives the state
/// label (pos for ND, pos + 1 for DN).
class Chain {
 public:
  /// Validates and builds. Throws InputError naming the offending state index
  /// for a nonpositive or non-finite weight, or on a length mismatch.
  static Chain make(BoundaryCase c, std::span<const double> mu, std::span<const double> nu);
  /// Same, from log weights (any finite value is admissible).
  static Chain from_log_weights(BoundaryCase c, std::vector<double> log_mu, std::vector<double> log_nu);

  [[nodiscard]] BoundaryCase boundary() const noexcept { return case_; }
  /// Number of states.
  [[nodiscard]] std::size_t size() const noexcept { return log_mu_.size(); }
  /// N: the largest state label.
  [[nodiscard]] std::size_t last_index() const noexcept;
  /// 0 for ND, 1 for DN.
  [[nodiscard]] std::size_t first_index() const noexcept { return case_ == BoundaryCase::ND ? 0 : 1; }
  [[nodiscard]] std::size_t index(std::size_t pos) const noexcept { return pos + first_index(); }

  [[nodiscard]] std::span<const double> mu() const noexcept { return mu_; }
  [[nodiscard]] std::span<const double> nu() const noexcept { return nu_; }
  [[nodiscard]] std::span<const double> log_mu() const noexcept { return log_mu_; }
  [[nodiscard]] std::span<const double> log_nu() const noexcept { return log_nu_; }

 private:
  Chain(BoundaryCase c, std::vector<double> log_mu, std::vector<double> log_nu);

  BoundaryCase case_;
  std::vector<double> log_mu_, log_nu_;
  std::vector<double> mu_, nu_;
};

/// Largest N accepted by the O(N) constructors.
inline constexpr std::size_t kMaxChainIndex = 100000;

/// mu_k = r^k, nu_k = a r^(k+1) over the case's index set.
Chain geometric_chain(double a, double r, std::size_t n, BoundaryCase c);
/// All-ones weights over the case's index set.
Chain uniform_chain(std::size_t n, BoundaryCase c);

/// Dual chain for the Hardy-constant duality.
///
/// DN on {1..N} -> ND on {0..N-1} with mu'_j = nu_{j+1}^(1-p*), nu'_j = mu_{j+1}^(1-p*),
/// so that lambda_p(DN)^(-1/p) = lambda_{p*}(dual)^(-1/p*). Applied to an ND chain
/// it is the inverse map (ND -> DN, same formula); calling it with p* undoes it.
Chain dual_chain(const Chain& chain, const Exponent& e);

/// nu_hat_j = nu_j^(1 - p*), linear and log.
struct NuHat {
  std::vector<double> nuhat;
  std::vector<double> log_nuhat;
};
NuHat nu_hat(const Chain& chain, const Exponent& e);

/// Cumulative sums used throughout, all indexed by storage position.
///
/// mu_sum[n]    : mu summed from n to the reflecting end, inclusive
///                (ND: mu[0,n], DN: mu[n,N]).
/// nuhat_sum[n] : nu_hat summed from n to the absorbing end, inclusive
///                (ND: nu_hat[n,N], DN: nu_hat[1,n]).
/// With these, sigma_p = sup_n mu_sum[n] * nuhat_sum[n]^(p-1) in both cases.
struct PartialSumTable {
  std::vector<double> log_mu_sum;
  std::vector<double> log_nuhat_sum;
  std::vector<double> mu_sum;
  std::vector<double> nuhat_sum;
};
PartialSumTable partial_sums(const Chain& chain, const Exponent& e);

/// D_p(f) with the case's boundary convention applied (ND: f_{N+1}=0, DN: f_0=0).
double dirichlet_form(const Chain& chain, const Exponent& e, std::span<const double> f);
/// sum_k mu_k |f_k|^p
double mu_norm_p(const Chain& chain, const Exponent& e, std::span<const double> f);

}  // namespace hardy
