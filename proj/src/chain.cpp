#include "hardy/chain.hpp"

#include <cmath>
#include <string>

#include "hardy/error.hpp"
#include "hardy/logspace.hpp"

namespace hardy {

std::string_view to_string(BoundaryCase c) noexcept { return c == BoundaryCase::ND ? "nd" : "dn"; }

BoundaryCase parse_boundary_case(std::string_view text) {
  if (text == "nd" || text == "ND") return BoundaryCase::ND;
  if (text == "dn" || text == "DN") return BoundaryCase::DN;
  throw InputError("boundary case must be \"nd\" or \"dn\", got \"" + std::string(text) + "\"");
}

Exponent::Exponent(double p) : p_(p) {
  if (!(p >= kMinP && p <= kMaxP)) {
    throw InputError("exponent p=" + std::to_string(p) +
                     " outside [1+1e-6, 1e6]; the degenerate cases p=1 and p=inf are excluded");
  }
  pstar_ = p / (p - 1.0);
  kp_ = p * std::exp((p - 1.0) * std::log(pstar_));
}

Chain::Chain(BoundaryCase c, std::vector<double> log_mu, std::vector<double> log_nu)
    : case_(c), log_mu_(std::move(log_mu)), log_nu_(std::move(log_nu)) {
  mu_.reserve(log_mu_.size());
  nu_.reserve(log_nu_.size());
  for (double x : log_mu_) mu_.push_back(exp_or_limit(x));
  for (double x : log_nu_) nu_.push_back(exp_or_limit(x));
}

std::size_t Chain::last_index() const noexcept {
  return case_ == BoundaryCase::ND ? size() - 1 : size();
}

namespace {

void check_shape(BoundaryCase c, std::size_t n_mu, std::size_t n_nu) {
  if (n_mu != n_nu) {
    throw InputError("mu and nu must have equal length (got " + std::to_string(n_mu) + " and " +
                     std::to_string(n_nu) + ")");
  }
  if (n_mu == 0) throw InputError("a chain needs at least one state");
  const std::size_t last = c == BoundaryCase::ND ? n_mu - 1 : n_mu;
  if (last > kMaxChainIndex) {
    throw InputError("chain index N=" + std::to_string(last) + " exceeds the cap " +
                     std::to_string(kMaxChainIndex));
  }
}

}  // namespace

Chain Chain::make(BoundaryCase c, std::span<const double> mu, std::span<const double> nu) {
  check_shape(c, mu.size(), nu.size());
  const std::size_t first = c == BoundaryCase::ND ? 0 : 1;
  std::vector<double> lmu(mu.size()), lnu(nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!(mu[i] > 0.0) || !std::isfinite(mu[i])) {
      throw InputError("nonpositive or non-finite weight mu at index " + std::to_string(i + first));
    }
    if (!(nu[i] > 0.0) || !std::isfinite(nu[i])) {
      throw InputError("nonpositive or non-finite weight nu at index " + std::to_string(i + first));
    }
    lmu[i] = std::log(mu[i]);
    lnu[i] = std::log(nu[i]);
  }
  return Chain(c, std::move(lmu), std::move(lnu));
}

Chain Chain::from_log_weights(BoundaryCase c, std::vector<double> log_mu, std::vector<double> log_nu) {
  check_shape(c, log_mu.size(), log_nu.size());
  const std::size_t first = c == BoundaryCase::ND ? 0 : 1;
  for (std::size_t i = 0; i < log_mu.size(); ++i) {
    if (!std::isfinite(log_mu[i]) || !std::isfinite(log_nu[i])) {
      throw InputError("non-finite log weight at index " + std::to_string(i + first));
    }
  }
  return Chain(c, std::move(log_mu), std::move(log_nu));
}

Chain geometric_chain(double a, double r, std::size_t n, BoundaryCase c) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("geometric chain needs a > 0");
  if (!(r > 1.0) || !std::isfinite(r)) throw InputError("geometric chain needs r > 1");
  if (c == BoundaryCase::DN && n == 0) throw InputError("a DN chain needs N >= 1");
  const std::size_t first = c == BoundaryCase::ND ? 0 : 1;
  const std::size_t count = n + 1 - first;
  const double lr = std::log(r), la = std::log(a);
  std::vector<double> lmu(count), lnu(count);
  for (std::size_t pos = 0; pos < count; ++pos) {
    const double k = static_cast<double>(pos + first);
    lmu[pos] = k * lr;
    lnu[pos] = la + (k + 1.0) * lr;
  }
  return Chain::from_log_weights(c, std::move(lmu), std::move(lnu));
}

Chain uniform_chain(std::size_t n, BoundaryCase c) {
  if (c == BoundaryCase::DN && n == 0) throw InputError("a DN chain needs N >= 1");
  const std::size_t count = c == BoundaryCase::ND ? n + 1 : n;
  return Chain::from_log_weights(c, std::vector<double>(count, 0.0), std::vector<double>(count, 0.0));
}

Chain dual_chain(const Chain& chain, const Exponent& e) {
  const double s = 1.0 - e.conjugate();
  std::vector<double> lmu(chain.size()), lnu(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    lmu[i] = s * chain.log_nu()[i];
    lnu[i] = s * chain.log_mu()[i];
  }
  const BoundaryCase target = chain.boundary() == BoundaryCase::DN ? BoundaryCase::ND : BoundaryCase::DN;
  return Chain::from_log_weights(target, std::move(lmu), std::move(lnu));
}

NuHat nu_hat(const Chain& chain, const Exponent& e) {
  NuHat out;
  const double s = 1.0 - e.conjugate();
  out.log_nuhat.reserve(chain.size());
  out.nuhat.reserve(chain.size());
  for (double lnu : chain.log_nu()) {
    out.log_nuhat.push_back(s * lnu);
    out.nuhat.push_back(exp_or_limit(s * lnu));
  }
  return out;
}

PartialSumTable partial_sums(const Chain& chain, const Exponent& e) {
  const NuHat nh = nu_hat(chain, e);
  PartialSumTable t;
  if (chain.boundary() == BoundaryCase::ND) {
    t.log_mu_sum = log_prefix_sums(chain.log_mu());
    t.log_nuhat_sum = log_suffix_sums(nh.log_nuhat);
  } else {
    t.log_mu_sum = log_suffix_sums(chain.log_mu());
    t.log_nuhat_sum = log_prefix_sums(nh.log_nuhat);
  }
  for (double x : t.log_mu_sum) t.mu_sum.push_back(exp_or_limit(x));
  for (double x : t.log_nuhat_sum) t.nuhat_sum.push_back(exp_or_limit(x));
  return t;
}

namespace {

void check_length(const Chain& chain, std::span<const double> f) {
  if (f.size() != chain.size()) {
    throw InputError("function has " + std::to_string(f.size()) + " entries but the chain has " +
                     std::to_string(chain.size()) + " states");
  }
}

}  // namespace

double dirichlet_form(const Chain& chain, const Exponent& e, std::span<const double> f) {
  check_length(chain, f);
  const auto nu = chain.nu();
  const std::size_t n = f.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double diff;
    if (chain.boundary() == BoundaryCase::ND) {
      diff = f[k] - (k + 1 < n ? f[k + 1] : 0.0);
    } else {
      diff = f[k] - (k > 0 ? f[k - 1] : 0.0);
    }
    if (diff != 0.0) sum += nu[k] * std::pow(std::fabs(diff), e.p());
  }
  return sum;
}

double mu_norm_p(const Chain& chain, const Exponent& e, std::span<const double> f) {
  check_length(chain, f);
  const auto mu = chain.mu();
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] != 0.0) sum += mu[k] * std::pow(std::fabs(f[k]), e.p());
  }
  return sum;
}

}  // namespace hardy
