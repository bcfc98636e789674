#pragma once

// Log-domain arithmetic for positive quantities.
//
// Every accumulation in this library is a sum of positive terms whose
// magnitudes can span thousands of decades (nu^(1-p*) with p close to 1 on
// a geometric chain, for example), so values are carried as natural logs
// and only exponentiated at the reporting boundary.

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace hardy {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)); either argument may be -inf.
inline double log_add(double a, double b) noexcept {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

/// log(exp(a) - exp(b)) for a >= b. Returns -inf when a == b and NaN when a < b.
inline double log_sub(double a, double b) noexcept {
  if (b == kNegInf) return a;
  if (a < b) return std::numeric_limits<double>::quiet_NaN();
  if (a == b) return kNegInf;
  const double d = b - a;
  // log1p(-e^d) loses accuracy near d = 0; log(-expm1(d)) does not.
  return a + (d > -0.6931471805599453 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d)));
}

/// Running sum of positive terms given by their logs.
///
/// Keeps the largest term as the pivot so each update is a bounded
/// exponential; the result is exact to a few ulps regardless of dynamic range.
class LogAccumulator {
 public:
  void add(double log_term) noexcept {
    if (log_term == kNegInf) return;
    if (pivot_ == kNegInf) {
      pivot_ = log_term;
      scaled_ = 1.0;
    } else if (log_term <= pivot_) {
      scaled_ += std::exp(log_term - pivot_);
    } else {
      scaled_ = scaled_ * std::exp(pivot_ - log_term) + 1.0;
      pivot_ = log_term;
    }
  }

  [[nodiscard]] double log_value() const noexcept {
    return pivot_ == kNegInf ? kNegInf : pivot_ + std::log(scaled_);
  }

 private:
  double pivot_ = kNegInf;
  double scaled_ = 0.0;
};

/// log of sum(exp(x)) over a range.
inline double log_sum(std::span<const double> logs) noexcept {
  LogAccumulator acc;
  for (double x : logs) acc.add(x);
  return acc.log_value();
}

/// Inclusive prefix log-sums: out[i] = log(sum_{j<=i} exp(x_j)).
inline std::vector<double> log_prefix_sums(std::span<const double> logs) {
  std::vector<double> out(logs.size());
  LogAccumulator acc;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    acc.add(logs[i]);
    out[i] = acc.log_value();
  }
  return out;
}

/// Inclusive suffix log-sums: out[i] = log(sum_{j>=i} exp(x_j)).
inline std::vector<double> log_suffix_sums(std::span<const double> logs) {
  std::vector<double> out(logs.size());
  LogAccumulator acc;
  for (std::size_t i = logs.size(); i-- > 0;) {
    acc.add(logs[i]);
    out[i] = acc.log_value();
  }
  return out;
}

/// exp that reports overflow as +inf and underflow as 0 without raising.
inline double exp_or_limit(double x) noexcept {
  if (x > 709.78) return kPosInf;
  if (x < -745.2) return 0.0;
  return std::exp(x);
}

/// True when |a - b| <= rel * max(|a|, |b|).
inline bool close_rel(double a, double b, double rel) noexcept {
  if (a == b) return true;
  return std::fabs(a - b) <= rel * std::fmax(std::fabs(a), std::fabs(b));
}

}  // namespace hardy
