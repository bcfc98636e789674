#include "hardy/random_functions.hpp"

#include <cmath>
#include <string>

#include "hardy/error.hpp"

namespace hardy {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

double open_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = 0.0;
  while (x <= 0.0 || x >= 1.0) x = u(rng);
  return x;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Strictly monotone positive run of `len` values, increasing along the run.
std::vector<double> increasing_run(std::mt19937_64& rng, std::size_t len) {
  std::vector<double> v(len);
  double x = log_uniform(rng, 1e-2, 1.0);
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = x;
    x += x * log_uniform(rng, 1e-2, 2.0);
  }
  return v;
}

TestFunction nd_member(const Chain& chain, const Exponent& e, FunctionClass cls, std::mt19937_64& rng) {
  const std::size_t n = chain.size();
  TestFunction f{std::vector<double>(n, 0.0), cls, std::nullopt};
  auto decreasing_on = [&](std::size_t from, std::size_t to) {  // [from, to], strictly decreasing
    const std::vector<double> run = increasing_run(rng, to - from + 1);
    for (std::size_t i = from; i <= to; ++i) f.values[i] = run[to - i];
  };
  switch (cls) {
    case FunctionClass::F_I:
      decreasing_on(0, n - 1);
      break;
    case FunctionClass::F_II:
    case FunctionClass::TildePrimeF_II:
      for (double& x : f.values) x = log_uniform(rng, 1e-3, 1e3);
      break;
    case FunctionClass::TildeF_I: {
      const std::size_t m = uniform_index(rng, 0, n - 1);
      const std::size_t plateau = uniform_index(rng, 0, m);
      decreasing_on(plateau, m);
      for (std::size_t i = 0; i < plateau; ++i) f.values[i] = f.values[plateau];
      f.support_end = m;
      break;
    }
    case FunctionClass::TildePrimeF_I: {
      const std::size_t m = uniform_index(rng, 0, n - 1);
      decreasing_on(0, m);
      f.support_end = m;
      break;
    }
    case FunctionClass::TildeF_II: {
      const std::size_t m = uniform_index(rng, 0, n - 1);
      for (std::size_t i = 0; i <= m; ++i) f.values[i] = log_uniform(rng, 1e-3, 1e3);
      f.support_end = m;
      break;
    }
    case FunctionClass::W:
      for (std::size_t i = 0; i + 1 < n; ++i) f.values[i] = open_unit(rng);
      break;
    case FunctionClass::TildeW: {
      // w_i must keep R_i > 0: 1 - w_i > c_i = (nu_{i-1}/nu_i)^(p*-1) (1/w_{i-1} - 1),
      // and to keep step i+1 feasible, w_i > 1 / (1 + (nu_{i+1}/nu_i)^(p*-1)).
      std::size_t m = uniform_index(rng, 0, n - 1);
      const double q = e.pstar_m1();
      for (std::size_t i = 0; i < m; ++i) {
        const double c =
            i == 0 ? 0.0 : std::exp(q * (chain.log_nu()[i - 1] - chain.log_nu()[i])) * (1.0 / f.values[i - 1] - 1.0);
        const double hi = 1.0 - c;
        const double lo = 1.0 / (1.0 + std::exp(q * (chain.log_nu()[i + 1] - chain.log_nu()[i])));
        const double w = lo + (hi - lo) * open_unit(rng);
        if (!(hi > lo) || !(w > lo) || !(w < hi) || !(w < 1.0)) {
          m = i;
          break;
        }
        f.values[i] = w;
      }
      for (std::size_t i = m; i < n; ++i) f.values[i] = 0.0;
      f.support_end = m;
      break;
    }
    case FunctionClass::Unclassified:
      throw InputError("cannot draw from an unclassified set");
  }
  return f;
}

TestFunction dn_member(const Chain& chain, const Exponent& e, FunctionClass cls, std::mt19937_64& rng) {
  const std::size_t n = chain.size();
  TestFunction f{std::vector<double>(n, 0.0), cls, std::nullopt};
  switch (cls) {
    case FunctionClass::F_I:
      f.values = increasing_run(rng, n);
      break;
    case FunctionClass::F_II:
    case FunctionClass::TildePrimeF_II:
      for (double& x : f.values) x = log_uniform(rng, 1e-3, 1e3);
      break;
    case FunctionClass::TildeF_I:
    case FunctionClass::TildeF_II: {
      const std::size_t m = uniform_index(rng, 1, n);
      if (cls == FunctionClass::TildeF_I) {
        const std::vector<double> run = increasing_run(rng, m);
        for (std::size_t i = 0; i < m; ++i) f.values[i] = run[i];
      } else {
        for (std::size_t i = 0; i < m; ++i) f.values[i] = log_uniform(rng, 1e-3, 1e3);
      }
      for (std::size_t i = m; i < n; ++i) f.values[i] = f.values[m - 1];
      f.support_end = m;
      break;
    }
    case FunctionClass::TildePrimeF_I:
      throw InputError("class TildePrimeF_I is defined for ND chains only");
    case FunctionClass::W:
      for (std::size_t i = 0; i < n; ++i) f.values[i] = 1.0 + log_uniform(rng, 1e-3, 1e3);
      break;
    case FunctionClass::TildeW: {
      // positions below m-1 carry 1 < w_i < 1 + (nu_i/nu_{i+1})^(p*-1) (1 - 1/w_{i-1}).
      std::size_t m = uniform_index(rng, 1, n);
      const double q = e.pstar_m1();
      for (std::size_t i = 0; i + 1 < m; ++i) {
        const double prev = i == 0 ? 1.0 : 1.0 - 1.0 / f.values[i - 1];
        const double cap = std::exp(q * (chain.log_nu()[i] - chain.log_nu()[i + 1])) * prev;
        const double w = 1.0 + cap * open_unit(rng);
        if (!(w > 1.0) || !std::isfinite(w) || !(w - 1.0 < cap)) {
          m = i + 1;
          break;
        }
        f.values[i] = w;
      }
      for (std::size_t i = m - 1; i < n; ++i) f.values[i] = 1.0;
      f.support_end = m;
      break;
    }
    case FunctionClass::Unclassified:
      throw InputError("cannot draw from an unclassified set");
  }
  return f;
}

}  // namespace

TestFunction random_member(const Chain& chain, const Exponent& e, FunctionClass cls, std::mt19937_64& rng) {
  TestFunction f = chain.boundary() == BoundaryCase::ND ? nd_member(chain, e, cls, rng) : dn_member(chain, e, cls, rng);
  require_class(chain, e, f);
  return f;
}

}  // namespace hardy
