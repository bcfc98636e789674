#include "hardy/family_scan.hpp"

#include <string>

#include "hardy/error.hpp"
#include "hardy/logspace.hpp"
#include "kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hardy {

namespace {

// Best value seen so far for each n, in log scale.
struct Best {
  std::vector<double> log_value;
  std::vector<ScanPair> at;

  explicit Best(std::size_t n_max) : log_value(n_max, kNegInf), at(n_max) {}

  void offer(std::size_t k, double v, ScanPair pair) {
    if (v > log_value[k] || (v == log_value[k] && earlier(pair, at[k]))) {
      log_value[k] = v;
      at[k] = pair;
    }
  }

  void merge(const Best& other) {
    for (std::size_t k = 0; k < log_value.size(); ++k) {
      if (other.log_value[k] != kNegInf) offer(k, other.log_value[k], other.at[k]);
    }
  }

  static bool earlier(ScanPair a, ScanPair b) { return a.ell != b.ell ? a.ell < b.ell : a.m < b.m; }
};

// Per-thread scratch, sized once.
struct Workspace {
  std::vector<double> log_f, log_step, log_B, log_F, log_nuhat_tail;

  explicit Workspace(std::size_t n) : log_f(n), log_step(n), log_B(n), log_F(n), log_nuhat_tail(n) {}
};

struct Context {
  const Chain& chain;
  const Exponent& e;
  NuHat nh;
  std::vector<double> log_nuhat_head;  // DN: log nu_hat[1, i]
  std::size_t n_max;
};

// log mu(f^p) - log D_p(f), with the drops (ND) or rises (DN) stored separately.
double log_rayleigh(const Context& ctx, const Workspace& ws, std::size_t f_len, std::size_t step_len) {
  const double p = ctx.e.p();
  LogAccumulator num, den;
  for (std::size_t i = 0; i < f_len; ++i) num.add(ctx.chain.log_mu()[i] + p * ws.log_f[i]);
  for (std::size_t i = 0; i < step_len; ++i) den.add(ctx.chain.log_nu()[i] + p * ws.log_step[i]);
  return num.log_value() - den.log_value();
}

// Prepares the nu_hat tail sums over {0..m} for every l <= m at once.
void nd_prepare_cut(const Context& ctx, Workspace& ws, std::size_t m) {
  LogAccumulator acc;
  for (std::size_t i = m + 1; i-- > 0;) {
    acc.add(ctx.nh.log_nuhat[i]);
    ws.log_nuhat_tail[i] = acc.log_value();
  }
}

void nd_member(const Context& ctx, Workspace& ws, std::size_t ell, std::size_t m, Best& dprime, Best& dbar) {
  const double pm1 = ctx.e.pm1();
  const std::size_t len = m + 1;
  for (std::size_t i = 0; i < len; ++i) {
    ws.log_f[i] = ws.log_nuhat_tail[i < ell ? ell : i];
    ws.log_step[i] = i < ell ? kNegInf : ctx.nh.log_nuhat[i];
  }
  const ScanPair pair{ell, m};
  for (std::size_t k = 0; k < ctx.n_max; ++k) {
    dbar.offer(k, log_rayleigh(ctx, ws, len, len), pair);
    detail::nd_double_sum(ctx.chain.log_mu(), ctx.nh.log_nuhat, pm1, ctx.e.pstar_m1(), ws.log_f, len, ws.log_B,
                          ws.log_F);
    double lowest = kPosInf;
    for (std::size_t i = 0; i < len; ++i) {
      const double v = pm1 * (ws.log_F[i] - ws.log_f[i]);
      if (v < lowest) lowest = v;
    }
    dprime.offer(k, lowest, pair);
    const double scale = ws.log_F[0];
    for (std::size_t i = 0; i < len; ++i) {
      ws.log_f[i] = ws.log_F[i] - scale;
      ws.log_step[i] = ws.log_B[i] - scale;
    }
  }
}

void dn_member(const Context& ctx, Workspace& ws, std::size_t m, Best& dprime, Best& dbar) {
  const double pm1 = ctx.e.pm1();
  const std::size_t n = ctx.chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    ws.log_f[i] = ctx.log_nuhat_head[i < m ? i : m];
    ws.log_step[i] = i <= m ? ctx.nh.log_nuhat[i] : kNegInf;
  }
  const ScanPair pair{0, m + 1};
  for (std::size_t k = 0; k < ctx.n_max; ++k) {
    dbar.offer(k, log_rayleigh(ctx, ws, n, m + 1), pair);
    detail::dn_double_sum(ctx.chain.log_mu(), ctx.nh.log_nuhat, pm1, ctx.e.pstar_m1(), ws.log_f, n, ws.log_B,
                          ws.log_F);
    double lowest = kPosInf;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = pm1 * (ws.log_F[i] - ws.log_f[i]);
      if (v < lowest) lowest = v;
    }
    dprime.offer(k, lowest, pair);
    const double scale = ws.log_F[m];
    for (std::size_t i = 0; i < n; ++i) {
      ws.log_f[i] = ws.log_F[i < m ? i : m] - scale;
      ws.log_step[i] = i <= m ? ws.log_B[i] - scale : kNegInf;
    }
  }
}

std::vector<std::size_t> cut_positions(const Chain& chain, const ScanOptions& opts) {
  if (opts.m_stride == 0) throw InputError("scan stride must be at least 1");
  if (opts.m_stride == 1 && chain.last_index() > opts.exhaustive_cap) {
    throw InputError("exhaustive family scan limited to N <= " + std::to_string(opts.exhaustive_cap) +
                     " (N=" + std::to_string(chain.last_index()) + "); raise the cap or use a stride");
  }
  std::vector<std::size_t> cuts;
  const std::size_t n = chain.size();
  for (std::size_t m = 0; m < n; m += opts.m_stride) cuts.push_back(m);
  if (cuts.back() != n - 1) cuts.push_back(n - 1);
  return cuts;
}

Context make_context(const Chain& chain, const Exponent& e, std::size_t n_max) {
  Context ctx{chain, e, nu_hat(chain, e), {}, n_max};
  if (chain.boundary() == BoundaryCase::DN) ctx.log_nuhat_head = log_prefix_sums(ctx.nh.log_nuhat);
  return ctx;
}

void scan_cut(const Context& ctx, Workspace& ws, std::size_t m, Best& dprime, Best& dbar) {
  if (ctx.chain.boundary() == BoundaryCase::ND) {
    nd_prepare_cut(ctx, ws, m);
    for (std::size_t ell = 0; ell <= m; ++ell) nd_member(ctx, ws, ell, m, dprime, dbar);
  } else {
    dn_member(ctx, ws, m, dprime, dbar);
  }
}

FamilyScan finish(const Best& dprime, const Best& dbar, bool exhaustive) {
  FamilyScan out;
  for (double v : dprime.log_value) out.delta_prime.push_back(exp_or_limit(v));
  for (double v : dbar.log_value) out.delta_bar.push_back(exp_or_limit(v));
  out.delta_prime_at = dprime.at;
  out.delta_bar_at = dbar.at;
  out.exhaustive = exhaustive;
  return out;
}

}  // namespace

FamilyScan scan_family_serial(const Chain& chain, const Exponent& e, std::size_t n_max, const ScanOptions& opts) {
  const std::vector<std::size_t> cuts = cut_positions(chain, opts);
  const Context ctx = make_context(chain, e, n_max);
  Workspace ws(chain.size());
  Best dprime(n_max), dbar(n_max);
  for (std::size_t m : cuts) scan_cut(ctx, ws, m, dprime, dbar);
  return finish(dprime, dbar, opts.m_stride == 1);
}

FamilyScan scan_family_parallel(const Chain& chain, const Exponent& e, std::size_t n_max,
                                const ScanOptions& opts) {
  const std::vector<std::size_t> cuts = cut_positions(chain, opts);
  const Context ctx = make_context(chain, e, n_max);
  Best dprime(n_max), dbar(n_max);
  const auto count = static_cast<std::ptrdiff_t>(cuts.size());
#pragma omp parallel
  {
    Workspace ws(chain.size());
    Best local_prime(n_max), local_bar(n_max);
    // Larger cuts cost more (ND: O(m^2) per cut), so hand them out first.
#pragma omp for schedule(dynamic, 1) nowait
    for (std::ptrdiff_t idx = count - 1; idx >= 0; --idx) {
      scan_cut(ctx, ws, cuts[static_cast<std::size_t>(idx)], local_prime, local_bar);
    }
#pragma omp critical(hardy_family_scan_merge)
    {
      dprime.merge(local_prime);
      dbar.merge(local_bar);
    }
  }
  return finish(dprime, dbar, opts.m_stride == 1);
}

}  // namespace hardy
