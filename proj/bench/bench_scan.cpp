// Serial vs OpenMP family scan: wall time and a bitwise comparison of results.
//
//   hardy_bench [N] [iters] [reps]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "hardy/family_scan.hpp"

using namespace hardy;

namespace {

Chain random_chain(BoundaryCase c, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(std::log(1e-3), std::log(1e3));
  const std::size_t len = c == BoundaryCase::ND ? n + 1 : n;
  std::vector<double> a(len), b(len);
  for (auto& x : a) x = u(rng);
  for (auto& x : b) x = u(rng);
  return Chain::from_log_weights(c, a, b);
}

bool same_bits(const std::vector<double>& x, const std::vector<double>& y) {
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

template <class F>
double best_seconds(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200;
  const std::size_t iters = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 3;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 3;

  std::printf("threads %d, N %zu, iters %zu, best of %d\n", omp_get_max_threads(), n, iters, reps);
  std::printf("%-4s %6s %12s %12s %8s %s\n", "case", "p", "serial_s", "parallel_s", "speedup", "bitwise");
  bool all_same = true;
  for (BoundaryCase c : {BoundaryCase::ND, BoundaryCase::DN}) {
    const Chain chain = random_chain(c, n, 12345);
    for (double p : {1.5, 3.0}) {
      const Exponent e(p);
      FamilyScan s, q;
      const double ts = best_seconds(reps, [&] { s = scan_family_serial(chain, e, iters); });
      const double tq = best_seconds(reps, [&] { q = scan_family_parallel(chain, e, iters); });
      const bool same = same_bits(s.delta_prime, q.delta_prime) && same_bits(s.delta_bar, q.delta_bar) &&
                        s.delta_prime_at == q.delta_prime_at && s.delta_bar_at == q.delta_bar_at;
      all_same = all_same && same;
      std::printf("%-4s %6.2f %12.4f %12.4f %8.2f %s\n", c == BoundaryCase::ND ? "nd" : "dn", p, ts, tq, ts / tq,
                  same ? "yes" : "NO");
    }
  }
  return all_same ? 0 : 1;
}
