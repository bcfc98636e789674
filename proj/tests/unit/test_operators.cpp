#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/dn_estimators.hpp"
#include "hardy/eigensolver.hpp"
#include "hardy/error.hpp"
#include "hardy/nd_estimators.hpp"
#include "hardy/random_functions.hpp"
#include "oracles.hpp"

using namespace hardy;
using doctest::Approx;
using FC = FunctionClass;

namespace {

TestFunction tf(std::vector<double> v, FC c, std::optional<std::size_t> m = std::nullopt) {
  return TestFunction{std::move(v), c, m};
}

}  // namespace

TEST_CASE("operator I on a small uniform chain") {
  const Chain c = uniform_chain(2, BoundaryCase::ND);
  const auto I = operator_I(c, Exponent(2), tf({3, 2, 1}, FC::F_I));
  REQUIRE(I.size() == 3);
  CHECK(I[0] == Approx(3));
  CHECK(I[1] == Approx(5));
  CHECK(I[2] == Approx(6));
  CHECK_THROWS_AS(operator_I(c, Exponent(2), tf({1, 2, 1}, FC::F_I)), InputError);
  CHECK_THROWS_AS(operator_I(c, Exponent(2), tf({1, 1, 1}, FC::F_II)), InputError);
}

TEST_CASE("operator II on small chains") {
  const auto II = operator_II(uniform_chain(1, BoundaryCase::ND), Exponent(2), tf({1, 1}, FC::F_II));
  REQUIRE(II.size() == 2);
  CHECK(II[0] == Approx(3));
  CHECK(II[1] == Approx(2));
  const auto one = operator_II(uniform_chain(0, BoundaryCase::ND), Exponent(2), tf({1}, FC::F_II));
  CHECK(one[0] == Approx(1));
  CHECK_THROWS_AS(operator_II(uniform_chain(1, BoundaryCase::ND), Exponent(2), tf({1, 0}, FC::F_II)), InputError);
}

TEST_CASE("operator R on small chains") {
  const auto r0 = operator_R(uniform_chain(0, BoundaryCase::ND), Exponent(2), tf({0}, FC::W));
  CHECK(r0[0] == Approx(1));
  const auto r1 = operator_R(uniform_chain(1, BoundaryCase::ND), Exponent(2), tf({0.5, 0}, FC::W));
  CHECK(r1[0] == Approx(0.5));
  CHECK(r1[1] == Approx(0).epsilon(1e-15));
  CHECK_THROWS_AS(operator_R(uniform_chain(1, BoundaryCase::ND), Exponent(2), tf({1.5, 0}, FC::W)), InputError);
}

TEST_CASE("DN single-state operators") {
  const std::vector<double> two{2}, three{3};
  const Chain c = Chain::make(BoundaryCase::DN, two, three);
  for (double f1 : {0.1, 1.0, 17.0}) {
    CHECK(operator_I(c, Exponent(2.5), tf({f1}, FC::F_I))[0] == Approx(2.0 / 3.0));
  }
  CHECK(operator_R(c, Exponent(2), tf({5}, FC::W))[0] == Approx(1.5));
  CHECK_THROWS_AS(operator_R(uniform_chain(3, BoundaryCase::DN), Exponent(2), tf({0.5, 2, 2}, FC::W)), InputError);
}

TEST_CASE("operators agree with direct sums on random chains") {
  std::mt19937_64 rng(77);
  for (BoundaryCase bc : {BoundaryCase::ND, BoundaryCase::DN}) {
    for (double p : {1.3, 2.0, 3.5}) {
      const Exponent e(p);
      const Chain c = oracle::random_chain(bc, 12, 1000 + static_cast<unsigned>(p * 10), 0.1, 10.0);
      const TestFunction fi = random_member(c, e, FC::F_I, rng);
      const TestFunction fii = random_member(c, e, FC::F_II, rng);
      const TestFunction w = random_member(c, e, FC::W, rng);
      const auto I = operator_I(c, e, fi), Io = oracle::op_I(c, p, fi.values);
      const auto II = operator_II(c, e, fii), IIo = oracle::op_II(c, p, fii.values, c.size());
      const auto R = operator_R(c, e, w), Ro = oracle::op_R(c, p, w.values);
      for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(I[i] == Approx(Io[i]).epsilon(1e-11));
        CHECK(II[i] == Approx(IIo[i]).epsilon(1e-11));
        CHECK(R[i] == Approx(Ro[i]).epsilon(1e-9).scale(std::fabs(c.nu()[i] / c.mu()[i])));
      }
      const TestFunction t2 = random_member(c, e, FC::TildeF_II, rng);
      const auto IIt = operator_II(c, e, t2);
      const std::size_t len = bc == BoundaryCase::ND ? *t2.support_end + 1 : c.size();
      const auto IIto = oracle::op_II(c, p, t2.values, len);
      REQUIRE(IIt.size() == len);
      for (std::size_t i = 0; i < len; ++i) CHECK(IIt[i] == Approx(IIto[i]).epsilon(1e-11));
    }
  }
}

TEST_CASE("I and II are degree-0 homogeneous") {
  std::mt19937_64 rng(5);
  for (BoundaryCase bc : {BoundaryCase::ND, BoundaryCase::DN}) {
    const Chain c = oracle::random_chain(bc, 30, 8);
    const Exponent e(2.7);
    for (FC cls : {FC::F_I, FC::F_II, FC::TildeF_I}) {
      TestFunction f = random_member(c, e, cls, rng);
      TestFunction g = f;
      for (double& x : g.values) x *= 123.456;
      const auto a = operator_II(c, e, f), b = operator_II(c, e, g);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == Approx(a[i]).epsilon(1e-12));
      if (cls != FC::F_II) {
        const auto ia = operator_I(c, e, f), ib = operator_I(c, e, g);
        for (std::size_t i = 0; i < ia.size(); ++i) {
          if (std::isinf(ia[i])) {
            CHECK(std::isinf(ib[i]));
          } else {
            CHECK(ib[i] == Approx(ia[i]).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("the eigenfunction is a fixed point of every operator") {
  for (BoundaryCase bc : {BoundaryCase::ND, BoundaryCase::DN}) {
    for (double p : {1.5, 2.0, 4.0}) {
      const Chain c = oracle::random_chain(bc, 15, 40, 0.2, 5.0);
      const Exponent e(p);
      const EigenSolution s = solve(c, e);
      const auto I = operator_I(c, e, tf(s.g, FC::F_I));
      const auto II = operator_II(c, e, tf(s.g, FC::F_II));
      std::vector<double> w(c.size());
      if (bc == BoundaryCase::ND) {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) w[i] = s.g[i + 1] / s.g[i];
        w.back() = 0.0;
      } else {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) w[i] = s.g[i + 1] / s.g[i];
        w.back() = 2.0;  // ignored: nu_{N+1} = 0
      }
      const auto R = operator_R(c, e, tf(w, FC::W));
      for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(I[i] == Approx(1.0 / s.lambda).epsilon(1e-8));
        CHECK(II[i] == Approx(1.0 / s.lambda).epsilon(1e-8));
        CHECK(R[i] == Approx(s.lambda).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("DN modified R at the cut uses the tail mass") {
  const Chain c = oracle::random_chain(BoundaryCase::DN, 12, 21, 0.5, 2.0);
  const Exponent e(2.5);
  for (std::size_t m : {1u, 4u, 8u, 12u}) {
    const EigenSolution s = solve(truncated_chain(c, m), e);
    std::vector<double> w(c.size(), 1.0);
    for (std::size_t i = 0; i + 1 < m; ++i) w[i] = s.g[i + 1] / s.g[i];
    const auto R = operator_R(c, e, tf(w, FC::TildeW, m));
    for (std::size_t i = 0; i < m; ++i) CHECK(R[i] == Approx(s.lambda).epsilon(1e-6));
    for (std::size_t i = m; i < c.size(); ++i) CHECK(R[i] == 0.0);
    // Below the cut it coincides with the plain difference form.
    const auto Ro = oracle::op_R(c, e.p(), w);
    for (std::size_t i = 0; i + 1 < m; ++i) CHECK(R[i] == Approx(Ro[i]).epsilon(1e-9));
    const Certificate cert = bound_from_test_function_dn(c, e, OperatorKind::R, tf(w, FC::TildeW, m), Side::Upper);
    CHECK(cert.bound >= solve(c, e).lambda * (1 - 1e-9));
  }
}

TEST_CASE("class predicates") {
  const Chain nd = uniform_chain(3, BoundaryCase::ND);
  const Chain dn = uniform_chain(3, BoundaryCase::DN);
  const Exponent e(2);
  CHECK(!class_violation(nd, e, tf({4, 3, 2, 1}, FC::F_I)));
  CHECK(class_violation(nd, e, tf({4, 3, 3, 1}, FC::F_I)));
  CHECK(!class_violation(dn, e, tf({1, 2, 3}, FC::F_I)));
  CHECK(class_violation(dn, e, tf({3, 2, 1}, FC::F_I)));
  CHECK(!class_violation(nd, e, tf({2, 2, 1, 0}, FC::TildeF_I, 2)));
  CHECK(class_violation(nd, e, tf({2, 2, 1, 0.5}, FC::TildeF_I, 2)));
  CHECK_THROWS_AS(class_violation(nd, e, tf({2, 2, 1, 0}, FC::TildeF_I)), InputError);
  CHECK(!class_violation(dn, e, tf({1, 2, 2}, FC::TildeF_I, 2)));
  CHECK(class_violation(dn, e, tf({1, 2, 3}, FC::TildeF_II, 2)));
  CHECK(class_violation(dn, e, tf({1, 2, 3}, FC::TildePrimeF_I, 3)));
  CHECK(!class_violation(nd, e, tf({0.5, 0.5, 0.5, 0}, FC::W)));
  CHECK(class_violation(nd, e, tf({0.5, 1.0, 0.5, 0}, FC::W)));
  CHECK(!class_violation(dn, e, tf({2, 2, 7}, FC::W)));
  CHECK(class_violation(dn, e, tf({2, 1, 7}, FC::W)));
  // nd W-tilde: each ratio must keep R positive.
  CHECK(!class_violation(nd, e, tf({0.9, 0.6, 0, 0}, FC::TildeW, 2)));
  CHECK(class_violation(nd, e, tf({0.4, 0.5, 0, 0}, FC::TildeW, 2)));
  CHECK(class_violation(nd, e, tf({0.5, 0.5, 0, 0}, FC::Unclassified)));
}

TEST_CASE("random members land in their class") {
  std::mt19937_64 rng(99);
  for (BoundaryCase bc : {BoundaryCase::ND, BoundaryCase::DN}) {
    for (double p : {1.2, 2.0, 6.0}) {
      const Exponent e(p);
      for (std::uint64_t s = 0; s < 5; ++s) {
        const Chain c = oracle::random_chain(bc, 1 + 7 * s, s);
        for (FC cls : {FC::F_I, FC::F_II, FC::TildeF_I, FC::TildeF_II, FC::TildePrimeF_II, FC::W, FC::TildeW}) {
          for (int t = 0; t < 10; ++t) CHECK(!class_violation(c, e, random_member(c, e, cls, rng)));
        }
        if (bc == BoundaryCase::ND) CHECK(!class_violation(c, e, random_member(c, e, FC::TildePrimeF_I, rng)));
      }
    }
  }
}

TEST_CASE("certificates from test functions") {
  const Chain c = uniform_chain(40, BoundaryCase::ND);
  const Exponent e(2);
  const double lam = oracle::uniform_nd_lambda2(40);
  const NuHat h = nu_hat(c, e);
  std::vector<double> f1(c.size());
  double tail = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    tail += h.nuhat[i];
    f1[i] = std::pow(tail, 1.0 / e.conjugate());
  }
  const Certificate lower = bound_from_test_function_nd(c, e, OperatorKind::II, tf(f1, FC::F_I), Side::Lower);
  CHECK(lower.bound == Approx(1.0 / delta_seq_nd(c, e, 1)[0]).epsilon(1e-12));
  CHECK(lower.bound <= lam);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const TestFunction f = random_member(c, e, FC::F_I, rng);
    CHECK(bound_from_test_function_nd(c, e, OperatorKind::I, f, Side::Lower).bound <= lam + 1e-12);
  }

  // W-tilde from the eigenfunction of a truncation is an upper certificate.
  for (std::size_t m : {5u, 20u, 39u}) {
    const EigenSolution s = solve(truncated_chain(c, m), e);
    std::vector<double> w(c.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) w[i] = s.g[i + 1] / s.g[i];
    const Certificate up = bound_from_test_function_nd(c, e, OperatorKind::R, tf(w, FC::TildeW, m), Side::Upper);
    CHECK(up.bound >= lam - 1e-12);
  }

  CHECK_THROWS_AS(bound_from_test_function_nd(c, e, OperatorKind::I, tf(f1, FC::F_I), Side::Upper), InputError);
  CHECK_THROWS_AS(bound_from_test_function_nd(uniform_chain(3, BoundaryCase::DN), e, OperatorKind::I,
                                              tf({1, 2, 3}, FC::F_I), Side::Lower),
                  InputError);
}
