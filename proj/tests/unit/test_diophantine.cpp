#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qplab/diophantine.hpp"
#include "qplab/error.hpp"

using namespace qplab;

namespace {

double nearest_dist(double x) { return std::abs(x - std::round(x)); }

}  // namespace

TEST(ContinuedFraction, Golden) {
  const auto cf = cf_expand(enclose_golden(256), 30);
  EXPECT_EQ(cf.a0, 1);
  ASSERT_EQ(cf.quotients.size(), 30u);
  for (const auto& a : cf.quotients) EXPECT_EQ(a, 1);
  EXPECT_FALSE(cf.terminated);
}

TEST(ContinuedFraction, Sqrt2) {
  const auto cf = cf_expand(enclose_sqrt(2, 256), 30);
  EXPECT_EQ(cf.a0, 1);
  ASSERT_EQ(cf.quotients.size(), 30u);
  for (const auto& a : cf.quotients) EXPECT_EQ(a, 2);
}

TEST(ContinuedFraction, Rational) {
  const auto cf = cf_expand(Rational(649, 200), 30);
  EXPECT_EQ(cf.a0, 3);
  EXPECT_EQ(cf.quotients, (std::vector<BigInt>{4, 12, 4}));
  EXPECT_TRUE(cf.terminated);
  EXPECT_EQ(cf.convergents.back().p, 649);
  EXPECT_EQ(cf.convergents.back().q, 200);
  EXPECT_EQ(cf_value(cf), Rational(649, 200));
}

TEST(ContinuedFraction, ReconstructionRoundTrip) {
  for (const Rational x : {Rational(355, 113), Rational(-7, 3), Rational(1, 1000003), Rational(987, 610)}) {
    const auto cf = cf_expand(x, 100);
    EXPECT_TRUE(cf.terminated);
    EXPECT_EQ(cf_value(cf), x);
  }
}

TEST(ContinuedFraction, PrecisionExhausted) {
  try {
    cf_expand(enclose_golden(64), 200);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrecisionExhausted);
  }
  try {
    cf_expand(enclose(golden_ratio()), 200);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrecisionExhausted);
  }
}

TEST(ContinuedFraction, LiteralEnclosures) {
  const auto phi = enclose_literal("phi", 256);
  EXPECT_LT(phi.lo, phi.hi);
  const auto r = enclose_literal("649/200", 256);
  EXPECT_EQ(r.lo, r.hi);
  EXPECT_EQ(enclose_literal("3.245", 256).lo, Rational(649, 200));
}

TEST(Convergents, Examples) {
  const auto cf = cf_expand(enclose_golden(256), 10);
  const auto c = convergents(cf, 4);
  const std::vector<std::pair<int, int>> expected{{1, 1}, {2, 1}, {3, 2}, {5, 3}, {8, 5}};
  ASSERT_EQ(c.size(), expected.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_EQ(c[k].p, expected[k].first);
    EXPECT_EQ(c[k].q, expected[k].second);
  }
  const auto zero = convergents(cf_expand(Rational(649, 200), 10), 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].p, 3);
  EXPECT_EQ(zero[0].q, 1);
  try {
    convergents(cf, 11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Badness, Examples) {
  const std::vector<Real> half{Real(0.5)};
  const auto r = badness_score(half, 2);
  EXPECT_EQ(r.score, 0.0);
  EXPECT_EQ(r.argmin_q, 2u);

  const std::vector<Real> phi{golden_ratio()};
  const auto b = badness_score(phi, 100000);
  EXPECT_NEAR(b.score, 0.38196601125010515, 1e-12);
  EXPECT_EQ(b.argmin_q, 1u);

  const std::vector<Real> root2{sqrt_real(2)};
  const auto c = badness_score(root2, 100000);
  EXPECT_NEAR(c.score, 0.34314575050761980, 1e-12);
  EXPECT_EQ(c.argmin_q, 2u);
}

TEST(Badness, MonotoneInQ) {
  const std::vector<Real> alpha{golden_ratio(), sqrt_real(3)};
  double prev = 1e9;
  for (std::uint64_t Q : {1u, 10u, 100u, 1000u, 10000u}) {
    const double s = badness_score(alpha, Q).score;
    EXPECT_LE(s, prev);
    prev = s;
  }
}

TEST(Badness, BoundedQuotientsStayBounded) {
  const std::vector<Real> phi{golden_ratio()};
  const std::vector<Real> root2{sqrt_real(2)};
  EXPECT_GT(badness_score(phi, 1000000).score, 0.3);
  EXPECT_GT(badness_score(root2, 1000000).score, 0.3);
  const std::vector<Real> pi_trunc{parse_real_expression("3.14159292")};
  EXPECT_LT(badness_score(pi_trunc, 1000).score, 0.01);
}

TEST(Badness, Budget) {
  const std::vector<Real> phi{golden_ratio()};
  try {
    badness_score(phi, 1000, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
  }
}

TEST(SimultaneousDenominator, Examples) {
  const std::vector<Real> phi{golden_ratio()};
  EXPECT_EQ(best_simultaneous_denominator(phi, 0.01, 1000), 55u);
  const std::vector<Real> third{Real(1) / 3};
  EXPECT_EQ(best_simultaneous_denominator(third, 0.001, 1000), 3u);
  EXPECT_FALSE(best_simultaneous_denominator(phi, 0.01, 50).has_value());
}

TEST(SimultaneousDenominator, PairMatchesBruteForce) {
  const std::vector<Real> alpha{golden_ratio(), sqrt_real(2)};
  const double p = (1 + std::sqrt(5.0)) / 2, r = std::sqrt(2.0);
  std::uint64_t brute = 0;
  for (std::uint64_t q = 1; q <= 1000 && !brute; ++q)
    if (nearest_dist(q * p) <= 0.05 && nearest_dist(q * r) <= 0.05) brute = q;
  EXPECT_EQ(brute, 157u);
  EXPECT_EQ(best_simultaneous_denominator(alpha, 0.05, 1000), brute);
}

TEST(Kronecker, Examples) {
  const Real two_pi = two_pi_real();
  const std::vector<Real> zero_k{Real(0), Real(0)};
  const std::vector<Real> lambda{two_pi, two_pi * golden_ratio()};
  const auto z = kronecker_solve(lambda, zero_k, 0.1, 10);
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ(z->t, 0.0);

  const std::vector<Real> one{Real(1)};
  const std::vector<Real> pi_k{pi_real()};
  const auto s = kronecker_solve(one, pi_k, 0.1, 10);
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(s->t, std::numbers::pi, 0.1);

  const std::vector<Real> kappa{Real(0), pi_real()};
  const auto sol = kronecker_solve(lambda, kappa, 0.3, 1000);
  ASSERT_TRUE(sol.has_value());
  for (double r : kronecker_residuals(lambda, kappa, sol->t)) EXPECT_LT(r, 0.3);
  const auto at17 = kronecker_residuals(lambda, kappa, 17.0);
  EXPECT_NEAR(at17[0], 0.0, 1e-12);
  EXPECT_NEAR(at17[1], 0.041329591280205622, 1e-12);
}

TEST(Kronecker, NotFoundIsAValue) {
  const std::vector<Real> lambda{Real(1)};
  const std::vector<Real> kappa{pi_real()};
  EXPECT_FALSE(kronecker_solve(lambda, kappa, 0.01, 1.0).has_value());
}
