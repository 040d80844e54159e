#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qplab/error.hpp"
#include "qplab/signal.hpp"

using namespace qplab;

namespace {

constexpr double kPi = std::numbers::pi;
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

QuasiperiodicSignal unit_circle() { return *preset("periodic"); }
QuasiperiodicSignal golden() { return *preset("golden"); }

}  // namespace

TEST(Evaluate, Examples) {
  EXPECT_NEAR(std::abs(evaluate(unit_circle(), 0.0) - std::complex<double>(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(evaluate(golden(), 0.0) - std::complex<double>(2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(evaluate(unit_circle(), 0.5) - std::complex<double>(-1, 0)), 0.0, 1e-15);
}

TEST(TranslationDistance, Examples) {
  EXPECT_NEAR(translation_distance(unit_circle(), 0.5), 2.0, 1e-15);
  EXPECT_EQ(translation_distance(golden(), 0.0), 0.0);
  // 50-digit reference value
  EXPECT_NEAR(translation_distance(golden(), 55.0), 0.051080629292787536, 1e-14);
}

TEST(TranslationDistance, EvenAndBounded) {
  const auto f = golden();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double tau = u(rng);
    EXPECT_NEAR(translation_distance(f, tau), translation_distance(f, -tau), 1e-12);
    EXPECT_LE(translation_distance(f, tau), 2.0 * f.amplitude_sum() + 1e-15);
  }
}

TEST(TranslationDistance, LipschitzBound) {
  const auto f = *preset("sqrt23");
  const double C = lipschitz_constant(f);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 500), h(-0.01, 0.01);
  for (int k = 0; k < 2000; ++k) {
    const double a = u(rng), b = a + h(rng);
    EXPECT_LE(std::abs(translation_distance(f, a) - translation_distance(f, b)), C * std::abs(a - b) + 1e-12);
  }
}

TEST(TranslationDistance, DominatesPointwiseDifference) {
  const auto f = parse_signal_spec("1+0.5i@1.3,0.2-1i@-2.7,3+0i@sqrt2");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 100);
  for (int k = 0; k < 1000; ++k) {
    const double tau = u(rng), t = u(rng);
    EXPECT_LE(std::abs(evaluate(f, t + tau) - evaluate(f, t)), translation_distance(f, tau) + 1e-12);
  }
}

TEST(Lipschitz, Examples) {
  EXPECT_NEAR(lipschitz_constant(unit_circle()), 2 * kPi, 1e-14);
  EXPECT_NEAR(lipschitz_constant(golden()), 2 * kPi * (1 + kPhi), 1e-13);
  EXPECT_NEAR(lipschitz_constant(parse_signal_spec("3+0i@1")), 3.0, 1e-15);
}

TEST(SupOracle, Examples) {
  EXPECT_EQ(sup_oracle(golden(), 0.0, 10.0, 0.1), 0.0);
  EXPECT_NEAR(sup_oracle(unit_circle(), 0.5, 1.0, 1e-3), 2.0, 1e-4);
  const double s = sup_oracle(golden(), 55.0, 1e4, 0.01);
  EXPECT_GE(s, 0.051 * (1 - 1e-2));
  EXPECT_LE(s, 0.0511);
}

TEST(SupOracle, NeverExceedsClosedForm) {
  const auto f = golden();
  for (double tau : {0.3, 7.77, 21.01, 34.0, 88.5}) {
    // equality is attained at t = 0 for integer tau; allow rounding
    const double d = translation_distance(f, tau);
    EXPECT_LE(sup_oracle(f, tau, 2000.0, 0.05), d * (1 + 1e-15));
  }
}

TEST(SupOracle, BudgetCap) {
  OracleOptions options;
  options.max_grid_points = 1000;
  try {
    sup_oracle(golden(), 1.0, 1e4, 1.0, options);
    sup_oracle(golden(), 1.0, 1e4, 0.1, options);
    FAIL() << "expected a budget error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
  }
}

TEST(Signal, Validation) {
  const std::complex<double> one{1, 0};
  EXPECT_THROW(QuasiperiodicSignal({}), Error);
  EXPECT_THROW(QuasiperiodicSignal({{{0, 0}, Real(1)}}), Error);
  EXPECT_THROW(QuasiperiodicSignal({{one, Real(0)}}), Error);
  EXPECT_THROW(QuasiperiodicSignal({{one, Real(2)}, {one, Real(2)}}), Error);
}

TEST(ParseSignalSpec, Presets) {
  const auto f = parse_signal_spec("golden");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(static_cast<double>(f.terms()[0].exponent), 2 * kPi, 1e-15);
  EXPECT_NEAR(static_cast<double>(f.terms()[1].exponent), 2 * kPi * kPhi, 1e-14);
  EXPECT_EQ(parse_signal_spec("sqrt23").size(), 3u);
  EXPECT_EQ(parse_signal_spec("golden1").size(), 2u);
}

TEST(ParseSignalSpec, Literal) {
  const auto f = parse_signal_spec("1+0i@6.28,2-1i@1.0");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.terms()[0].amplitude, std::complex<double>(1, 0));
  EXPECT_EQ(f.terms()[1].amplitude, std::complex<double>(2, -1));
  EXPECT_EQ(static_cast<double>(f.terms()[0].exponent), 6.28);
  EXPECT_EQ(static_cast<double>(f.terms()[1].exponent), 1.0);
}

TEST(ParseSignalSpec, Errors) {
  try {
    parse_signal_spec("0+0i@1.0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("zero amplitude"), std::string::npos);
  }
  try {
    parse_signal_spec("1+0i@6.28,2-1x@1.0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.position(), 10u);
  }
  EXPECT_THROW(parse_signal_spec(""), ParseError);
  EXPECT_THROW(parse_signal_spec("nosuchpreset"), ParseError);
  EXPECT_THROW(parse_signal_spec("1+0i@"), ParseError);
}

TEST(IntegerRelation, DetectsCommensurable) {
  const auto rel = find_integer_relation(parse_signal_spec("1+0i@2pi,1+0i@3*2pi"));
  ASSERT_TRUE(rel.has_value());
  EXPECT_EQ((*rel)[0] + 3 * (*rel)[1], 0);
  EXPECT_NE((*rel)[0], 0);
  EXPECT_FALSE(find_integer_relation(golden()).has_value());
  EXPECT_FALSE(find_integer_relation(*preset("sqrt23")).has_value());
}
