#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qplab/almost_periods.hpp"
#include "qplab/error.hpp"

using namespace qplab;

namespace {

QuasiperiodicSignal golden() { return *preset("golden"); }
QuasiperiodicSignal unit_circle() { return *preset("periodic"); }

bool covered(const std::vector<Interval>& v, double x) {
  for (const auto& iv : v)
    if (iv.contains(x)) return true;
  return false;
}

// Largest gap of {tau : D(tau) < eps} sampled at `h`, window edges included.
double brute_gap(const QuasiperiodicSignal& f, double eps, double lo, double hi, double h) {
  double last = lo, gap = 0.0;
  const auto n = static_cast<long>((hi - lo) / h);
  for (long i = 0; i <= n; ++i) {
    const double t = lo + i * h;
    if (translation_distance(f, t) < eps) {
      gap = std::max(gap, t - last);
      last = t;
    }
  }
  return std::max(gap, hi - last);
}

}  // namespace

TEST(Scan, CertifiedStep) {
  const auto f = golden();
  EXPECT_DOUBLE_EQ(max_certified_step(f, 0.1), 0.1 / (4 * lipschitz_constant(f)));
  try {
    sublevel_scan(f, 0.1, {0, 10}, 2 * max_certified_step(f, 0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StepTooCoarse);
  }
}

TEST(Scan, BudgetCap) {
  ScanOptions options;
  options.max_grid_points = 1000;
  try {
    sublevel_scan(golden(), 0.1, {0, 1000}, max_certified_step(golden(), 0.1), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
  }
}

TEST(Scan, SingleTermIntervals) {
  const auto f = unit_circle();
  const double eps = 0.1;
  const double h = max_certified_step(f, eps);
  const auto s = sublevel_scan(f, eps, {0, 3}, h);
  // 2|sin(pi tau)| < 0.1  <=>  |tau - k| < asin(0.05)/pi
  const double w = std::asin(0.05) / std::numbers::pi;
  EXPECT_NEAR(w, 0.0159, 1e-4);
  ASSERT_EQ(s.outer.size(), 4u);
  for (int k = 0; k <= 3; ++k) {
    const auto& iv = s.outer[k];
    EXPECT_LE(iv.lo, std::max(0.0, k - w));
    EXPECT_GE(iv.hi, std::min(3.0, k + w));
    EXPECT_GE(iv.lo, k - w - 2 * h);
    EXPECT_LE(iv.hi, k + w + 2 * h);
  }
  for (const auto& iv : s.inner) {
    const double k = std::round(0.5 * (iv.lo + iv.hi));
    EXPECT_GE(iv.lo, std::max(0.0, k - w));
    EXPECT_LE(iv.hi, k + w);
  }
}

TEST(Scan, Certification) {
  const auto f = *preset("sqrt23");
  const double eps = 0.3;
  const auto s = sublevel_scan(f, eps, {0, 60}, max_certified_step(f, eps));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 60);
  for (int k = 0; k < 200000; ++k) {
    const double t = u(rng);
    const double d = translation_distance(f, t);
    if (d < eps) EXPECT_TRUE(covered(s.outer, t)) << t;
    if (covered(s.inner, t)) EXPECT_LT(d, eps) << t;
  }
}

TEST(Scan, SkipMatchesExhaustive) {
  const auto f = golden();
  const double h = max_certified_step(f, 0.1);
  ScanOptions exhaustive;
  exhaustive.exhaustive = true;
  const auto a = sublevel_scan(f, 0.1, {0, 200}, h);
  const auto b = sublevel_scan(f, 0.1, {0, 200}, h, exhaustive);
  ASSERT_EQ(a.inner.size(), b.inner.size());
  ASSERT_EQ(a.outer.size(), b.outer.size());
  for (std::size_t i = 0; i < a.outer.size(); ++i) {
    EXPECT_EQ(a.outer[i].lo, b.outer[i].lo);
    EXPECT_EQ(a.outer[i].hi, b.outer[i].hi);
  }
  for (std::size_t i = 0; i < a.inner.size(); ++i) {
    EXPECT_EQ(a.inner[i].lo, b.inner[i].lo);
    EXPECT_EQ(a.inner[i].hi, b.inner[i].hi);
  }
  EXPECT_LT(a.evaluations, b.evaluations);
}

TEST(Scan, LargeEpsCoversWindow) {
  const auto f = golden();
  const auto s = sublevel_scan(f, 4.5, {0, 50}, max_certified_step(f, 4.5));
  ASSERT_EQ(s.inner.size(), 1u);
  EXPECT_EQ(s.inner[0].lo, 0.0);
  EXPECT_EQ(s.inner[0].hi, 50.0);
  const auto L = inclusion_length(s);
  EXPECT_EQ(L.lower, 0.0);
  EXPECT_EQ(L.upper, 0.0);
}

TEST(Scan, GoldenTenth) {
  const auto f = golden();
  const auto s = sublevel_scan(f, 0.1, {0, 200}, max_certified_step(f, 0.1));
  for (double t : {0.0, 34.0, 55.0, 89.0, 144.0, 178.0, 199.0, 21.01})
    EXPECT_TRUE(covered(s.outer, t)) << t;
  // Real almost periods off the integers: D(21.01) < 0.1.
  EXPECT_LT(translation_distance(f, 21.01), 0.1);
  const auto L = inclusion_length(s);
  const double brute = brute_gap(f, 0.1, 0, 200, 1e-4);
  EXPECT_LE(L.lower, brute);
  EXPECT_GE(L.upper, brute);
  EXPECT_NEAR(L.lower, 20.99, 0.01);
  EXPECT_NEAR(L.upper, 33.98, 0.01);
}

TEST(InclusionLength, Edges) {
  IntervalSet s;
  s.window = {0, 100};
  s.inner = {{0, 0}};
  s.outer = {{0, 0}};
  const auto L = inclusion_length(s);
  EXPECT_EQ(L.lower, 100.0);
  EXPECT_EQ(L.upper, 100.0);
  s.inner = {{0, 100}};
  s.outer = {{0, 100}};
  EXPECT_EQ(inclusion_length(s).upper, 0.0);
  s.outer.clear();
  try {
    inclusion_length(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySet);
  }
}

TEST(LatticeInclusionLength, GoldenTenth) {
  EXPECT_EQ(lattice_inclusion_length(golden(), 0.1, 200), 55.0);
}

TEST(LengthCurve, Periodic) {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const auto c = length_curve(unit_circle(), eps);
  ASSERT_EQ(c.samples.size(), 3u);
  for (const auto& s : c.samples) {
    EXPECT_TRUE(s.resolved);
    EXPECT_LE(s.L_lower, 1.0);
    EXPECT_NEAR(s.L_upper, 1.0, 0.1);
  }
  EXPECT_LT(std::abs(fit_exponent(c).slope), 0.1);
}

TEST(LengthCurve, LargeEps) {
  const std::vector<double> eps{5.0};
  const auto c = length_curve(golden(), eps);
  EXPECT_TRUE(c.samples[0].resolved);
  EXPECT_EQ(c.samples[0].L_upper, 0.0);
}

TEST(LengthCurve, Validation) {
  const std::vector<double> rising{0.1, 0.2};
  EXPECT_THROW(length_curve(golden(), rising), Error);
  const std::vector<double> negative{0.1, -0.2};
  EXPECT_THROW(length_curve(golden(), negative), Error);
  EXPECT_THROW(geometric_eps(0.4, 0, 2), Error);
  const auto g = geometric_eps(0.4, 8, 2);
  ASSERT_EQ(g.size(), 8u);
  EXPECT_DOUBLE_EQ(g.back(), 0.4 / 128);
}

TEST(LengthCurve, BudgetMarksUnresolved) {
  WindowPolicy policy;
  policy.scan.max_grid_points = 20000;
  const std::vector<double> eps{0.4, 0.01};
  const auto c = length_curve(golden(), eps, policy);
  EXPECT_TRUE(c.samples[0].resolved);
  EXPECT_FALSE(c.samples[1].resolved);
}

TEST(LengthCurve, GoldenSlope) {
  const auto eps = geometric_eps(0.4, 8, 2);
  const auto fit = fit_exponent(length_curve(golden(), eps));
  EXPECT_GE(fit.slope, 0.85);
  EXPECT_LE(fit.slope, 1.15);
  EXPECT_EQ(fit.samples_used, 8u);
}

TEST(FitExponent, ExactPowerLaw) {
  LengthCurve c;
  for (double e : {1e-1, 1e-2, 1e-3}) c.samples.push_back({e, 1 / (e * e), 1 / (e * e), 0, true});
  const auto fit = fit_exponent(c);
  EXPECT_NEAR(fit.slope, 2.0, 1e-9);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-9);
  c.samples.pop_back();
  try {
    fit_exponent(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooFewSamples);
  }
}
