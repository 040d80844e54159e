#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qplab/dimension.hpp"
#include "qplab/error.hpp"

using namespace qplab;

namespace {

constexpr double kPi = std::numbers::pi;

QuasiperiodicSignal golden() { return *preset("golden"); }
QuasiperiodicSignal unit_circle() { return *preset("periodic"); }

std::vector<double> dyadic(int from, int to) {
  std::vector<double> eps;
  for (int k = from; k <= to; ++k) eps.push_back(std::ldexp(1.0, -k));
  return eps;
}

}  // namespace

TEST(OrbitAngles, Examples) {
  const auto zero = orbit_angles(golden(), 0.0);
  for (double a : zero.angles) EXPECT_EQ(a, 0.0);
  EXPECT_NEAR(orbit_angles(unit_circle(), 0.25).angles[0], kPi / 2, 1e-15);
  const auto one = orbit_angles(golden(), 1.0);
  EXPECT_NEAR(one.angles[0], 0.0, 1e-15);
  EXPECT_NEAR(one.angles[1], 3.8832220774509332, 1e-14);
}

TEST(TorusMetric, Examples) {
  const TorusPoint a(std::vector<double>{0.3, 1.2});
  EXPECT_EQ(torus_metric(a, a), 0.0);
  EXPECT_NEAR(torus_metric(TorusPoint({0.0}), TorusPoint({kPi})), kPi, 1e-15);
  EXPECT_NEAR(torus_metric(TorusPoint({0.1, 6.2}), TorusPoint({0.0, 0.0})), 0.1, 1e-15);
  EXPECT_THROW(torus_metric(TorusPoint({0.0}), TorusPoint({0.0, 0.0})), Error);
}

TEST(HullMetric, Examples) {
  const auto f = golden();
  const TorusPoint a(std::vector<double>{0.3, 1.2});
  EXPECT_EQ(hull_metric(f, a, a), 0.0);
  EXPECT_NEAR(hull_metric(unit_circle(), TorusPoint({0.0}), TorusPoint({kPi})), 2.0, 1e-15);
  const TorusPoint origin(std::vector<double>{0.0, 0.0});
  EXPECT_NEAR(hull_metric(f, orbit_angles(f, 55.0), origin), 0.051080629292787536, 1e-12);
  EXPECT_THROW(hull_metric(f, TorusPoint({0.0}), origin), Error);
}

TEST(HullMetric, MatchesTranslationDistance) {
  const auto f = parse_signal_spec("1+0.5i@1.3,0.2-1i@-2.7,3+0i@sqrt2");
  const TorusPoint origin(std::vector<double>(3, 0.0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 100);
  for (int k = 0; k < 10000; ++k) {
    const double tau = u(rng);
    EXPECT_NEAR(translation_distance(f, tau), hull_metric(f, orbit_angles(f, tau), origin), 1e-12);
  }
}

TEST(Metrics, Axioms) {
  const auto f = golden();
  const HullMetric hull(f);
  const SupTorusMetric sup(2);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int k = 0; k < 5000; ++k) {
    const std::vector<double> x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)};
    for (const TorusMetric* m : {static_cast<const TorusMetric*>(&hull), static_cast<const TorusMetric*>(&sup)}) {
      EXPECT_NEAR(m->distance(x, y), m->distance(y, x), 1e-15);
      EXPECT_LE(m->distance(x, z), m->distance(x, y) + m->distance(y, z) + 1e-12);
      EXPECT_GT(m->distance(x, y), 0.0);
    }
    const double rho = sup.distance(x, y);
    const double d = hull.distance(x, y);
    EXPECT_LE(d, hull.torus_lipschitz() * rho + 1e-12);
    EXPECT_LE(rho, hull.torus_radius(d) + 1e-12);
  }
}

TEST(EquivalenceConstants, Circle) {
  const auto c = equivalence_constants(unit_circle(), 20000, 1);
  EXPECT_GT(c.c1, 0.0);
  EXPECT_GE(c.c1, 2 / kPi - 0.01);
  EXPECT_LE(c.c2, 1 + 0.01);
  EXPECT_LE(c.c1, c.c2);
}

TEST(EquivalenceConstants, GoldenStable) {
  const auto coarse = equivalence_constants(golden(), 20000, 7, 5);
  const auto fine = equivalence_constants(golden(), 20000, 7, 20);
  EXPECT_GT(fine.c1, 0.0);
  EXPECT_LE(fine.c1, fine.c2);
  EXPECT_NEAR(fine.c1 / coarse.c1, 1.0, 0.2);
  for (int k : {5, 10, 20}) {
    const auto r = near_diagonal_ratio(golden(), std::ldexp(1.0, -k), 2000, 3);
    EXPECT_GE(r.c1, fine.c1 - 1e-9);
  }
}

TEST(Covering, SinglePoint) {
  const PointCloud one({TorusPoint({1.0, 2.0})}, 0.0);
  for (double r : {0.01, 1.0}) {
    const auto c = covering_number(one, SupTorusMetric(2), r);
    EXPECT_EQ(c.cover_upper, 1u);
    EXPECT_EQ(c.packing_lower, 1u);
  }
}

TEST(Covering, Circle) {
  const TorusGrid grid(1, 4096);
  const auto c = covering_number(grid, SupTorusMetric(1), kPi / 4);
  EXPECT_GE(c.cover_upper, 4u);
  EXPECT_LE(c.cover_upper, 5u);
  EXPECT_EQ(c.packing_lower, 4u);
}

TEST(Covering, TwoTorus) {
  const TorusGrid grid(2, 64);
  const auto c = covering_number(grid, SupTorusMetric(2), kPi / 2);
  EXPECT_GE(c.cover_upper, 4u);
  EXPECT_LE(c.cover_upper, 9u);
  EXPECT_LE(c.packing_lower, c.cover_upper);
}

TEST(Covering, GridTooCoarse) {
  try {
    covering_number(TorusGrid(1, 8), SupTorusMetric(1), 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridTooCoarse);
  }
}

TEST(DimensionFit, Synthetic) {
  CoveringReport r;
  for (int k = 1; k <= 6; ++k) {
    const double e = std::pow(10.0, -k);
    r.eps.push_back(e);
    const auto n = static_cast<std::uint64_t>(std::ceil(1 / e));
    r.counts.push_back({n, n});
  }
  const auto fit = dimension_fit(r);
  EXPECT_NEAR(fit.upper_dim, 1.0, 1e-6);
  EXPECT_NEAR(fit.lower_dim, 1.0, 1e-6);
  r.eps.resize(3);
  r.counts.resize(3);
  try {
    dimension_fit(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooFewScales);
  }
}

TEST(DimensionFit, CircleArcMetric) {
  const auto eps = dyadic(2, 8);
  const auto r = torus_covering_report(SupTorusMetric(1), eps);
  EXPECT_NEAR(r.upper_dim, 1.0, 0.1);
  EXPECT_NEAR(r.lower_dim, 1.0, 0.1);
  EXPECT_TRUE(counts_monotone(r));
  EXPECT_TRUE(packing_sandwich_holds(r));
}

TEST(DimensionFit, SingleTermHull) {
  const auto r = torus_covering_report(HullMetric(unit_circle()), dyadic(2, 7));
  EXPECT_NEAR(r.upper_dim, 1.0, 0.1);
  EXPECT_NEAR(r.lower_dim, 1.0, 0.1);
}

TEST(DimensionFit, GoldenHull) {
  const auto r = torus_covering_report(HullMetric(golden()), dyadic(2, 7));
  EXPECT_NEAR(r.upper_dim, 2.0, 0.2);
  EXPECT_NEAR(r.lower_dim, 2.0, 0.2);
  EXPECT_TRUE(counts_monotone(r));
  EXPECT_TRUE(packing_sandwich_holds(r));
}

TEST(Segments, SingleTermMatchesGrid) {
  const auto f = unit_circle();
  const auto grid = covering_number(TorusGrid::for_radius(1, f.amplitude_sum(), 1.0), HullMetric(f), 1.0);
  EXPECT_EQ(segment_cover_count(f, 1.0, 2.0), grid.cover_upper);
}

TEST(Sandwich, Golden) {
  for (double eps : {0.4, 0.2}) {
    const auto r = sandwich_checks(golden(), eps);
    EXPECT_TRUE(r.sandwich_lower) << eps;
    EXPECT_TRUE(r.sandwich_upper) << eps;
    EXPECT_TRUE(r.count_bound) << eps;
    EXPECT_LE(r.n_ap_double, r.n_ap);
    EXPECT_LE(r.n_ap, r.n_ap_half);
  }
}
