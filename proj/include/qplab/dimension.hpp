#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qplab/almost_periods.hpp"
#include "qplab/signal.hpp"

namespace qplab {

/// Point of T^n = R^n / 2pi Z^n, angles folded into [0, 2pi).
struct TorusPoint {
  std::vector<double> angles;

  TorusPoint() = default;
  explicit TorusPoint(std::vector<double> raw);
  std::size_t dim() const noexcept { return angles.size(); }
};

/// Angle coordinates of the translate f_s: lambda_j s mod 2pi.
TorusPoint orbit_angles(const QuasiperiodicSignal& f, double s);

/// max_j min(|x_j - y_j|, 2pi - |x_j - y_j|)
double torus_metric(const TorusPoint& x, const TorusPoint& y);

/// sum_j |A_j| |e^{i x_j} - e^{i y_j}|: the sup-norm distance of the
/// corresponding hull elements.
double hull_metric(const QuasiperiodicSignal& f, const TorusPoint& x, const TorusPoint& y);

/// A metric on T^n together with its comparison to rho_T.
class TorusMetric {
 public:
  virtual ~TorusMetric() = default;
  virtual std::size_t dim() const = 0;
  virtual double distance(std::span<const double> x, std::span<const double> y) const = 0;
  /// K with d(x, y) <= K rho_T(x, y).
  virtual double torus_lipschitz() const = 0;
  /// R with d(x, y) <= r  =>  rho_T(x, y) <= R.
  virtual double torus_radius(double r) const = 0;
};

/// rho_T itself (on T^1 this is arc length).
class SupTorusMetric final : public TorusMetric {
 public:
  explicit SupTorusMetric(std::size_t n) : n_(n) {}
  std::size_t dim() const override { return n_; }
  double distance(std::span<const double> x, std::span<const double> y) const override;
  double torus_lipschitz() const override { return 1.0; }
  double torus_radius(double r) const override;

 private:
  std::size_t n_;
};

/// rho' of a signal.
class HullMetric final : public TorusMetric {
 public:
  explicit HullMetric(const QuasiperiodicSignal& f);
  std::size_t dim() const override { return weights_.size(); }
  double distance(std::span<const double> x, std::span<const double> y) const override;
  double torus_lipschitz() const override { return total_; }
  double torus_radius(double r) const override;

 private:
  std::vector<double> weights_;  // 2|A_j|
  double total_ = 0.0;           // sum |A_j|
};

/// Finite sample of a subset X of T^n, visited in a fixed order.
class TorusSample {
 public:
  virtual ~TorusSample() = default;
  virtual std::size_t dim() const = 0;
  virtual std::uint64_t size() const = 0;
  virtual void point(std::uint64_t i, std::span<double> out) const = 0;
  /// Every point of X lies within this rho_T distance of the sample.
  virtual double resolution() const = 0;
};

/// Product grid with `per_axis` points per axis, last axis varying fastest.
class TorusGrid final : public TorusSample {
 public:
  TorusGrid(std::size_t n, std::uint64_t per_axis);
  /// Coarsest grid dense enough for radius-r covers under a metric with
  /// torus Lipschitz constant K: spacing <= r / (2K).
  static TorusGrid for_radius(std::size_t n, double K, double r);

  std::size_t dim() const override { return n_; }
  std::uint64_t size() const override { return size_; }
  void point(std::uint64_t i, std::span<double> out) const override;
  double resolution() const override;
  std::uint64_t per_axis() const noexcept { return per_axis_; }

 private:
  std::size_t n_;
  std::uint64_t per_axis_;
  std::uint64_t size_;
};

/// The orbit segment {orbit_angles(f, s) : s in [s_lo, s_hi]} sampled at `step`.
class OrbitSegment final : public TorusSample {
 public:
  OrbitSegment(const QuasiperiodicSignal& f, double s_lo, double s_hi, double step);
  /// Step dense enough for radius-r covers under rho'.
  static double step_for_radius(const QuasiperiodicSignal& f, double r);

  std::size_t dim() const override { return f_->size(); }
  std::uint64_t size() const override { return size_; }
  void point(std::uint64_t i, std::span<double> out) const override;
  double resolution() const override;

 private:
  const QuasiperiodicSignal* f_;
  double s_lo_, s_hi_, step_;
  std::uint64_t size_;
};

/// Explicit points with a caller-declared resolution.
class PointCloud final : public TorusSample {
 public:
  PointCloud(std::vector<TorusPoint> points, double resolution);
  std::size_t dim() const override { return dim_; }
  std::uint64_t size() const override { return points_.size(); }
  void point(std::uint64_t i, std::span<double> out) const override;
  double resolution() const override { return resolution_; }

 private:
  std::vector<TorusPoint> points_;
  std::size_t dim_ = 0;
  double resolution_;
};

struct CoverCounts {
  /// Greedy cover of the sample by closed radius-r balls centred in it.
  std::uint64_t cover_upper = 0;
  /// Greedy subset with pairwise distances >= 2r.
  std::uint64_t packing_lower = 0;
};

struct CoverOptions {
  bool check_density = true;
  std::uint64_t max_points = 400'000'000;
};

/// Throws Error(GridTooCoarse) unless K * resolution <= r / 4.
CoverCounts covering_number(const TorusSample& sample, const TorusMetric& metric, double r,
                            const CoverOptions& options = {});

struct CoveringReport {
  std::vector<double> eps;  ///< decreasing
  std::vector<CoverCounts> counts;
  std::vector<std::uint64_t> sample_sizes;
  double lower_dim = 0.0;
  double upper_dim = 0.0;
};

struct DimensionFit {
  double lower_dim = 0.0;
  double upper_dim = 0.0;
};

/// Slopes of ln(count) against ln(1/eps): packing for the lower estimate,
/// cover for the upper. Throws Error(TooFewScales) below 4 scales.
DimensionFit dimension_fit(const CoveringReport& report);

/// Covers T^n under `metric` at each eps with grids from the density rule
/// (or a fixed per-axis count when `per_axis` is nonzero), then fits.
CoveringReport torus_covering_report(const TorusMetric& metric, std::span<const double> eps,
                                     std::uint64_t per_axis = 0, const CoverOptions& options = {});

/// Count checks: non-increasing in eps and packing(2 eps) <= cover(eps).
bool counts_monotone(const CoveringReport& report);
bool packing_sandwich_holds(const CoveringReport& report);

struct EquivalenceConstants {
  double c1 = 0.0;  ///< min of rho'/rho_T over sampled pairs
  double c2 = 0.0;  ///< max of rho'/rho_T over sampled pairs
  std::size_t pairs = 0;
};

/// Half the pairs are uniform on T^n x T^n; the other half are near-diagonal
/// pairs at sup-distance 2^-k, k cycling through 1..finest_scale_exponent.
EquivalenceConstants equivalence_constants(const QuasiperiodicSignal& f, std::size_t sample_count,
                                           std::uint64_t seed, int finest_scale_exponent = 20);

/// Ratio extremes over near-diagonal pairs at exactly sup-distance `scale`.
EquivalenceConstants near_diagonal_ratio(const QuasiperiodicSignal& f, double scale,
                                         std::size_t sample_count, std::uint64_t seed);

struct SandwichOptions {
  double slack = 2.0;
  WindowPolicy window;
  CoverOptions cover;
};

struct SandwichReport {
  double eps = 0.0;
  double L_quarter = 0.0;  ///< L(eps/4)
  double L_half = 0.0;     ///< L(eps/2)
  double L_full = 0.0;     ///< L(eps)
  double delta_half = 0.0; ///< delta(eps/2) = (eps/2) / C
  std::uint64_t n_ap = 0;        ///< N^{a.p.}_eps
  std::uint64_t n_ap_double = 0; ///< N^{a.p.}_{2 eps}
  std::uint64_t n_ap_half = 0;   ///< N^{a.p.}_{eps/2}
  std::uint64_t n_hull = 0;      ///< N_eps(H(f)) via the torus grid
  std::uint64_t n_hull_packing = 0;
  double count_bound_value = 0.0;     ///< 2 L(eps/2) / delta(eps/2) + 1
  bool sandwich_lower = false;     ///< N^{a.p.}_{2eps} <= slack * N_eps(H)
  bool sandwich_upper = false;     ///< N_eps(H) <= slack * N^{a.p.}_{eps/2}
  bool count_bound = false;           ///< N^{a.p.}_eps <= slack * bound
  bool ok() const noexcept { return sandwich_lower && sandwich_upper && count_bound; }
};

/// N^{a.p.}_r: cover count of the orbit segment [-L, L] under rho', with L
/// an inclusion length for r/2. The sample is covered in lexicographic order.
std::uint64_t segment_cover_count(const QuasiperiodicSignal& f, double r, double inclusion_length,
                                  const CoverOptions& options = {});

SandwichReport sandwich_checks(const QuasiperiodicSignal& f, double eps, const SandwichOptions& options = {});

}  // namespace qplab
