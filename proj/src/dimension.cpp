#include "qplab/dimension.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "qplab/error.hpp"

namespace qplab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fold_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circle_distance(double x, double y) {
  const double d = std::abs(x - y);
  const double r = std::fmod(d, kTwoPi);
  return std::min(r, kTwoPi - r);
}

void require_dims(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                "torus points of dimension " + std::to_string(a) + " and " + std::to_string(b));
}

// Centres bucketed by torus cell; a cell is at least `radius` wide, so every
// centre within rho_T <= radius of a point sits in a neighbouring cell.
class CenterIndex {
 public:
  CenterIndex(std::size_t n, double radius) : n_(n) {
    const double want = radius > 0.0 ? std::floor(kTwoPi / radius) : 1.0;
    const double max_m = std::floor(std::pow(2.0, 60.0 / static_cast<double>(n)));
    m_ = static_cast<std::uint64_t>(std::clamp(want, 1.0, max_m));
    cell_ = kTwoPi / static_cast<double>(m_);
    const double cells = std::pow(static_cast<double>(m_), static_cast<double>(n));
    if (cells <= static_cast<double>(1 << 22)) dense_.resize(static_cast<std::size_t>(cells));
  }

  void insert(std::span<const double> p) {
    const auto id = static_cast<std::uint32_t>(coords_.size() / n_);
    coords_.insert(coords_.end(), p.begin(), p.end());
    bucket(key(p)).push_back(id);
    ++count_;
  }

  std::uint64_t count() const noexcept { return count_; }

  template <class Pred>
  bool any(std::span<const double> p, Pred&& within) const {
    // Candidate cells per axis: own cell first, then its two neighbours.
    const std::size_t reach = m_ >= 3 ? 3 : static_cast<std::size_t>(m_);
    std::array<std::array<std::uint64_t, 3>, 16> cand{};
    for (std::size_t j = 0; j < n_; ++j) {
      const std::uint64_t c = cell_of(p[j]);
      if (reach == 3) cand[j] = {c, (c + m_ - 1) % m_, (c + 1) % m_};
      else cand[j] = {0, 1, 2};
    }
    std::array<std::size_t, 16> odo{};
    while (true) {
      std::uint64_t k = 0;
      for (std::size_t j = n_; j-- > 0;) k = k * m_ + cand[j][odo[j]];
      if (const auto* ids = find(k)) {
        for (auto id : *ids) {
          if (within(std::span<const double>(coords_.data() + std::size_t{id} * n_, n_))) return true;
        }
      }
      std::size_t j = 0;
      for (; j < n_; ++j) {
        if (++odo[j] < reach) break;
        odo[j] = 0;
      }
      if (j == n_) return false;
    }
  }

 private:
  std::uint64_t cell_of(double a) const {
    auto c = static_cast<std::uint64_t>(a / cell_);
    return c >= m_ ? m_ - 1 : c;
  }
  std::uint64_t key(std::span<const double> p) const {
    std::uint64_t k = 0;
    for (std::size_t j = n_; j-- > 0;) k = k * m_ + cell_of(p[j]);
    return k;
  }
  std::vector<std::uint32_t>& bucket(std::uint64_t k) {
    if (!dense_.empty()) return dense_[k];
    return sparse_[k];
  }
  const std::vector<std::uint32_t>* find(std::uint64_t k) const {
    if (!dense_.empty()) return dense_[k].empty() ? nullptr : &dense_[k];
    auto it = sparse_.find(k);
    return it == sparse_.end() ? nullptr : &it->second;
  }

  std::size_t n_;
  std::uint64_t m_ = 1;
  double cell_ = kTwoPi;
  std::vector<double> coords_;
  std::vector<std::vector<std::uint32_t>> dense_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> sparse_;
  std::uint64_t count_ = 0;
};

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  return sxy / sxx;
}

}  // namespace

TorusPoint::TorusPoint(std::vector<double> raw) : angles(std::move(raw)) {
  for (auto& a : angles) a = fold_angle(a);
}

TorusPoint orbit_angles(const QuasiperiodicSignal& f, double s) {
  TorusPoint p;
  p.angles.resize(f.size());
  const Real sr(s);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Real x = f.turns(j) * sr;
    p.angles[j] = fold_angle(kTwoPi * static_cast<double>(x - boost::multiprecision::floor(x)));
  }
  return p;
}

double torus_metric(const TorusPoint& x, const TorusPoint& y) {
  require_dims(x.dim(), y.dim());
  return SupTorusMetric(x.dim()).distance(x.angles, y.angles);
}

double hull_metric(const QuasiperiodicSignal& f, const TorusPoint& x, const TorusPoint& y) {
  require_dims(x.dim(), y.dim());
  require_dims(x.dim(), f.size());
  return HullMetric(f).distance(x.angles, y.angles);
}

double SupTorusMetric::distance(std::span<const double> x, std::span<const double> y) const {
  double d = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) d = std::max(d, circle_distance(x[j], y[j]));
  return d;
}

double SupTorusMetric::torus_radius(double r) const { return std::min(r, std::numbers::pi); }

HullMetric::HullMetric(const QuasiperiodicSignal& f) {
  for (std::size_t j = 0; j < f.size(); ++j) weights_.push_back(2.0 * f.abs_amplitude(j));
  total_ = f.amplitude_sum();
}

double HullMetric::distance(std::span<const double> x, std::span<const double> y) const {
  double d = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j)
    d += weights_[j] * std::abs(std::sin(0.5 * (x[j] - y[j])));
  return d;
}

double HullMetric::torus_radius(double r) const {
  // |A_j| 2 sin(d_j / 2) <= r bounds d_j on its own.
  double radius = 0.0;
  for (double w : weights_) {
    if (r >= w) return std::numbers::pi;
    radius = std::max(radius, 2.0 * std::asin(r / w));
  }
  return std::min(std::numbers::pi, radius * (1.0 + 1e-12));
}

TorusGrid::TorusGrid(std::size_t n, std::uint64_t per_axis) : n_(n), per_axis_(per_axis) {
  if (n == 0 || n > 16) throw Error(ErrorKind::InvalidArgument, "torus dimension must be 1..16");
  if (per_axis == 0) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point per axis");
  const double total = std::pow(static_cast<double>(per_axis), static_cast<double>(n));
  if (total > 1e18) throw Error(ErrorKind::Budget, "torus grid too large");
  size_ = 1;
  for (std::size_t j = 0; j < n; ++j) size_ *= per_axis;
}

TorusGrid TorusGrid::for_radius(std::size_t n, double K, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  const double m = std::ceil(2.0 * kTwoPi * K / r);
  if (m > 1e9) throw Error(ErrorKind::Budget, "grid for radius " + std::to_string(r) + " too fine");
  return TorusGrid(n, std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m)));
}

void TorusGrid::point(std::uint64_t i, std::span<double> out) const {
  const double spacing = kTwoPi / static_cast<double>(per_axis_);
  for (std::size_t j = n_; j-- > 0;) {
    out[j] = static_cast<double>(i % per_axis_) * spacing;
    i /= per_axis_;
  }
}

double TorusGrid::resolution() const { return std::numbers::pi / static_cast<double>(per_axis_); }

OrbitSegment::OrbitSegment(const QuasiperiodicSignal& f, double s_lo, double s_hi, double step)
    : f_(&f), s_lo_(s_lo), s_hi_(s_hi), step_(step) {
  if (!(s_hi >= s_lo) || !(step > 0.0))
    throw Error(ErrorKind::InvalidArgument, "orbit segment needs s_lo <= s_hi and step > 0");
  const double span = (s_hi - s_lo) / step;
  if (span > 1e12) throw Error(ErrorKind::Budget, "orbit segment sample too large");
  size_ = static_cast<std::uint64_t>(std::ceil(span)) + 1;
}

double OrbitSegment::step_for_radius(const QuasiperiodicSignal& f, double r) {
  return r / (2.0 * f.amplitude_sum() * f.max_abs_exponent());
}

void OrbitSegment::point(std::uint64_t i, std::span<double> out) const {
  const double s = i + 1 == size_ ? s_hi_ : s_lo_ + static_cast<double>(i) * step_;
  const Real sr(s);
  for (std::size_t j = 0; j < f_->size(); ++j) {
    const Real x = f_->turns(j) * sr;
    out[j] = fold_angle(kTwoPi * static_cast<double>(x - boost::multiprecision::floor(x)));
  }
}

double OrbitSegment::resolution() const { return 0.5 * f_->max_abs_exponent() * step_; }

PointCloud::PointCloud(std::vector<TorusPoint> points, double resolution)
    : points_(std::move(points)), resolution_(resolution) {
  if (!points_.empty()) dim_ = points_.front().dim();
  for (const auto& p : points_) require_dims(p.dim(), dim_);
}

void PointCloud::point(std::uint64_t i, std::span<double> out) const {
  std::copy(points_[i].angles.begin(), points_[i].angles.end(), out.begin());
}

CoverCounts covering_number(const TorusSample& sample, const TorusMetric& metric, double r,
                            const CoverOptions& options) {
  require_dims(sample.dim(), metric.dim());
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  if (options.check_density && metric.torus_lipschitz() * sample.resolution() > 0.25 * r * (1.0 + 1e-12))
    throw Error(ErrorKind::GridTooCoarse,
                "sample resolution " + std::to_string(sample.resolution()) +
                    " is not r/4-dense for r = " + std::to_string(r));
  const std::uint64_t size = sample.size();
  if (size > options.max_points)
    throw Error(ErrorKind::Budget, "sample has " + std::to_string(size) + " points, cap is " +
                                       std::to_string(options.max_points));
  if (size == 0) return {};
  const std::size_t n = sample.dim();
  std::vector<double> p(n), q(n), next(n);

  CoverCounts counts;
  {
    CenterIndex centres(n, metric.torus_radius(r));
    for (std::uint64_t i = 0; i < size; ++i) {
      sample.point(i, p);
      const bool covered =
          centres.any(p, [&](std::span<const double> c) { return metric.distance(p, c) <= r; });
      if (covered) continue;
      // Slide the new centre forward along the sample order while it still covers p.
      q = p;
      for (std::uint64_t j = i + 1; j < size && j - i < (1u << 20); ++j) {
        sample.point(j, next);
        if (metric.distance(p, next) > r) break;
        q.swap(next);
      }
      centres.insert(q);
    }
    counts.cover_upper = centres.count();
  }
  {
    CenterIndex chosen(n, metric.torus_radius(2.0 * r));
    for (std::uint64_t i = 0; i < size; ++i) {
      sample.point(i, p);
      const bool close = chosen.any(
          p, [&](std::span<const double> c) { return metric.distance(p, c) < 2.0 * r; });
      if (!close) chosen.insert(p);
    }
    counts.packing_lower = chosen.count();
  }
  return counts;
}

DimensionFit dimension_fit(const CoveringReport& report) {
  if (report.eps.size() < 4 || report.counts.size() != report.eps.size())
    throw Error(ErrorKind::TooFewScales,
                "need at least 4 scales, have " + std::to_string(report.eps.size()));
  std::vector<double> xs, lower, upper;
  for (std::size_t k = 0; k < report.eps.size(); ++k) {
    xs.push_back(std::log(1.0 / report.eps[k]));
    lower.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(1, report.counts[k].packing_lower))));
    upper.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(1, report.counts[k].cover_upper))));
  }
  return {slope(xs, lower), slope(xs, upper)};
}

CoveringReport torus_covering_report(const TorusMetric& metric, std::span<const double> eps,
                                     std::uint64_t per_axis, const CoverOptions& options) {
  CoveringReport report;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (k > 0 && !(eps[k] < eps[k - 1]))
      throw Error(ErrorKind::InvalidArgument, "eps grid must be strictly decreasing");
    const TorusGrid grid = per_axis > 0 ? TorusGrid(metric.dim(), per_axis)
                                        : TorusGrid::for_radius(metric.dim(), metric.torus_lipschitz(), eps[k]);
    report.eps.push_back(eps[k]);
    report.counts.push_back(covering_number(grid, metric, eps[k], options));
    report.sample_sizes.push_back(grid.size());
  }
  if (report.eps.size() >= 4) {
    const auto fit = dimension_fit(report);
    report.lower_dim = fit.lower_dim;
    report.upper_dim = fit.upper_dim;
  }
  return report;
}

bool counts_monotone(const CoveringReport& report) {
  for (std::size_t k = 1; k < report.counts.size(); ++k) {
    // eps decreases with k, so counts may only grow.
    if (report.counts[k].cover_upper < report.counts[k - 1].cover_upper) return false;
    if (report.counts[k].packing_lower < report.counts[k - 1].packing_lower) return false;
  }
  return true;
}

bool packing_sandwich_holds(const CoveringReport& report) {
  for (std::size_t k = 0; k < report.eps.size(); ++k) {
    for (std::size_t m = 0; m < report.eps.size(); ++m) {
      if (std::abs(report.eps[m] - 2.0 * report.eps[k]) <= 1e-12 * report.eps[m] &&
          report.counts[m].packing_lower > report.counts[k].cover_upper)
        return false;
    }
    if (report.counts[k].packing_lower > report.counts[k].cover_upper) return false;
  }
  return true;
}

namespace {

struct PairSampler {
  std::mt19937_64 rng;
  std::size_t n;

  double uniform_angle() { return std::uniform_real_distribution<double>(0.0, kTwoPi)(rng); }

  void uniform(std::vector<double>& x) {
    for (auto& a : x) a = uniform_angle();
  }

  // y at sup-distance exactly `scale` (for scale < pi) from x.
  void near(const std::vector<double>& x, double scale, std::vector<double>& y) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) y[j] = u(rng);
    const std::size_t pinned = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    y[pinned] = y[pinned] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) y[j] = fold_angle(x[j] + scale * y[j]);
  }
};

void accumulate(EquivalenceConstants& c, double hull, double torus) {
  if (!(torus > 0.0)) return;
  const double ratio = hull / torus;
  if (c.pairs == 0) {
    c.c1 = c.c2 = ratio;
  } else {
    c.c1 = std::min(c.c1, ratio);
    c.c2 = std::max(c.c2, ratio);
  }
  ++c.pairs;
}

}  // namespace

EquivalenceConstants equivalence_constants(const QuasiperiodicSignal& f, std::size_t sample_count,
                                           std::uint64_t seed, int finest_scale_exponent) {
  if (sample_count < 100) throw Error(ErrorKind::InvalidArgument, "sample_count must be >= 100");
  if (finest_scale_exponent < 1) throw Error(ErrorKind::InvalidArgument, "finest scale exponent must be >= 1");
  const HullMetric hull(f);
  const SupTorusMetric torus(f.size());
  PairSampler sampler{std::mt19937_64(seed), f.size()};
  std::vector<double> x(f.size()), y(f.size());
  EquivalenceConstants c;
  for (std::size_t k = 0; k < sample_count; ++k) {
    sampler.uniform(x);
    if (k % 2 == 0) {
      sampler.uniform(y);
    } else {
      const int e = 1 + static_cast<int>((k / 2) % static_cast<std::size_t>(finest_scale_exponent));
      sampler.near(x, std::ldexp(1.0, -e), y);
    }
    accumulate(c, hull.distance(x, y), torus.distance(x, y));
  }
  return c;
}

EquivalenceConstants near_diagonal_ratio(const QuasiperiodicSignal& f, double scale,
                                         std::size_t sample_count, std::uint64_t seed) {
  if (!(scale > 0.0 && scale < std::numbers::pi))
    throw Error(ErrorKind::InvalidArgument, "scale must lie in (0, pi)");
  const HullMetric hull(f);
  const SupTorusMetric torus(f.size());
  PairSampler sampler{std::mt19937_64(seed), f.size()};
  std::vector<double> x(f.size()), y(f.size());
  EquivalenceConstants c;
  for (std::size_t k = 0; k < sample_count; ++k) {
    sampler.uniform(x);
    sampler.near(x, scale, y);
    accumulate(c, hull.distance(x, y), torus.distance(x, y));
  }
  return c;
}

std::uint64_t segment_cover_count(const QuasiperiodicSignal& f, double r, double inclusion_length,
                                  const CoverOptions& options) {
  const OrbitSegment segment(f, -inclusion_length, inclusion_length,
                             OrbitSegment::step_for_radius(f, r));
  if (segment.size() > options.max_points)
    throw Error(ErrorKind::Budget, "orbit segment has " + std::to_string(segment.size()) + " points");
  // Cover in lexicographic angle order, like the grids; time order leaves
  // slivers between balls that later passes of the orbit fall into.
  std::vector<TorusPoint> points(segment.size());
  for (std::uint64_t i = 0; i < segment.size(); ++i) {
    points[i].angles.resize(f.size());
    segment.point(i, points[i].angles);
  }
  std::sort(points.begin(), points.end(),
            [](const TorusPoint& a, const TorusPoint& b) { return a.angles < b.angles; });
  const PointCloud cloud(std::move(points), segment.resolution());
  return covering_number(cloud, HullMetric(f), r, options).cover_upper;
}

SandwichReport sandwich_checks(const QuasiperiodicSignal& f, double eps, const SandwichOptions& options) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  SandwichReport rep;
  rep.eps = eps;
  const auto length_at = [&](double e) {
    const auto sample = measure_inclusion_length(f, e, options.window);
    if (!sample.resolved)
      throw Error(ErrorKind::Budget, "inclusion length at eps = " + std::to_string(e) + " unresolved");
    return sample.L_upper;
  };
  rep.L_quarter = length_at(eps / 4.0);
  rep.L_half = length_at(eps / 2.0);
  rep.L_full = length_at(eps);
  rep.delta_half = (eps / 2.0) / lipschitz_constant(f);

  rep.n_ap = segment_cover_count(f, eps, rep.L_half, options.cover);
  rep.n_ap_double = segment_cover_count(f, 2.0 * eps, rep.L_full, options.cover);
  rep.n_ap_half = segment_cover_count(f, eps / 2.0, rep.L_quarter, options.cover);

  const HullMetric metric(f);
  const auto grid = TorusGrid::for_radius(f.size(), metric.torus_lipschitz(), eps);
  const auto hull_counts = covering_number(grid, metric, eps, options.cover);
  rep.n_hull = hull_counts.cover_upper;
  rep.n_hull_packing = hull_counts.packing_lower;

  rep.count_bound_value = 2.0 * rep.L_half / rep.delta_half + 1.0;
  const double slack = options.slack;
  rep.sandwich_lower = static_cast<double>(rep.n_ap_double) <= slack * static_cast<double>(rep.n_hull);
  rep.sandwich_upper = static_cast<double>(rep.n_hull) <= slack * static_cast<double>(rep.n_ap_half);
  rep.count_bound = static_cast<double>(rep.n_ap) <= slack * rep.count_bound_value;
  return rep;
}

}  // namespace qplab
