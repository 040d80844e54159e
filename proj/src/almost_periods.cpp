#include "qplab/almost_periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qplab/error.hpp"

namespace qplab {

namespace {

// Closes a run of flagged grid indices [first, last] into an interval.
void push_run(std::vector<Interval>& out, double first_tau, double last_tau, double pad,
              const Window& w) {
  Interval iv{std::max(w.lo, first_tau - pad), std::min(w.hi, last_tau + pad)};
  if (!out.empty() && iv.lo <= out.back().hi) {
    out.back().hi = std::max(out.back().hi, iv.hi);
    return;
  }
  out.push_back(iv);
}

double max_gap(const std::vector<Interval>& intervals, const Window& w) {
  if (intervals.empty()) return w.width();
  double prev = w.lo;
  double gap = 0.0;
  for (const auto& iv : intervals) {
    gap = std::max(gap, iv.lo - prev);
    prev = iv.hi;
  }
  return std::max(gap, w.hi - prev);
}

}  // namespace

double max_certified_step(const QuasiperiodicSignal& f, double eps) {
  return eps / (4.0 * lipschitz_constant(f));
}

IntervalSet sublevel_scan(const QuasiperiodicSignal& f, double eps, Window window, double step,
                          const ScanOptions& options) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  if (!(window.hi >= window.lo)) throw Error(ErrorKind::InvalidArgument, "window has hi < lo");
  const double lip = lipschitz_constant(f);
  if (step > eps / (4.0 * lip))
    throw Error(ErrorKind::StepTooCoarse,
                "step " + std::to_string(step) + " exceeds eps/(4C) = " +
                    std::to_string(eps / (4.0 * lip)));
  const double span = window.width() / step;
  if (!(span + 1.0 <= static_cast<double>(options.max_grid_points)))
    throw Error(ErrorKind::Budget, "scan grid exceeds " + std::to_string(options.max_grid_points) +
                                       " points");
  const auto count = static_cast<std::uint64_t>(std::ceil(span)) + 1;
  const auto tau_at = [&](std::uint64_t i) {
    return i + 1 == count ? window.hi : window.lo + static_cast<double>(i) * step;
  };

  IntervalSet result;
  result.window = window;
  result.eps = eps;
  result.step = step;
  if (2.0 * f.amplitude_sum() < eps) {
    // D <= 2 sum |A_j| everywhere.
    result.inner.push_back({window.lo, window.hi});
    result.outer.push_back({window.lo, window.hi});
    return result;
  }

  const double slack = lip * step;
  const double inner_threshold = eps - slack;
  const double outer_threshold = eps + slack;
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t inner_first = kNone, inner_last = kNone;
  std::uint64_t outer_first = kNone, outer_last = kNone;
  const auto close_inner = [&] {
    if (inner_first == kNone) return;
    push_run(result.inner, tau_at(inner_first), tau_at(inner_last), step, window);
    inner_first = kNone;
  };
  const auto close_outer = [&] {
    if (outer_first == kNone) return;
    push_run(result.outer, tau_at(outer_first), tau_at(outer_last), step, window);
    outer_first = kNone;
  };

  std::uint64_t i = 0;
  while (i < count) {
    const double d = translation_distance(f, tau_at(i));
    ++result.evaluations;
    if (d < inner_threshold) {
      if (inner_first == kNone) inner_first = i;
      inner_last = i;
    } else {
      close_inner();
    }
    if (d < outer_threshold) {
      if (outer_first == kNone) outer_first = i;
      outer_last = i;
      ++i;
      continue;
    }
    close_outer();
    std::uint64_t skip = 0;
    if (!options.exhaustive) {
      // Grid points i+1..i+m stay above the outer threshold while
      // d - C*m*step >= outer_threshold.
      const double m = std::floor((d - outer_threshold - 1e-12) / slack);
      if (m >= 1.0) skip = static_cast<std::uint64_t>(std::min(m, 1e18));
    }
    i = (skip >= count - i) ? count : i + skip + 1;
  }
  close_inner();
  close_outer();
  return result;
}

InclusionLength inclusion_length(const IntervalSet& s) {
  if (s.outer.empty())
    throw Error(ErrorKind::EmptySet, "no almost period in window; enlarge the window");
  return {max_gap(s.outer, s.window), max_gap(s.inner, s.window)};
}

double lattice_inclusion_length(const QuasiperiodicSignal& f, double eps, std::uint64_t q_max) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  std::uint64_t last = 0;
  std::uint64_t gap = 0;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    if (translation_distance(f, static_cast<double>(q)) < eps) {
      gap = std::max(gap, q - last);
      last = q;
    }
  }
  return static_cast<double>(std::max(gap, q_max - last));
}

LengthSample measure_inclusion_length(const QuasiperiodicSignal& f, double eps,
                                      const WindowPolicy& policy) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  LengthSample sample;
  sample.eps = eps;
  const double step = max_certified_step(f, eps);
  const double initial = policy.initial_width_factor / eps;
  for (int k = 0; k <= policy.max_doublings; ++k) {
    const Window window{0.0, std::ldexp(initial, k)};
    IntervalSet scan;
    try {
      scan = sublevel_scan(f, eps, window, step, policy.scan);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Budget) throw;
      return sample;
    }
    sample.window = window.width();
    if (scan.outer.empty()) continue;
    const auto bounds = inclusion_length(scan);
    sample.L_lower = bounds.lower;
    sample.L_upper = bounds.upper;
    const bool saturated = scan.inner.size() == 1 && scan.inner.front().lo <= window.lo &&
                           scan.inner.front().hi >= window.hi;
    if (saturated || scan.outer.size() >= policy.min_hits) {
      sample.resolved = true;
      return sample;
    }
  }
  return sample;
}

LengthCurve length_curve(const QuasiperiodicSignal& f, std::span<const double> eps_list,
                         const WindowPolicy& policy) {
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps values must be positive");
    if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
      throw Error(ErrorKind::InvalidArgument, "eps list must be strictly decreasing");
  }
  LengthCurve curve;
  curve.signal_id = f.name();
  for (double eps : eps_list) curve.samples.push_back(measure_inclusion_length(f, eps, policy));
  return curve;
}

std::vector<double> geometric_eps(double start, int count, double factor) {
  if (!(start > 0.0) || count < 1 || !(factor > 1.0))
    throw Error(ErrorKind::InvalidArgument, "eps range needs start > 0, count >= 1, factor > 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(start / std::pow(factor, k));
  return out;
}

ExponentFit fit_exponent(const LengthCurve& curve) {
  std::vector<double> xs, ys;
  ExponentFit fit;
  fit.max_ratio = std::numeric_limits<double>::quiet_NaN();
  fit.eps_min = std::numeric_limits<double>::infinity();
  fit.eps_max = 0.0;
  for (const auto& s : curve.samples) {
    if (!s.resolved || !(s.L_upper > 0.0)) continue;
    xs.push_back(std::log(1.0 / s.eps));
    ys.push_back(std::log(s.L_upper));
    fit.eps_min = std::min(fit.eps_min, s.eps);
    fit.eps_max = std::max(fit.eps_max, s.eps);
    if (s.eps < 1.0) {
      const double ratio = ys.back() / xs.back();
      if (std::isnan(fit.max_ratio) || ratio > fit.max_ratio) fit.max_ratio = ratio;
    }
  }
  if (xs.size() < 3)
    throw Error(ErrorKind::TooFewSamples,
                "need at least 3 resolved samples with L > 0, have " + std::to_string(xs.size()));
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
  if (!(sxx > 0.0)) throw Error(ErrorKind::TooFewSamples, "eps values do not vary");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - (fit.intercept + fit.slope * xs[k]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.samples_used = xs.size();
  return fit;
}

}  // namespace qplab
