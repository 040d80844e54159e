#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qplab/signal.hpp"

namespace qplab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
};

/// Two-sided picture of the eps-almost periods inside a window:
/// inner ⊆ Ω_eps(f) ∩ window ⊆ outer. Both lists are sorted and disjoint.
struct IntervalSet {
  Window window;
  double eps = 0.0;
  double step = 0.0;
  std::vector<Interval> inner;
  std::vector<Interval> outer;
  std::uint64_t evaluations = 0;
};

struct ScanOptions {
  std::uint64_t max_grid_points = std::uint64_t{1} << 40;
  /// Evaluate every grid point instead of skipping certified-far stretches.
  bool exhaustive = false;
};

/// Largest step accepted by sublevel_scan: eps / (4 C).
double max_certified_step(const QuasiperiodicSignal& f, double eps);

/// Certified scan of {tau in window : D(tau) < eps} on the grid lo + k*step.
///
/// A grid value below eps - C*step certifies its neighbourhood of radius
/// `step` (inner); every almost period lies within step/2 of a grid value
/// below eps + C*step (outer). Stretches where D is provably above the outer
/// threshold are skipped using the Lipschitz bound, which does not change
/// the result.
IntervalSet sublevel_scan(const QuasiperiodicSignal& f, double eps, Window window, double step,
                          const ScanOptions& options = {});

struct InclusionLength {
  double lower = 0.0;  ///< max gap between outer intervals
  double upper = 0.0;  ///< max gap between inner intervals
};

/// Largest uncovered gap, window edges counted as gap endpoints.
/// Throws Error(EmptySet) when the outer set is empty.
InclusionLength inclusion_length(const IntervalSet& s);

/// Largest gap between the integers q in [0, q_max] with D(q) < eps, edges
/// included. For signals whose exponents are 2pi times (1, alpha_1, ...)
/// these are the almost periods built from simultaneous approximations;
/// the result is a valid inclusion length, usually not the smallest one.
double lattice_inclusion_length(const QuasiperiodicSignal& f, double eps, std::uint64_t q_max);

struct WindowPolicy {
  /// The first window is [0, initial_width_factor / eps].
  double initial_width_factor = 4.0;
  /// Window doubles at most this many times (cap = 2^max_doublings * initial).
  int max_doublings = 20;
  /// Stop growing once the outer set has this many intervals.
  std::size_t min_hits = 8;
  ScanOptions scan;
};

struct LengthSample {
  double eps = 0.0;
  double L_lower = 0.0;
  double L_upper = 0.0;
  double window = 0.0;
  bool resolved = false;
};

struct LengthCurve {
  std::string signal_id;
  std::vector<LengthSample> samples;
};

/// Inclusion-length bounds for one eps with the adaptive window policy.
LengthSample measure_inclusion_length(const QuasiperiodicSignal& f, double eps,
                                      const WindowPolicy& policy = {});

/// Requires eps_list strictly decreasing and positive. A sample whose scan
/// runs out of budget or window is marked unresolved; the curve still returns.
LengthCurve length_curve(const QuasiperiodicSignal& f, std::span<const double> eps_list,
                         const WindowPolicy& policy = {});

/// Geometric list start, start/factor, ..., count entries.
std::vector<double> geometric_eps(double start, int count, double factor);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// RMS deviation of ln L_upper from the fitted line.
  double residual = 0.0;
  /// max_k ln L(eps_k) / ln(1/eps_k) over samples with eps < 1.
  double max_ratio = 0.0;
  double eps_min = 0.0;
  double eps_max = 0.0;
  std::size_t samples_used = 0;
};

/// Least-squares slope of ln L_upper against ln(1/eps) over resolved samples
/// with L_upper > 0. Throws Error(TooFewSamples) with fewer than 3.
ExponentFit fit_exponent(const LengthCurve& curve);

}  // namespace qplab
