#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qplab/real.hpp"

namespace qplab {

/// One term A e^{i lambda t}. The exponent is an angular frequency.
struct Term {
  std::complex<double> amplitude;
  Real exponent;
};

/// Finite trigonometric sum f(t) = sum_j A_j e^{i lambda_j t}.
///
/// Amplitudes are nonzero and exponents pairwise distinct and nonzero.
/// Rational independence of the exponents cannot be checked from finite
/// precision data, so the caller states it through `independence_claimed`;
/// when it is false, translation_distance() is only an upper bound on the
/// sup-norm of f_tau - f.
class QuasiperiodicSignal {
 public:
  explicit QuasiperiodicSignal(std::vector<Term> terms, bool independence_claimed = true,
                               std::string name = {});

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool independence_claimed() const noexcept { return independence_claimed_; }
  const std::string& name() const noexcept { return name_; }

  /// lambda_j / (2 pi), the exponent measured in turns per unit time.
  const Real& turns(std::size_t j) const { return turns_[j]; }
  double abs_amplitude(std::size_t j) const { return abs_amplitude_[j]; }
  /// sum_j |A_j|
  double amplitude_sum() const noexcept { return amplitude_sum_; }
  double max_abs_exponent() const noexcept { return max_abs_exponent_; }

 private:
  std::vector<Term> terms_;
  std::vector<Real> turns_;
  std::vector<double> abs_amplitude_;
  double amplitude_sum_ = 0.0;
  double max_abs_exponent_ = 0.0;
  bool independence_claimed_;
  std::string name_;
};

std::complex<double> evaluate(const QuasiperiodicSignal& f, double t);

/// D(tau) = sum_j |A_j| |e^{i lambda_j tau} - 1|, summed in term order.
double translation_distance(const QuasiperiodicSignal& f, double tau);

/// C = sum_j |A_j| |lambda_j|; Lipschitz constant of both f and D.
double lipschitz_constant(const QuasiperiodicSignal& f);

struct OracleOptions {
  std::uint64_t max_grid_points = 200'000'000;
};

/// Brute-force lower bound on ||f_tau - f||_inf: the maximum of
/// |f(t + tau) - f(t)| over the grid t = 0, h, 2h, ... <= horizon.
double sup_oracle(const QuasiperiodicSignal& f, double tau, double horizon, double grid_step,
                  const OracleOptions& options = {});

/// Named signals: `golden` and `golden1` (e^{i2pi t} + e^{i2pi phi t}),
/// `sqrt23` (exponents 2pi, 2pi sqrt2, 2pi sqrt3) and `periodic` (e^{i2pi t}).
std::optional<QuasiperiodicSignal> preset(std::string_view name);
std::vector<std::string> preset_names();

/// Searches integer vectors p with max |p_j| <= max_coeff for a relation
/// |sum_j p_j lambda_j| <= tolerance * max|lambda_j|. Heuristic only: finding
/// nothing does not certify independence.
std::optional<std::vector<int>> find_integer_relation(const QuasiperiodicSignal& f,
                                                      int max_coeff = 12,
                                                      double tolerance = 1e-20);

/// Parses `term (',' term)*` where a term is `RE(+|-)IMi@LAMBDA` or a preset
/// name. Throws ParseError with the offending position.
QuasiperiodicSignal parse_signal_spec(std::string_view text);

}  // namespace qplab
