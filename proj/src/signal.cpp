#include "qplab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qplab/error.hpp"

namespace qplab {

namespace {

// Phase of exponent `turns` at time t, reduced to [-1/2, 1/2] turns before
// leaving the 113-bit domain.
inline double reduced_turns(const Real& turns, double t) {
  return static_cast<double>(centered_fraction(turns * Real(t)));
}

}  // namespace

QuasiperiodicSignal::QuasiperiodicSignal(std::vector<Term> terms, bool independence_claimed,
                                         std::string name)
    : terms_(std::move(terms)), independence_claimed_(independence_claimed), name_(std::move(name)) {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "signal needs at least one term");
  const Real two_pi = two_pi_real();
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& term = terms_[j];
    if (term.amplitude == std::complex<double>(0.0, 0.0))
      throw Error(ErrorKind::InvalidArgument, "zero amplitude in term " + std::to_string(j));
    if (!std::isfinite(term.amplitude.real()) || !std::isfinite(term.amplitude.imag()))
      throw Error(ErrorKind::InvalidArgument, "non-finite amplitude in term " + std::to_string(j));
    if (term.exponent == 0)
      throw Error(ErrorKind::InvalidArgument, "zero exponent in term " + std::to_string(j));
    for (std::size_t k = 0; k < j; ++k) {
      if (terms_[k].exponent == term.exponent)
        throw Error(ErrorKind::InvalidArgument, "repeated exponent in terms " + std::to_string(k) +
                                                    " and " + std::to_string(j));
    }
    turns_.push_back(term.exponent / two_pi);
    abs_amplitude_.push_back(std::abs(term.amplitude));
    amplitude_sum_ += abs_amplitude_.back();
    max_abs_exponent_ = std::max(max_abs_exponent_, std::abs(static_cast<double>(term.exponent)));
  }
}

std::complex<double> evaluate(const QuasiperiodicSignal& f, double t) {
  std::complex<double> sum{0.0, 0.0};
  const auto terms = f.terms();
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double angle = 2.0 * std::numbers::pi * reduced_turns(f.turns(j), t);
    sum += terms[j].amplitude * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

double translation_distance(const QuasiperiodicSignal& f, double tau) {
  // |e^{ix} - 1| = 2|sin(x/2)|, x = 2 pi * turns * tau.
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    sum += 2.0 * f.abs_amplitude(j) *
           std::abs(std::sin(std::numbers::pi * reduced_turns(f.turns(j), tau)));
  }
  return sum;
}

double lipschitz_constant(const QuasiperiodicSignal& f) {
  double sum = 0.0;
  const auto terms = f.terms();
  for (std::size_t j = 0; j < terms.size(); ++j)
    sum += f.abs_amplitude(j) * std::abs(static_cast<double>(terms[j].exponent));
  return sum;
}

double sup_oracle(const QuasiperiodicSignal& f, double tau, double horizon, double grid_step,
                  const OracleOptions& options) {
  if (!(horizon > 0.0) || !(grid_step > 0.0))
    throw Error(ErrorKind::InvalidArgument, "sup_oracle needs horizon > 0 and grid_step > 0");
  const double count = std::floor(horizon / grid_step) + 1.0;
  if (count > static_cast<double>(options.max_grid_points))
    throw Error(ErrorKind::Budget, "sup_oracle grid has " + std::to_string(count) +
                                       " points, cap is " +
                                       std::to_string(options.max_grid_points));
  const auto n = static_cast<std::uint64_t>(count);
  // f(t + tau) - f(t) = sum_j A_j e^{i lambda_j t} (e^{i lambda_j tau} - 1); forming t + tau in
  // double would shift tau by up to ulp(horizon).
  const auto terms = f.terms();
  std::vector<std::complex<double>> shift(terms.size());
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double half = std::numbers::pi * reduced_turns(f.turns(j), tau);
    shift[j] = terms[j].amplitude * 2.0 * std::sin(half) *
               std::complex<double>(-std::sin(half), std::cos(half));
  }
  double best = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * grid_step;
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const double angle = 2.0 * std::numbers::pi * reduced_turns(f.turns(j), t);
      sum += shift[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    best = std::max(best, std::abs(sum));
  }
  return best;
}

std::optional<QuasiperiodicSignal> preset(std::string_view name) {
  const Real two_pi = two_pi_real();
  const std::complex<double> one{1.0, 0.0};
  if (name == "golden" || name == "golden1") {
    return QuasiperiodicSignal({{one, two_pi}, {one, two_pi * golden_ratio()}}, true,
                               std::string(name));
  }
  if (name == "sqrt23") {
    return QuasiperiodicSignal(
        {{one, two_pi}, {one, two_pi * sqrt_real(2)}, {one, two_pi * sqrt_real(3)}}, true,
        std::string(name));
  }
  if (name == "periodic") {
    return QuasiperiodicSignal({{one, two_pi}}, true, std::string(name));
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"golden", "golden1", "sqrt23", "periodic"}; }

std::optional<std::vector<int>> find_integer_relation(const QuasiperiodicSignal& f, int max_coeff,
                                                      double tolerance) {
  const std::size_t n = f.size();
  if (n < 2 || max_coeff < 1) return std::nullopt;
  // Keep the enumeration under ~10^6 vectors.
  while (max_coeff > 1 && std::pow(2.0 * max_coeff + 1.0, static_cast<double>(n)) > 1e6) --max_coeff;
  Real scale = 0;
  for (const auto& term : f.terms()) scale = std::max(scale, Real(abs(term.exponent)));
  const Real threshold = scale * Real(tolerance);
  // Enumerate p in [-K, K]^n, first nonzero entry positive (p and -p are the same relation).
  std::vector<int> p(n, -max_coeff);
  const auto advance = [&]() {
    for (std::size_t j = 0; j < n; ++j) {
      if (++p[j] <= max_coeff) return true;
      p[j] = -max_coeff;
    }
    return false;
  };
  do {
    auto first = std::find_if(p.begin(), p.end(), [](int v) { return v != 0; });
    if (first == p.end() || *first < 0) continue;
    Real sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += p[j] * f.terms()[j].exponent;
    if (abs(sum) <= threshold) return p;
  } while (advance());
  return std::nullopt;
}

}  // namespace qplab
