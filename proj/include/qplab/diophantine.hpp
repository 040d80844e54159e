#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qplab/real.hpp"

namespace qplab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Convergent {
  BigInt p;
  BigInt q;
};

/// [a0; a1, a2, ...] with convergents p_k/q_k, k = 0..quotients.size().
struct ContinuedFraction {
  BigInt a0;
  std::vector<BigInt> quotients;  ///< a1, a2, ... (all >= 1)
  std::vector<Convergent> convergents;
  /// True when the expansion ended because the input is that rational.
  bool terminated = false;
};

/// Closed rational enclosure lo <= x <= hi of a real number.
struct RealEnclosure {
  Rational lo;
  Rational hi;
};

/// x within `ulps` units in the last place of a 113-bit mantissa.
RealEnclosure enclose(const Real& x, int ulps = 2);
/// sqrt(n) to within 2^-bits.
RealEnclosure enclose_sqrt(unsigned n, unsigned bits);
/// (1 + sqrt 5) / 2 to within 2^-bits.
RealEnclosure enclose_golden(unsigned bits);
/// Named constants phi, sqrt2, sqrt3, sqrt5, or an exact rational `a/b` or
/// decimal literal (lo == hi). Throws ParseError otherwise.
RealEnclosure enclose_literal(std::string_view text, unsigned bits);

/// Exact expansion of a rational, up to `depth` quotients after a0.
ContinuedFraction cf_expand(const Rational& x, int depth);

/// Expansion certified against the enclosure: each quotient is emitted only
/// when both ends agree on it. Throws Error(PrecisionExhausted) if fewer than
/// `depth` quotients can be certified and the value is not an exact rational.
ContinuedFraction cf_expand(const RealEnclosure& x, int depth);

/// Convergents 0..k. Throws Error(OutOfRange) if k > quotients.size().
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k);

/// Value of the full expansion as an exact rational.
Rational cf_value(const ContinuedFraction& cf);

struct BadnessReport {
  std::size_t n = 0;
  std::uint64_t Q = 0;
  /// min over 1 <= q <= Q of q^{1/n} max_j ||q alpha_j||
  double score = 0.0;
  std::uint64_t argmin_q = 0;
};

inline constexpr std::uint64_t kDefaultQCap = 2'000'000'000;

/// Exact minimum over the scanned range; ties go to the smaller q.
BadnessReport badness_score(std::span<const Real> alpha, std::uint64_t Q,
                            std::uint64_t q_cap = kDefaultQCap);

/// max_j ||q alpha_j||
Real simultaneous_error(std::span<const Real> alpha, std::uint64_t q);

/// Smallest q <= q_max with max_j ||q alpha_j|| <= delta.
std::optional<std::uint64_t> best_simultaneous_denominator(std::span<const Real> alpha,
                                                           double delta, std::uint64_t q_max,
                                                           std::uint64_t q_cap = kDefaultQCap);

struct KroneckerSolution {
  double t = 0.0;
  /// |lambda_j t - kappa_j| folded mod 2 pi into [0, pi].
  std::vector<double> residuals;
};

std::vector<double> kronecker_residuals(std::span<const Real> lambda, std::span<const Real> kappa,
                                        double t);

/// First point of the grid 0, h, 2h, ... <= t_max (h = eps / (2 max|lambda_j|))
/// whose residuals are all below eps, or nullopt.
std::optional<KroneckerSolution> kronecker_solve(std::span<const Real> lambda,
                                                 std::span<const Real> kappa, double eps,
                                                 double t_max,
                                                 std::uint64_t max_grid_points = std::uint64_t{1}
                                                                                 << 40);

}  // namespace qplab
