#pragma once

#include <boost/multiprecision/float128.hpp>

#include <string>
#include <string_view>

namespace qplab {

/// Working type for exponents and Diophantine products (113-bit mantissa).
using Real = boost::multiprecision::float128;

inline constexpr int kRealMantissaBits = 113;

Real pi_real();
Real two_pi_real();
Real golden_ratio();
Real sqrt_real(unsigned n);

/// x - round(x), in [-1/2, 1/2].
Real centered_fraction(const Real& x);

/// ||x||, the distance from x to the nearest integer.
inline Real nearest_int_distance(const Real& x) {
  return abs(centered_fraction(x));
}

/// Parses a product of factors separated by '*': decimal literals, `a/b`,
/// and the constants pi, 2pi, phi, sqrt2, sqrt3, sqrt5 (optionally signed).
/// Throws Error(Parse) on malformed input.
Real parse_real_expression(std::string_view text);

std::string to_string(const Real& x, int digits = 36);

}  // namespace qplab
