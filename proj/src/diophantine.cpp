#include "qplab/diophantine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "qplab/error.hpp"

namespace qplab {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt floor_div(const BigInt& a, const BigInt& b) {
  // b > 0
  BigInt q = a / b;
  if (a < 0 && q * b != a) --q;
  return q;
}

BigInt floor_of(const Rational& x) { return floor_div(numerator(x), denominator(x)); }

Rational pow2(int e) {
  if (e >= 0) return Rational(BigInt(1) << e);
  return Rational(BigInt(1), BigInt(1) << -e);
}

void push_quotient(ContinuedFraction& cf, const BigInt& a) {
  const auto& c = cf.convergents;
  const std::size_t k = c.size();
  const BigInt p1 = k >= 1 ? c[k - 1].p : BigInt(1);
  const BigInt q1 = k >= 1 ? c[k - 1].q : BigInt(0);
  const BigInt p2 = k >= 2 ? c[k - 2].p : (k == 1 ? BigInt(1) : BigInt(0));
  const BigInt q2 = k >= 2 ? c[k - 2].q : (k == 1 ? BigInt(0) : BigInt(1));
  if (k == 0) {
    cf.a0 = a;
    cf.convergents.push_back({a, BigInt(1)});
    return;
  }
  cf.quotients.push_back(a);
  cf.convergents.push_back({a * p1 + p2, a * q1 + q2});
}

std::optional<Rational> exact_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  int scale = 0;
  bool digits = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, digits = true)
    mantissa = mantissa * 10 + (s[i] - '0');
  if (i < s.size() && s[i] == '.') {
    for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, digits = true) {
      mantissa = mantissa * 10 + (s[i] - '0');
      ++scale;
    }
  }
  if (!digits || i != s.size()) return std::nullopt;
  Rational value(mantissa, boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale)));
  return negative ? Rational(-value) : value;
}

}  // namespace

RealEnclosure enclose(const Real& x, int ulps) {
  if (x == 0) return {Rational(0), Rational(0)};
  int e = 0;
  const Real m = boost::multiprecision::frexp(abs(x), &e);  // m in [0.5, 1)
  BigInt mant(boost::multiprecision::ldexp(m, kRealMantissaBits));
  const Rational unit = pow2(e - kRealMantissaBits);
  Rational lo = Rational(mant - ulps) * unit;
  Rational hi = Rational(mant + ulps) * unit;
  if (x < 0) return {Rational(-hi), Rational(-lo)};
  return {lo, hi};
}

RealEnclosure enclose_sqrt(unsigned n, unsigned bits) {
  const BigInt scaled = BigInt(n) << (2 * bits);
  const BigInt root = boost::multiprecision::sqrt(scaled);
  const BigInt den = BigInt(1) << bits;
  if (root * root == scaled) return {Rational(root, den), Rational(root, den)};
  return {Rational(root, den), Rational(root + 1, den)};
}

RealEnclosure enclose_golden(unsigned bits) {
  const auto s5 = enclose_sqrt(5, bits + 1);
  return {Rational((1 + s5.lo) / 2), Rational((1 + s5.hi) / 2)};
}

RealEnclosure enclose_literal(std::string_view text, unsigned bits) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "phi" || text == "golden") return enclose_golden(bits);
  if (text == "sqrt2") return enclose_sqrt(2, bits);
  if (text == "sqrt3") return enclose_sqrt(3, bits);
  if (text == "sqrt5") return enclose_sqrt(5, bits);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = exact_decimal(text.substr(0, slash));
    auto den = exact_decimal(text.substr(slash + 1));
    if (num && den) {
      if (*den == 0) throw ParseError(slash + 1, std::string(text), "zero denominator");
      const Rational r = *num / *den;
      return {r, r};
    }
  }
  if (auto r = exact_decimal(text)) return {*r, *r};
  // Anything else goes through the 113-bit expression parser.
  return enclose(parse_real_expression(text), 8);
}

ContinuedFraction cf_expand(const Rational& x, int depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  ContinuedFraction cf;
  BigInt p = numerator(x);
  BigInt q = denominator(x);
  while (true) {
    const BigInt a = floor_div(p, q);
    push_quotient(cf, a);
    const BigInt r = p - a * q;
    if (r == 0) {
      cf.terminated = true;
      break;
    }
    if (static_cast<int>(cf.quotients.size()) >= depth) break;
    p = q;
    q = r;
  }
  return cf;
}

ContinuedFraction cf_expand(const RealEnclosure& x, int depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  if (x.lo > x.hi) throw Error(ErrorKind::InvalidArgument, "enclosure has lo > hi");
  if (x.lo == x.hi) return cf_expand(x.lo, depth);
  ContinuedFraction cf;
  Rational lo = x.lo;
  Rational hi = x.hi;
  while (true) {
    const BigInt a = floor_of(lo);
    if (a != floor_of(hi) || (!cf.convergents.empty() && a < 1)) break;
    push_quotient(cf, a);
    if (static_cast<int>(cf.quotients.size()) >= depth) return cf;
    const Rational lo_rest = lo - a;
    const Rational hi_rest = hi - a;
    if (lo_rest == 0) break;  // next quotient unbounded within the enclosure
    lo = 1 / hi_rest;
    hi = 1 / lo_rest;
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "enclosure certifies only " +
                  std::to_string(cf.convergents.empty() ? 0 : cf.quotients.size()) + " of " +
                  std::to_string(depth) + " quotients");
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t k) {
  if (k > cf.quotients.size())
    throw Error(ErrorKind::OutOfRange, "convergent index " + std::to_string(k) + " exceeds " +
                                           std::to_string(cf.quotients.size()) + " quotients");
  return {cf.convergents.begin(), cf.convergents.begin() + static_cast<std::ptrdiff_t>(k + 1)};
}

Rational cf_value(const ContinuedFraction& cf) {
  const auto& last = cf.convergents.back();
  return Rational(last.p, last.q);
}

Real simultaneous_error(std::span<const Real> alpha, std::uint64_t q) {
  Real worst = 0;
  const Real qr(q);
  for (const auto& a : alpha) worst = std::max(worst, nearest_int_distance(qr * a));
  return worst;
}

BadnessReport badness_score(std::span<const Real> alpha, std::uint64_t Q, std::uint64_t q_cap) {
  if (alpha.empty()) throw Error(ErrorKind::InvalidArgument, "alpha must be non-empty");
  if (Q < 1) throw Error(ErrorKind::InvalidArgument, "Q must be >= 1");
  if (Q > q_cap)
    throw Error(ErrorKind::Budget, "Q = " + std::to_string(Q) + " exceeds cap " + std::to_string(q_cap));
  BadnessReport report;
  report.n = alpha.size();
  report.Q = Q;
  report.score = std::numeric_limits<double>::infinity();
  const double inv_n = 1.0 / static_cast<double>(alpha.size());
  for (std::uint64_t q = 1; q <= Q; ++q) {
    const double value =
        std::pow(static_cast<double>(q), inv_n) * static_cast<double>(simultaneous_error(alpha, q));
    if (value < report.score) {
      report.score = value;
      report.argmin_q = q;
    }
  }
  return report;
}

std::optional<std::uint64_t> best_simultaneous_denominator(std::span<const Real> alpha,
                                                           double delta, std::uint64_t q_max,
                                                           std::uint64_t q_cap) {
  if (alpha.empty()) throw Error(ErrorKind::InvalidArgument, "alpha must be non-empty");
  if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1/2)");
  if (q_max < 1) throw Error(ErrorKind::InvalidArgument, "Qmax must be >= 1");
  if (q_max > q_cap)
    throw Error(ErrorKind::Budget, "Qmax = " + std::to_string(q_max) + " exceeds cap " +
                                       std::to_string(q_cap));
  const Real bound(delta);
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    if (simultaneous_error(alpha, q) <= bound) return q;
  }
  return std::nullopt;
}

namespace {

struct KroneckerProblem {
  std::vector<Real> lambda_turns;
  std::vector<Real> kappa_turns;

  double max_residual(double t, std::vector<double>* out) const {
    const Real tr(t);
    double worst = 0.0;
    if (out) out->clear();
    for (std::size_t j = 0; j < lambda_turns.size(); ++j) {
      const double r = 2.0 * M_PI *
                       static_cast<double>(nearest_int_distance(lambda_turns[j] * tr - kappa_turns[j]));
      worst = std::max(worst, r);
      if (out) out->push_back(r);
    }
    return worst;
  }
};

KroneckerProblem make_problem(std::span<const Real> lambda, std::span<const Real> kappa) {
  if (lambda.empty() || lambda.size() != kappa.size())
    throw Error(ErrorKind::DimensionMismatch, "lambda and kappa must be non-empty and equally long");
  KroneckerProblem p;
  const Real two_pi = two_pi_real();
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    p.lambda_turns.push_back(lambda[j] / two_pi);
    p.kappa_turns.push_back(kappa[j] / two_pi);
  }
  return p;
}

}  // namespace

std::vector<double> kronecker_residuals(std::span<const Real> lambda, std::span<const Real> kappa,
                                        double t) {
  std::vector<double> out;
  make_problem(lambda, kappa).max_residual(t, &out);
  return out;
}

std::optional<KroneckerSolution> kronecker_solve(std::span<const Real> lambda,
                                                 std::span<const Real> kappa, double eps,
                                                 double t_max, std::uint64_t max_grid_points) {
  const auto problem = make_problem(lambda, kappa);
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "Tmax must be positive");
  double lip = 0.0;
  for (const auto& l : lambda) lip = std::max(lip, std::abs(static_cast<double>(l)));
  if (!(lip > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must have a nonzero entry");
  const double step = eps / (2.0 * lip);
  const double count = std::floor(t_max / step) + 1.0;
  if (count > static_cast<double>(max_grid_points))
    throw Error(ErrorKind::Budget, "Kronecker grid exceeds " + std::to_string(max_grid_points) + " points");
  const auto n = static_cast<std::uint64_t>(count);
  std::uint64_t i = 0;
  while (i < n) {
    const double t = static_cast<double>(i) * step;
    const double r = problem.max_residual(t, nullptr);
    if (r < eps) {
      KroneckerSolution s;
      s.t = t;
      problem.max_residual(t, &s.residuals);
      return s;
    }
    // Residual moves at most lip * step per grid step.
    const double m = std::floor((r - eps - 1e-12) / (lip * step));
    i += (m >= 1.0 ? static_cast<std::uint64_t>(m) : 0) + 1;
  }
  return std::nullopt;
}

}  // namespace qplab
