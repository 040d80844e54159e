#include "qplab/real.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>

#include "qplab/error.hpp"

namespace qplab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::StepTooCoarse: return "StepTooCoarse";
    case ErrorKind::Budget: return "Budget";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::TooFewScales: return "TooFewScales";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

Real pi_real() {
  static const Real value = boost::multiprecision::acos(Real(-1));
  return value;
}

Real two_pi_real() { return 2 * pi_real(); }

Real golden_ratio() {
  static const Real value = (1 + boost::multiprecision::sqrt(Real(5))) / 2;
  return value;
}

Real sqrt_real(unsigned n) { return boost::multiprecision::sqrt(Real(n)); }

Real centered_fraction(const Real& x) { return x - boost::multiprecision::round(x); }

namespace {

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Decimal literal, parsed exactly as a rational and rounded once.
std::optional<Real> parse_decimal(std::string_view s) {
  using boost::multiprecision::cpp_int;
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  cpp_int mantissa = 0;
  long exponent10 = 0;
  bool digits = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    mantissa = mantissa * 10 + (s[i] - '0');
    digits = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      mantissa = mantissa * 10 + (s[i] - '0');
      --exponent10;
      digits = true;
    }
  }
  if (!digits) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::string rest(s.substr(i));
    if (rest.empty()) return std::nullopt;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(rest, &used);
    } catch (...) {
      return std::nullopt;
    }
    if (used != rest.size()) return std::nullopt;
    exponent10 += e;
    i = s.size();
  }
  if (i != s.size()) return std::nullopt;
  if (exponent10 > 4000 || exponent10 < -4000) return std::nullopt;
  Real value;
  if (exponent10 >= 0) {
    value = Real(cpp_int(mantissa * boost::multiprecision::pow(cpp_int(10), exponent10)));
  } else {
    // Scale the numerator so the quotient keeps more than 113 significant bits.
    const cpp_int den = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-exponent10));
    const unsigned shift = 240;
    const cpp_int q = (mantissa << shift) / den;
    value = boost::multiprecision::ldexp(Real(q), -static_cast<int>(shift));
  }
  return negative ? -value : value;
}

Real parse_factor(std::string_view s, std::size_t offset) {
  std::size_t local = offset;
  std::string_view t = trim(s, local);
  if (t.empty()) throw ParseError(local, "", "empty factor");
  bool negative = false;
  std::string_view body = t;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::optional<Real> value;
  if (iequals(body, "pi")) value = pi_real();
  else if (iequals(body, "2pi")) value = two_pi_real();
  else if (iequals(body, "phi") || iequals(body, "golden")) value = golden_ratio();
  else if (iequals(body, "sqrt2")) value = sqrt_real(2);
  else if (iequals(body, "sqrt3")) value = sqrt_real(3);
  else if (iequals(body, "sqrt5")) value = sqrt_real(5);
  else if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(body.substr(0, slash));
    auto den = parse_decimal(body.substr(slash + 1));
    if (!num || !den) throw ParseError(local, std::string(t), "malformed ratio");
    if (*den == 0) throw ParseError(local, std::string(t), "zero denominator");
    value = *num / *den;
  } else {
    value = parse_decimal(body);
  }
  if (!value) throw ParseError(local, std::string(t), "unrecognised number");
  return negative ? -*value : *value;
}

}  // namespace

Real parse_real_expression(std::string_view text) {
  Real product = 1;
  std::size_t start = 0;
  bool any = false;
  while (start <= text.size()) {
    std::size_t star = text.find('*', start);
    std::size_t end = star == std::string_view::npos ? text.size() : star;
    product *= parse_factor(text.substr(start, end - start), start);
    any = true;
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  if (!any) throw ParseError(0, std::string(text), "empty expression");
  return product;
}

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace qplab
