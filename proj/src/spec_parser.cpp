#include <cctype>
#include <string>

#include "qplab/error.hpp"
#include "qplab/signal.hpp"

namespace qplab {

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::size_t offset) {
  std::size_t local = offset;
  s = trim(s, local);
  std::string buffer(s);
  if (buffer.empty()) throw ParseError(local, "", "missing number");
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(buffer, &used);
  } catch (...) {
    throw ParseError(local, buffer, "malformed number");
  }
  if (used != buffer.size()) throw ParseError(local + used, buffer.substr(used), "malformed number");
  return value;
}

// RE(+|-)IMi, or a bare real part.
std::complex<double> parse_complex(std::string_view s, std::size_t offset) {
  std::size_t local = offset;
  s = trim(s, local);
  if (s.empty()) throw ParseError(local, "", "missing amplitude");
  if (s.back() != 'i') return {parse_double(s, local), 0.0};
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    // Pure imaginary, e.g. `2i`.
    std::string_view im = s.substr(0, s.size() - 1);
    return {0.0, im.empty() ? 1.0 : parse_double(im, local)};
  }
  const double re = parse_double(s.substr(0, split), local);
  std::string_view im = s.substr(split, s.size() - 1 - split);
  double im_value = 0.0;
  if (im == "+" || im == "-") im_value = im == "+" ? 1.0 : -1.0;
  else im_value = parse_double(im, local + split);
  return {re, im_value};
}

}  // namespace

QuasiperiodicSignal parse_signal_spec(std::string_view text) {
  std::vector<Term> terms;
  bool independent = true;
  std::string name;
  std::size_t start = 0;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError(0, "", "empty signal spec");
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::size_t offset = start;
    std::string_view token = trim(text.substr(start, end - start), offset);
    if (token.empty()) throw ParseError(offset, "", "empty term");
    const std::size_t at = token.find('@');
    if (at == std::string_view::npos) {
      auto p = preset(token);
      if (!p) throw ParseError(offset, std::string(token), "unknown preset");
      for (const auto& term : p->terms()) terms.push_back(term);
      independent = independent && p->independence_claimed();
      name = name.empty() ? std::string(token) : name + "," + std::string(token);
    } else {
      const auto amplitude = parse_complex(token.substr(0, at), offset);
      if (amplitude == std::complex<double>(0.0, 0.0))
        throw ParseError(offset, std::string(token), "zero amplitude");
      std::size_t lambda_offset = offset + at + 1;
      std::string_view lambda_text = trim(token.substr(at + 1), lambda_offset);
      Real exponent;
      try {
        exponent = parse_real_expression(lambda_text);
      } catch (const ParseError& e) {
        throw ParseError(lambda_offset + e.position(), e.token(), "malformed exponent");
      }
      terms.push_back({amplitude, exponent});
      name = name.empty() ? std::string(token) : name + "," + std::string(token);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return QuasiperiodicSignal(std::move(terms), independent, name);
  } catch (const Error& e) {
    throw ParseError(0, std::string(text), e.what());
  }
}

}  // namespace qplab
