#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "qplab/cli.hpp"
#include "qplab/error.hpp"
#include "reports.hpp"
#include "verify.hpp"

namespace qplab::cli {

namespace {

using detail::Json;
using detail::to_json;

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    std::string piece(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    piece.erase(0, piece.find_first_not_of(" \t"));
    piece.erase(piece.find_last_not_of(" \t") + 1);
    parts.push_back(std::move(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& text, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidArgument, std::string("bad ") + what + " '" + text + "'");
  return v;
}

/// "a,b,c" or "start:count:factor"
std::vector<double> parse_eps(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "missing --eps");
  std::vector<double> eps;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "eps range must be start:count:factor");
    const double start = parse_double(parts[0], "eps start");
    const double count = parse_double(parts[1], "eps count");
    const double factor = parse_double(parts[2], "eps factor");
    if (count < 1 || count != std::floor(count) || count > 1000)
      throw Error(ErrorKind::InvalidArgument, "eps count must be an integer in [1, 1000]");
    if (start <= 0 || factor <= 1)
      throw Error(ErrorKind::InvalidArgument, "eps range needs start > 0 and factor > 1");
    eps = geometric_eps(start, static_cast<int>(count), factor);
  } else {
    for (const auto& p : split(text, ',')) eps.push_back(parse_double(p, "eps"));
  }
  for (double e : eps)
    if (!(e > 0)) throw Error(ErrorKind::InvalidArgument, "eps values must be positive");
  return eps;
}

std::vector<Real> parse_reals(const std::string& text, const char* what) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, std::string("missing --") + what);
  std::vector<Real> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_real_expression(p));
  return out;
}

Window parse_window(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw Error(ErrorKind::InvalidArgument, "window must be lo:hi");
  Window w{parse_double(parts[0], "window start"), parse_double(parts[1], "window end")};
  if (!(w.hi > w.lo)) throw Error(ErrorKind::InvalidArgument, "window must have lo < hi");
  return w;
}

QuasiperiodicSignal load_signal(const RunConfig& config, std::ostream& err) {
  if (config.signal.empty()) throw Error(ErrorKind::InvalidArgument, "missing --signal");
  auto f = parse_signal_spec(config.signal);
  if (auto rel = find_integer_relation(f)) {
    err << "qplab: warning: exponents satisfy the integer relation (";
    for (std::size_t j = 0; j < rel->size(); ++j) err << (j ? "," : "") << (*rel)[j];
    err << "); results assume rational independence\n";
  }
  return f;
}

WindowPolicy window_policy(const RunConfig& config) {
  WindowPolicy p;
  p.initial_width_factor = config.window_factor;
  p.max_doublings = config.max_doublings;
  p.min_hits = config.min_hits;
  p.scan.max_grid_points = config.max_grid;
  return p;
}

bool csv(const RunConfig& config) { return config.format == "csv"; }

Json envelope(const RunConfig& config) {
  Json j = Json::object();
  j["command"] = config.command;
  j["config"] = detail::config_json(config);
  return j;
}

int cmd_eval(const RunConfig& config, std::ostream& os, std::ostream& err) {
  const auto f = load_signal(config, err);
  std::vector<double> times;
  for (const auto& p : split(config.t.empty() ? "0" : config.t, ',')) times.push_back(parse_double(p, "t"));
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "t,re,im\n";
    for (double t : times) {
      const auto v = evaluate(f, t);
      os << detail::fmt(t) << ',' << detail::fmt(v.real()) << ',' << detail::fmt(v.imag()) << '\n';
    }
    return kOk;
  }
  Json j = envelope(config);
  j["signal"] = to_json(f);
  Json values = Json::array();
  for (double t : times) {
    const auto v = evaluate(f, t);
    values.push_back({{"t", t}, {"re", v.real()}, {"im", v.imag()}, {"D", translation_distance(f, t)}});
  }
  j["values"] = values;
  os << detail::dump(j);
  return kOk;
}

int cmd_scan(const RunConfig& config, std::ostream& os, std::ostream& err) {
  const auto f = load_signal(config, err);
  const double eps = parse_eps(config.eps).front();
  const Window w = config.window.empty() ? Window{0.0, config.window_factor / eps} : parse_window(config.window);
  const double step = config.step > 0 ? config.step : max_certified_step(f, eps);
  ScanOptions options;
  options.max_grid_points = config.max_grid;
  const auto set = sublevel_scan(f, eps, w, step, options);
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "set,lo,hi\n";
    for (const auto& iv : set.inner) os << "inner," << detail::fmt(iv.lo) << ',' << detail::fmt(iv.hi) << '\n';
    for (const auto& iv : set.outer) os << "outer," << detail::fmt(iv.lo) << ',' << detail::fmt(iv.hi) << '\n';
    return kOk;
  }
  Json j = envelope(config);
  j["signal"] = to_json(f);
  j["scan"] = to_json(set);
  if (set.outer.empty()) {
    j["inclusion_length"] = nullptr;
  } else {
    const auto len = inclusion_length(set);
    j["inclusion_length"] = {{"L_lower", len.lower}, {"L_upper", len.upper}};
  }
  os << detail::dump(j);
  return kOk;
}

int cmd_curve(const RunConfig& config, std::ostream& os, std::ostream& err, bool fit) {
  const auto f = load_signal(config, err);
  const auto eps = parse_eps(config.eps.empty() ? "0.4:8:2" : config.eps);
  const auto curve = length_curve(f, eps, window_policy(config));
  const bool unresolved = std::any_of(curve.samples.begin(), curve.samples.end(),
                                      [](const LengthSample& s) { return !s.resolved; });
  if (unresolved) err << "qplab: some eps values were not resolved within the window budget\n";
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    if (fit) {
      const auto e = fit_exponent(curve);
      os << "# slope=" << detail::fmt(e.slope) << "\n# intercept=" << detail::fmt(e.intercept) << '\n';
    }
    detail::write_curve_csv(os, curve);
    return kOk;
  }
  Json j = envelope(config);
  j["signal"] = to_json(f);
  j["curve"] = to_json(curve);
  if (fit) j["fit"] = to_json(fit_exponent(curve));
  os << detail::dump(j);
  return kOk;
}

int cmd_cf(const RunConfig& config, std::ostream& os) {
  if (config.x.empty()) throw Error(ErrorKind::InvalidArgument, "missing --x");
  const auto enc = enclose_literal(config.x, config.precision_bits);
  const auto cf = enc.lo == enc.hi ? cf_expand(enc.lo, config.depth) : cf_expand(enc, config.depth);
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "k,a,p,q\n";
    for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
      const BigInt& a = k == 0 ? cf.a0 : cf.quotients[k - 1];
      os << k << ',' << a << ',' << cf.convergents[k].p << ',' << cf.convergents[k].q << '\n';
    }
    return kOk;
  }
  Json j = envelope(config);
  j.update(to_json(cf));
  os << detail::dump(j);
  return kOk;
}

int cmd_badness(const RunConfig& config, std::ostream& os) {
  const auto alpha = parse_reals(config.alpha, "alpha");
  const auto r = badness_score(alpha, config.qmax, config.qcap);
  Json j = envelope(config);
  j.update(to_json(r));
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "n,Q,score,argmin_q\n"
       << r.n << ',' << r.Q << ',' << detail::fmt(r.score) << ',' << r.argmin_q << '\n';
    return kOk;
  }
  os << detail::dump(j);
  return kOk;
}

int cmd_simdenom(const RunConfig& config, std::ostream& os) {
  const auto alpha = parse_reals(config.alpha, "alpha");
  const auto q = best_simultaneous_denominator(alpha, config.delta, config.qmax, config.qcap);
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "q,error\n";
    if (q) os << *q << ',' << detail::fmt(static_cast<double>(simultaneous_error(alpha, *q))) << '\n';
    return kOk;
  }
  Json j = envelope(config);
  if (q) {
    j["q"] = *q;
    j["error"] = static_cast<double>(simultaneous_error(alpha, *q));
  } else {
    j["q"] = nullptr;
    j["error"] = nullptr;
  }
  os << detail::dump(j);
  return kOk;
}

int cmd_kronecker(const RunConfig& config, std::ostream& os) {
  const auto lambda = parse_reals(config.lambda, "lambda");
  const auto kappa = parse_reals(config.kappa, "kappa");
  if (lambda.size() != kappa.size())
    throw Error(ErrorKind::DimensionMismatch, "lambda and kappa differ in length");
  const double eps = parse_eps(config.eps).front();
  const auto sol = kronecker_solve(lambda, kappa, eps, config.tmax, config.max_grid);
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "t,max_residual\n";
    if (sol)
      os << detail::fmt(sol->t) << ','
         << detail::fmt(*std::max_element(sol->residuals.begin(), sol->residuals.end())) << '\n';
    return kOk;
  }
  Json j = envelope(config);
  if (sol) {
    j["t"] = sol->t;
    j["residuals"] = sol->residuals;
  } else {
    j["t"] = nullptr;
    j["residuals"] = Json::array();
  }
  os << detail::dump(j);
  return kOk;
}

int cmd_dimension(const RunConfig& config, std::ostream& os, std::ostream& err) {
  const auto f = load_signal(config, err);
  const auto eps = parse_eps(config.eps.empty() ? "0.25:6:2" : config.eps);
  const HullMetric metric(f);
  const auto report = torus_covering_report(metric, eps, config.grid);
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "# lower_dim=" << detail::fmt(report.lower_dim) << "\n# upper_dim=" << detail::fmt(report.upper_dim)
       << '\n';
    detail::write_covering_csv(os, report);
    return kOk;
  }
  Json j = envelope(config);
  j["signal"] = to_json(f);
  j["covering"] = to_json(report);
  j["monotone"] = counts_monotone(report);
  j["packing_sandwich"] = packing_sandwich_holds(report);
  j["equivalence"] = to_json(equivalence_constants(f, config.samples, config.seed));
  os << detail::dump(j);
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& os, std::ostream& err) {
  const auto r = detail::run_suite(config.suite, config.seed);
  if (csv(config)) {
    detail::write_csv_preamble(os, config);
    os << "name,value,expected,pass,informational\n";
    for (const auto& c : r.checks)
      os << c.name << ',' << detail::fmt(c.value) << ",\"" << c.expected << "\"," << (c.pass ? 1 : 0) << ','
         << (c.informational ? 1 : 0) << '\n';
  } else {
    Json j = envelope(config);
    j["suite"] = r.suite;
    Json checks = Json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name},
                        {"value", c.value},
                        {"expected", c.expected},
                        {"pass", c.pass},
                        {"informational", c.informational}});
    j["checks"] = checks;
    j["passed"] = r.passed();
    j["details"] = r.details;
    os << detail::dump(j);
  }
  for (const auto& c : r.checks)
    if (!c.informational && !c.pass) err << "qplab: check failed: " << c.name << " = " << detail::fmt(c.value) << '\n';
  return r.passed() ? kOk : kVerificationFailed;
}

int dispatch(const RunConfig& config, std::ostream& os, std::ostream& err) {
  if (config.format != "json" && config.format != "csv")
    throw Error(ErrorKind::InvalidArgument, "format must be csv or json");
  const auto& c = config.command;
  if (c == "eval") return cmd_eval(config, os, err);
  if (c == "scan") return cmd_scan(config, os, err);
  if (c == "length-curve") return cmd_curve(config, os, err, false);
  if (c == "di-fit") return cmd_curve(config, os, err, true);
  if (c == "cf") return cmd_cf(config, os);
  if (c == "badness") return cmd_badness(config, os);
  if (c == "simdenom") return cmd_simdenom(config, os);
  if (c == "kronecker") return cmd_kronecker(config, os);
  if (c == "dimension") return cmd_dimension(config, os, err);
  if (c == "verify") return cmd_verify(config, os, err);
  throw Error(ErrorKind::InvalidArgument, c.empty() ? "missing command" : "unknown command '" + c + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream report;
  int code = kOk;
  try {
    code = dispatch(config, report, err);
  } catch (const Error& e) {
    err << "qplab: " << e.what() << '\n';
    return e.kind() == ErrorKind::Budget || e.kind() == ErrorKind::PrecisionExhausted ? kBudgetExhausted
                                                                                     : kInputError;
  } catch (const std::exception& e) {
    err << "qplab: " << e.what() << '\n';
    return kInputError;
  }
  if (config.out.empty()) {
    out << report.str();
  } else {
    std::ofstream file(config.out, std::ios::binary);
    file << report.str();
    if (!file) {
      err << "qplab: cannot write " << config.out << '\n';
      return kInputError;
    }
  }
  return code;
}

}  // namespace qplab::cli
