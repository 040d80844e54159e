#include "reports.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace qplab::cli::detail {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json config_json(const RunConfig& config) {
  Json j = Json::object();
  for (const auto& [key, value] : describe(config)) j[key] = value;
  return j;
}

void write_csv_preamble(std::ostream& os, const RunConfig& config) {
  for (const auto& [key, value] : describe(config)) os << "# " << key << '=' << value << '\n';
}

Json to_json(const QuasiperiodicSignal& f) {
  Json terms = Json::array();
  for (const auto& term : f.terms()) {
    terms.push_back({{"re", term.amplitude.real()},
                     {"im", term.amplitude.imag()},
                     {"lambda", to_string(term.exponent)}});
  }
  return {{"name", f.name()},
          {"independence_claimed", f.independence_claimed()},
          {"lipschitz", lipschitz_constant(f)},
          {"terms", terms}};
}

Json to_json(const IntervalSet& s) {
  const auto intervals = [](const std::vector<Interval>& v) {
    Json a = Json::array();
    for (const auto& iv : v) a.push_back(Json::array({iv.lo, iv.hi}));
    return a;
  };
  return {{"eps", s.eps},
          {"window", Json::array({s.window.lo, s.window.hi})},
          {"step", s.step},
          {"evaluations", s.evaluations},
          {"inner", intervals(s.inner)},
          {"outer", intervals(s.outer)}};
}

Json to_json(const LengthSample& s) {
  return {{"eps", s.eps},
          {"L_lower", s.L_lower},
          {"L_upper", s.L_upper},
          {"window", s.window},
          {"resolved", s.resolved}};
}

Json to_json(const LengthCurve& c) {
  Json samples = Json::array();
  for (const auto& s : c.samples) samples.push_back(to_json(s));
  return {{"signal", c.signal_id}, {"samples", samples}};
}

Json to_json(const ExponentFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"max_ratio", fit.max_ratio},
          {"residual", fit.residual},
          {"eps_min", fit.eps_min},
          {"eps_max", fit.eps_max},
          {"samples_used", fit.samples_used}};
}

Json to_json(const ContinuedFraction& cf) {
  Json quotients = Json::array();
  for (const auto& a : cf.quotients) quotients.push_back(a.str());
  Json convs = Json::array();
  for (const auto& c : cf.convergents) convs.push_back(Json::array({c.p.str(), c.q.str()}));
  return {{"a0", cf.a0.str()},
          {"quotients", quotients},
          {"convergents", convs},
          {"terminated", cf.terminated}};
}

Json to_json(const BadnessReport& r) {
  return {{"n", r.n}, {"Q", r.Q}, {"score", r.score}, {"argmin_q", r.argmin_q}};
}

Json to_json(const CoveringReport& r) {
  Json counts = Json::array();
  for (std::size_t k = 0; k < r.eps.size(); ++k) {
    counts.push_back({{"eps", r.eps[k]},
                      {"cover_upper", r.counts[k].cover_upper},
                      {"packing_lower", r.counts[k].packing_lower},
                      {"sample_size", r.sample_sizes[k]}});
  }
  return {{"counts", counts}, {"lower_dim", r.lower_dim}, {"upper_dim", r.upper_dim}};
}

Json to_json(const EquivalenceConstants& c) {
  return {{"c1", c.c1}, {"c2", c.c2}, {"pairs", c.pairs}};
}

Json to_json(const SandwichReport& r) {
  return {{"eps", r.eps},
          {"L_quarter", r.L_quarter},
          {"L_half", r.L_half},
          {"L_full", r.L_full},
          {"delta_half", r.delta_half},
          {"n_ap", r.n_ap},
          {"n_ap_double", r.n_ap_double},
          {"n_ap_half", r.n_ap_half},
          {"n_hull", r.n_hull},
          {"n_hull_packing", r.n_hull_packing},
          {"count_bound_value", r.count_bound_value},
          {"sandwich_lower", r.sandwich_lower},
          {"sandwich_upper", r.sandwich_upper},
          {"count_bound", r.count_bound}};
}

void write_curve_csv(std::ostream& os, const LengthCurve& c) {
  os << "eps,L_lower,L_upper,window,resolved\n";
  for (const auto& s : c.samples) {
    os << fmt(s.eps) << ',' << fmt(s.L_lower) << ',' << fmt(s.L_upper) << ',' << fmt(s.window)
       << ',' << (s.resolved ? "true" : "false") << '\n';
  }
}

void write_covering_csv(std::ostream& os, const CoveringReport& r) {
  os << "eps,cover_upper,packing_lower\n";
  for (std::size_t k = 0; k < r.eps.size(); ++k)
    os << fmt(r.eps[k]) << ',' << r.counts[k].cover_upper << ',' << r.counts[k].packing_lower << '\n';
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qplab::cli::detail
