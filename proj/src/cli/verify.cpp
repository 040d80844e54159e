#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qplab/error.hpp"

namespace qplab::cli::detail {

namespace {

void check(SuiteReport& r, std::string name, double value, std::string expected, bool pass) {
  r.checks.push_back({std::move(name), value, std::move(expected), pass, false});
}

void note(SuiteReport& r, std::string name, double value, std::string expected) {
  r.checks.push_back({std::move(name), value, std::move(expected), true, true});
}

void golden_suite(SuiteReport& r, std::uint64_t seed) {
  const auto f = *preset("golden");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tau_dist(0.0, 100.0);

  double worst = 1.0;
  bool sandwich = true;
  for (int k = 0; k < 20; ++k) {
    const double tau = tau_dist(rng);
    const double d = translation_distance(f, tau);
    const double s = sup_oracle(f, tau, 1e4, 1e-2);
    sandwich = sandwich && s <= d && s >= 0.98 * d - 1e-3;
    worst = std::min(worst, s / d);
  }
  check(r, "oracle_sandwich_min_ratio", worst, "oracle in [0.98 D - 1e-3, D]", sandwich);

  double identity_error = 0.0;
  const TorusPoint origin(std::vector<double>(f.size(), 0.0));
  for (int k = 0; k < 10000; ++k) {
    const double tau = tau_dist(rng);
    identity_error = std::max(identity_error, std::abs(translation_distance(f, tau) -
                                                       hull_metric(f, orbit_angles(f, tau), origin)));
  }
  check(r, "hull_metric_identity_max_error", identity_error, "<= 1e-12", identity_error <= 1e-12);

  const auto coarse = equivalence_constants(f, 100000, seed, 5);
  const auto fine = equivalence_constants(f, 100000, seed, 20);
  const double drift = std::abs(fine.c1 / coarse.c1 - 1.0);
  check(r, "equivalence_c1", fine.c1, "> 0 and <= c2", fine.c1 > 0.0 && fine.c1 <= fine.c2);
  check(r, "equivalence_c1_drift_2^-5_to_2^-20", drift, "<= 0.2", drift <= 0.2);
  r.details["equivalence"] = {{"finest_2^-5", to_json(coarse)}, {"finest_2^-20", to_json(fine)}};

  std::vector<double> scales;
  for (int k = 2; k <= 7; ++k) scales.push_back(std::ldexp(1.0, -k));
  const auto cover = torus_covering_report(HullMetric(f), scales);
  check(r, "hull_dimension_upper", cover.upper_dim, "2 +- 0.2", std::abs(cover.upper_dim - 2.0) <= 0.2);
  check(r, "hull_dimension_lower", cover.lower_dim, "2 +- 0.2", std::abs(cover.lower_dim - 2.0) <= 0.2);
  r.details["covering"] = to_json(cover);

  Json sandwich_reports = Json::array();
  for (double eps : {0.4, 0.2}) {
    const auto report = sandwich_checks(f, eps);
    const std::string tag = "eps=" + fmt(eps);
    check(r, "sandwich_lower_" + tag, static_cast<double>(report.n_ap_double), "<= 2 N_eps(H)", report.sandwich_lower);
    check(r, "sandwich_upper_" + tag, static_cast<double>(report.n_hull), "<= 2 N^ap_{eps/2}", report.sandwich_upper);
    check(r, "count_bound_" + tag, static_cast<double>(report.n_ap), "<= 2 (2L/delta + 1)", report.count_bound);
    sandwich_reports.push_back(to_json(report));
  }
  r.details["sandwich"] = sandwich_reports;

  const auto eps = geometric_eps(0.4, 8, 2.0);
  const auto curve = length_curve(f, eps);
  const auto fit = fit_exponent(curve);
  check(r, "di_fit_slope", fit.slope, "in [0.85, 1.15]", fit.slope >= 0.85 && fit.slope <= 1.15);
  check(r, "exponent_lower_bound", fit.slope, ">= (n-1) - 0.3 = 0.7", fit.slope >= 0.7);
  check(r, "exponent_upper_bound", fit.slope, "<= 1 + 0.3", fit.slope <= 1.3);
  r.details["curve"] = to_json(curve);
  r.details["fit"] = to_json(fit);

  const auto at_tenth = measure_inclusion_length(f, 0.1);
  note(r, "inclusion_length_eps_0.1_lower", at_tenth.L_lower, "max gap of outer set");
  note(r, "inclusion_length_eps_0.1_upper", at_tenth.L_upper, "max gap of inner set");
  note(r, "lattice_inclusion_length_eps_0.1", lattice_inclusion_length(f, 0.1, 1000),
       "integer almost periods only");
}

void sqrt23_suite(SuiteReport& r) {
  const auto f = *preset("sqrt23");
  std::vector<double> eps;
  for (int k = 0; k <= 9; ++k) eps.push_back(0.4 * std::pow(2.0, -0.5 * k));
  const auto curve = length_curve(f, eps);
  const auto fit = fit_exponent(curve);
  check(r, "exponent_lower_bound_n3", fit.slope, ">= 1.7", fit.slope >= 1.7);
  r.details["sqrt23_curve"] = to_json(curve);
  r.details["sqrt23_fit"] = to_json(fit);
}

void diophantine_suite(SuiteReport& r) {
  const auto phi_cf = cf_expand(enclose_golden(256), 30);
  const bool all_ones = phi_cf.a0 == 1 && std::all_of(phi_cf.quotients.begin(), phi_cf.quotients.end(),
                                                      [](const BigInt& a) { return a == 1; });
  check(r, "cf_phi_30_ones", static_cast<double>(phi_cf.quotients.size()), "30 quotients = 1", all_ones);
  const auto sqrt2_cf = cf_expand(enclose_sqrt(2, 256), 30);
  const bool twos = sqrt2_cf.a0 == 1 && std::all_of(sqrt2_cf.quotients.begin(), sqrt2_cf.quotients.end(),
                                                    [](const BigInt& a) { return a == 2; });
  check(r, "cf_sqrt2_twos", static_cast<double>(sqrt2_cf.quotients.size()), "[1; 2, 2, ...]", twos);

  const std::vector<Real> phi{golden_ratio()};
  const auto b_phi = badness_score(phi, 100000);
  check(r, "badness_phi", b_phi.score, "0.38197 +- 1e-4 at q = 1",
        std::abs(b_phi.score - 0.38197) <= 1e-4 && b_phi.argmin_q == 1 && b_phi.score >= 0.38);
  const std::vector<Real> root2{sqrt_real(2)};
  const auto b_root2 = badness_score(root2, 100000);
  check(r, "badness_sqrt2", b_root2.score, "0.3431 +- 1e-3 at q = 2",
        std::abs(b_root2.score - 0.3431) <= 1e-3 && b_root2.argmin_q == 2);
  const auto q = best_simultaneous_denominator(phi, 0.01, 1000);
  check(r, "simdenom_phi_0.01", q ? static_cast<double>(*q) : -1.0, "= 55", q && *q == 55);

  const Real two_pi = two_pi_real();
  const std::vector<Real> lambda{two_pi, two_pi * golden_ratio()};
  const std::vector<Real> kappa{Real(0), pi_real()};
  const auto sol = kronecker_solve(lambda, kappa, 0.3, 1000.0);
  bool rechecked = false;
  if (sol) {
    const auto res = kronecker_residuals(lambda, kappa, sol->t);
    rechecked = std::all_of(res.begin(), res.end(), [](double v) { return v < 0.3; });
  }
  check(r, "kronecker_solution_rechecked", sol ? sol->t : -1.0, "residuals < 0.3", rechecked);
  const auto at17 = kronecker_residuals(lambda, kappa, 17.0);
  const double worst17 = *std::max_element(at17.begin(), at17.end());
  check(r, "kronecker_t17_admissible", worst17, "< 0.3", worst17 < 0.3);
}

}  // namespace

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
  SuiteReport r;
  r.suite = suite;
  if (suite == "golden") golden_suite(r, seed);
  else if (suite == "sqrt23") sqrt23_suite(r);
  else if (suite == "diophantine") diophantine_suite(r);
  else if (suite == "all") {
    golden_suite(r, seed);
    sqrt23_suite(r);
    diophantine_suite(r);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "' (golden, sqrt23, diophantine, all)");
  }
  return r;
}

}  // namespace qplab::cli::detail
