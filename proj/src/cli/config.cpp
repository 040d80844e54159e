#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qplab/cli.hpp"
#include "qplab/error.hpp"

namespace qplab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw Error(ErrorKind::InvalidArgument, key + ": not a number: '" + value + "'");
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  // Accept integral values written in exponent form, e.g. 1e5.
  std::uint64_t v = 0;
  const auto* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, v);
  if (res.ec == std::errc() && res.ptr == end) return v;
  const double d = to_double(key, value);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19)
    throw Error(ErrorKind::InvalidArgument, key + ": not a non-negative integer: '" + value + "'");
  return static_cast<std::uint64_t>(d);
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw Error(ErrorKind::InvalidArgument, key + " must be positive");
  return v;
}

std::uint64_t positive(const std::string& key, std::uint64_t v) {
  if (v == 0) throw Error(ErrorKind::InvalidArgument, key + " must be positive");
  return v;
}

// Long flag names, in report order.
const std::vector<std::string>& keys() {
  static const std::vector<std::string> k = {
      "command", "signal",   "eps",      "window",         "step",     "depth",
      "qmax",    "delta",    "grid",     "seed",           "out",      "format",
      "t",       "x",        "alpha",    "lambda",         "kappa",    "tmax",
      "suite",   "precision-bits", "max-grid", "qcap",     "min-hits", "window-factor",
      "max-doublings", "samples"};
  return k;
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  if (const char* env = std::getenv("QPLAB_PRECISION_BITS"); env && *env) {
    apply_setting(c, "precision-bits", env);
  }
  return c;
}

bool apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "command") c.command = value;
  else if (key == "signal") c.signal = value;
  else if (key == "eps") c.eps = value;
  else if (key == "window") c.window = value;
  else if (key == "step") {
    c.step = to_double(key, value);
    if (c.step < 0.0) throw Error(ErrorKind::InvalidArgument, "step must be positive (0 = automatic)");
  } else if (key == "depth") {
    c.depth = static_cast<int>(positive(key, to_u64(key, value)));
  } else if (key == "qmax") c.qmax = positive(key, to_u64(key, value));
  else if (key == "delta") c.delta = positive(key, to_double(key, value));
  else if (key == "grid") c.grid = to_u64(key, value);
  else if (key == "seed") c.seed = to_u64(key, value);
  else if (key == "out") c.out = value;
  else if (key == "format") {
    if (value != "csv" && value != "json")
      throw Error(ErrorKind::InvalidArgument, "format must be csv or json");
    c.format = value;
  } else if (key == "t") c.t = value;
  else if (key == "x") c.x = value;
  else if (key == "alpha") c.alpha = value;
  else if (key == "lambda") c.lambda = value;
  else if (key == "kappa") c.kappa = value;
  else if (key == "tmax") c.tmax = positive(key, to_double(key, value));
  else if (key == "suite") c.suite = value;
  else if (key == "precision-bits") {
    const auto bits = to_u64(key, value);
    if (bits < 32 || bits > 1 << 16)
      throw Error(ErrorKind::InvalidArgument, "precision-bits must lie in [32, 65536]");
    c.precision_bits = static_cast<unsigned>(bits);
  } else if (key == "max-grid") c.max_grid = positive(key, to_u64(key, value));
  else if (key == "qcap") c.qcap = positive(key, to_u64(key, value));
  else if (key == "min-hits") c.min_hits = positive(key, to_u64(key, value));
  else if (key == "window-factor") c.window_factor = positive(key, to_double(key, value));
  else if (key == "max-doublings") c.max_doublings = static_cast<int>(to_u64(key, value));
  else if (key == "samples") c.samples = positive(key, to_u64(key, value));
  else return false;
  return true;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidArgument,
                  path + ":" + std::to_string(number) + ": expected `key = value`");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
  return {
      {"command", c.command},
      {"signal", c.signal},
      {"eps", c.eps},
      {"window", c.window},
      {"step", format_double(c.step)},
      {"depth", std::to_string(c.depth)},
      {"qmax", std::to_string(c.qmax)},
      {"delta", format_double(c.delta)},
      {"grid", std::to_string(c.grid)},
      {"seed", std::to_string(c.seed)},
      {"out", c.out},
      {"format", c.format},
      {"t", c.t},
      {"x", c.x},
      {"alpha", c.alpha},
      {"lambda", c.lambda},
      {"kappa", c.kappa},
      {"tmax", format_double(c.tmax)},
      {"suite", c.suite},
      {"precision-bits", std::to_string(c.precision_bits)},
      {"max-grid", std::to_string(c.max_grid)},
      {"qcap", std::to_string(c.qcap)},
      {"min-hits", std::to_string(c.min_hits)},
      {"window-factor", format_double(c.window_factor)},
      {"max-doublings", std::to_string(c.max_doublings)},
      {"samples", std::to_string(c.samples)},
  };
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Almost periods, inclusion lengths and hull dimensions of quasiperiodic signals"};
  std::string command;
  std::string config_path;
  app.add_option("command", command,
                 "eval | scan | length-curve | di-fit | cf | badness | simdenom | kronecker | "
                 "dimension | verify");
  app.add_option("--config", config_path, "key = value settings file");

  const std::map<std::string, std::string> help = {
      {"signal", "signal spec: RE+IMi@LAMBDA terms or a preset (golden, golden1, sqrt23, periodic)"},
      {"eps", "eps list a,b,c or geometric range start:count:factor"},
      {"window", "scan window lo:hi"},
      {"step", "scan step (default eps/(4C))"},
      {"depth", "continued fraction depth"},
      {"qmax", "denominator search bound"},
      {"delta", "simultaneous approximation tolerance"},
      {"grid", "points per torus axis for `dimension` (default: density rule)"},
      {"seed", "random seed"},
      {"out", "output path (default stdout)"},
      {"format", "csv or json"},
      {"t", "evaluation times a,b,c"},
      {"x", "number to expand: phi, sqrt2, sqrt3, a/b, decimal"},
      {"alpha", "real tuple a,b,c (constants allowed: phi, sqrt2, 2pi*phi, ...)"},
      {"lambda", "Kronecker frequencies"},
      {"kappa", "Kronecker targets"},
      {"tmax", "Kronecker search horizon"},
      {"suite", "verification suite: golden, sqrt23, diophantine, all"},
      {"precision-bits", "enclosure precision for cf (env QPLAB_PRECISION_BITS)"},
      {"max-grid", "grid point budget"},
      {"qcap", "denominator budget"},
      {"min-hits", "almost-period intervals needed before the window stops growing"},
      {"window-factor", "initial window width times eps"},
      {"max-doublings", "window doublings allowed"},
      {"samples", "equivalence-constant sample pairs"},
  };
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;
  for (const auto& key : keys()) {
    if (key == "command") continue;
    auto it = help.find(key);
    options.emplace_back(key, app.add_option("--" + key, values[key],
                                             it == help.end() ? std::string() : it->second));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  RunConfig config;
  try {
    config = default_config();
    if (!config_path.empty()) {
      for (const auto& [key, value] : read_config_file(config_path)) {
        if (!apply_setting(config, key, value))
          throw Error(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
      }
    }
    for (const auto& [key, option] : options) {
      if (option->count() > 0) apply_setting(config, key, values[key]);
    }
    if (!command.empty()) config.command = command;
  } catch (const Error& e) {
    std::cerr << "qplab: " << e.what() << '\n';
    return kInputError;
  }
  return run(config, std::cout, std::cerr);
}

}  // namespace qplab::cli
