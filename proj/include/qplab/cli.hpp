#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qplab::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kBudgetExhausted = 2,
  kVerificationFailed = 3,
};

/// Fully resolved settings of one invocation. Keys of `key = value` config
/// files and long flag names coincide (see apply_setting).
struct RunConfig {
  std::string command;
  std::string signal;
  std::string eps;     ///< "a,b,c" or "start:count:factor"
  std::string window;  ///< "lo:hi"
  double step = 0.0;   ///< 0 selects eps / (4C)
  int depth = 30;
  std::uint64_t qmax = 100000;
  double delta = 0.01;
  std::uint64_t grid = 0;  ///< per-axis grid override for `dimension`
  std::uint64_t seed = 7;
  std::string out;
  std::string format = "json";
  std::string t;       ///< evaluation times for `eval`
  std::string x;       ///< cf input
  std::string alpha;
  std::string lambda;
  std::string kappa;
  double tmax = 1000.0;
  std::string suite = "golden";
  unsigned precision_bits = 256;
  std::uint64_t max_grid = std::uint64_t{1} << 40;
  std::uint64_t qcap = 2'000'000'000;
  std::size_t min_hits = 8;
  double window_factor = 4.0;
  int max_doublings = 20;
  std::size_t samples = 100000;
};

/// Defaults, with precision bits taken from QPLAB_PRECISION_BITS when set.
RunConfig default_config();

/// Sets one field from its textual value. Returns false for an unknown key;
/// throws qplab::Error(InvalidArgument) for a malformed or non-positive value.
bool apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines; `#` starts a comment. Throws on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Every field as (key, value) text, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

/// Executes the command, writing the report to `out` (or config.out) and
/// diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// argv front end: flags override config-file values, which override defaults.
int main_entry(int argc, char** argv);

}  // namespace qplab::cli
