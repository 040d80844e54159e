#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qplab/almost_periods.hpp"
#include "qplab/cli.hpp"
#include "qplab/dimension.hpp"
#include "qplab/diophantine.hpp"

namespace qplab::cli::detail {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; "nan"/"inf" spelled out.
std::string fmt(double v);

Json config_json(const RunConfig& config);
/// `# key=value` lines carrying the resolved config at the top of a CSV file.
void write_csv_preamble(std::ostream& os, const RunConfig& config);

Json to_json(const QuasiperiodicSignal& f);
Json to_json(const IntervalSet& s);
Json to_json(const LengthSample& s);
Json to_json(const LengthCurve& c);
Json to_json(const ExponentFit& fit);
Json to_json(const ContinuedFraction& cf);
Json to_json(const BadnessReport& r);
Json to_json(const CoveringReport& r);
Json to_json(const EquivalenceConstants& c);
Json to_json(const SandwichReport& r);

void write_curve_csv(std::ostream& os, const LengthCurve& c);
void write_covering_csv(std::ostream& os, const CoveringReport& r);

/// Report text for a JSON document: two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace qplab::cli::detail
