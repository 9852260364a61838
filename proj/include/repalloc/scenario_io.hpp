#ifndef REPALLOC_SCENARIO_IO_HPP
#define REPALLOC_SCENARIO_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "repalloc/model.hpp"
#include "repalloc/simulation.hpp"

namespace repalloc {

/// Malformed scenario document. The message starts with the JSON path of
/// the offending value, e.g. "nodes[2].v0: expected a decimal string".
class ParseError : public Error {
public:
	using Error::Error;
};

/// Scenario document:
///
///   {
///     "nodes":    [{"id": "a", "v0": "0.05", "delta_dec": "0.1"}, ...],
///     "entities": [{"id": "e", "cost": "6", "delta_inc": {"default": "0.4"}}, ...],
///     "budget":   "19"            // or null for no budget constraint
///   }
///
/// Every number is a string (decimal "0.05" or fraction "1/20"); JSON
/// numbers are rejected so nothing passes through binary floating point.
/// "delta_inc" maps node ids to rates; a "default" entry covers nodes not
/// listed.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical document; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// CSV with header "t,<node ids...>,<entity ids...>", one row per step.
/// Health cells use Rational::to_string; entity cells hold the targeted
/// node id or "-".
void write_trace_csv(std::ostream& out, const Scenario& scenario, const Trace& trace);
std::string trace_to_csv(const Scenario& scenario, const Trace& trace);

/// Inverse of write_trace_csv. Throws ParseError on a malformed table.
Trace read_trace_csv(std::istream& in, const Scenario& scenario);

} // namespace repalloc

#endif
