#pragma once

// Document formats: divisor input files, cohomology reports, sequence and
// Gysin inputs, and the built-in presets.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ellcoh/engine.hpp"
#include "ellcoh/local_model.hpp"
#include "ellcoh/sequences.hpp"

namespace ellcoh::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "ellcoh 0.1.0";

/// Parses and schema-checks a divisor document.  Throws PARSE_ERROR with the
/// line and column for malformed text, or the JSON pointer of the offending
/// value for schema violations.
DivisorSpec parse_divisor(std::string_view text);
DivisorSpec divisor_from_json(const Json& doc);
Json divisor_to_json(const DivisorSpec& spec);
/// Canonical text form: two-space indented JSON plus a trailing newline.
std::string dump_divisor(const DivisorSpec& spec);

enum class Route { General, Dim4 };

Json report_to_json(const CohomologyReport& report, FieldTag field, Route route);
CohomologyReport report_from_json(const Json& doc);

std::string format_table(const CohomologyReport& report, bool with_checks);
std::string format_csv(const CohomologyReport& report, bool with_checks);
std::string format_complex_log_table(const CohomologyReport& report);
std::string format_checks(const std::vector<Check>& checks);

struct GysinInput {
  BettiVector base_betti;
  DegreeRanks cup_e_ranks;
};

GysinInput parse_gysin(std::string_view text);
SequenceSpec parse_sequence(std::string_view text);

std::string format_solution(const SequenceSpec& spec, const SequenceSolution& sol);
std::string format_verify_local(const local::LocalIsomorphismReport& report);
Json verify_local_to_json(const local::LocalIsomorphismReport& report);

/// Names accepted by preset(); lefschetz-n<k> works for every k >= 1.
std::vector<std::string> preset_names();
DivisorSpec preset(std::string_view name);

}  // namespace ellcoh::io
