#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "oclp/measures.hpp"
#include "oclp/model.hpp"
#include "oclp/report.hpp"
#include "oclp/tauberian.hpp"

namespace oclp {

/// Model CSV contract: header `state,action,next_state,cost`, one row per
/// admissible pair, costs as decimal reals. Errors carry 1-based line
/// numbers.
FiniteControlSystem load_table(const std::string& path);
FiniteControlSystem parse_table(const std::string& text);

/// Inverse of load_table: rows in canonical pair order, so loading the output
/// reproduces an identical system.
std::string table_to_csv(const FiniteControlSystem& system);

/// `pair_id,state,action,weight`
std::string measure_to_csv(const FiniteControlSystem& system, const OccupationalMeasure& gamma);

/// `parameter,value,reference,abs_error`
std::string sweep_to_csv(const SweepResult& sweep);

nlohmann::ordered_json report_to_json(const VerificationReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace oclp
