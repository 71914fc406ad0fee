#pragma once

#include <ostream>
#include <string>

#include "dunkl/extrapolate.hpp"
#include "dunkl/paleywiener.hpp"

namespace dunkl {

/// JSON text of a report (2-space indent, sorted keys). Non-finite numbers are
/// written as the strings "inf", "-inf", "nan". `config_json`, when non-empty,
/// must be a JSON document and is embedded verbatim under "config".
std::string report_json(const EstimatorReport& report, const std::string& config_json = {});

/// JSON object for one sequence (same encoding as inside report_json).
std::string sequence_json(const ConvergenceSequence& seq);

/// CSV table with header `n,a_n,path`; values in %.17g.
void write_convergence_csv(std::ostream& os, const ConvergenceSequence& seq);

}  // namespace dunkl
