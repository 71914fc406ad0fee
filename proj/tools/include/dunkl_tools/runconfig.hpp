#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dunkl::cli {

/// One estimator's serialized output.
struct EstimateOutput {
  std::string id;
  std::string json;                                       // report document
  std::vector<std::pair<std::string, std::string>> csv;   // (file stem, CSV text) per sequence
};

/// Runs every estimator of a JSON run config. Relative `function_file`
/// paths resolve against `base_dir`. Throws dunkl::Error on bad input.
std::vector<EstimateOutput> run_estimate(const std::string& config_text, const std::string& base_dir = ".");

/// Writes `<dir>/<id>.json` and `<dir>/<stem>.csv`; returns the written paths.
std::vector<std::string> write_outputs(const std::vector<EstimateOutput>& outputs, const std::string& dir);

/// Forward, inverse or round-trip samples of the configured function as CSV.
std::string run_transform(const std::string& config_text, const std::string& base_dir = ".");

}  // namespace dunkl::cli
