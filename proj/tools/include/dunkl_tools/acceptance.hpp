#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dunkl::acceptance {

struct CheckResult {
  int id = 0;
  std::string name;  // stable identifier, e.g. "kernel-bound"
  std::string tag;   // module tag used by --filter
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::string filter;               // empty: everything; otherwise a tag or a check name
  std::vector<std::string> inject;  // fault injection by check name
};

struct CheckInfo {
  int id;
  std::string name;
  std::string tag;
};

/// The registered checks in id order.
const std::vector<CheckInfo>& catalog();

/// Runs the selected checks in id order. `on_result` (optional) sees each result as it completes.
std::vector<CheckResult> run(const Options& opt, const std::function<void(const CheckResult&)>& on_result = {});

/// Selftest summary as JSON text.
std::string summary_json(const std::vector<CheckResult>& results, double total_seconds);

}  // namespace dunkl::acceptance
