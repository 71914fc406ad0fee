#include "dunkl/report.hpp"

#include <cmath>
#include <cstdio>
#include "json.hpp"

#include "dunkl/error.hpp"

namespace dunkl {
namespace {

using json = nlohmann::json;

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

json to_json(const ConvergenceSequence& s) {
  json j;
  j["path"] = std::string(to_string(s.path));
  j["n"] = numbers(s.indices);
  j["a_n"] = numbers(s.values);
  j["has_limit"] = s.has_limit;
  j["extrapolated"] = s.has_limit ? number(s.extrapolated) : json(nullptr);
  j["confidence"] = s.has_limit ? number(s.confidence) : json(nullptr);
  j["model"] = s.model;
  j["divergent"] = s.divergent;
  j["low_confidence"] = s.low_confidence;
  j["monotone"] = s.monotone;
  j["oscillating"] = s.oscillating;
  j["liminf"] = number(s.liminf);
  j["limsup"] = number(s.limsup);
  j["notes"] = s.notes;
  return j;
}

}  // namespace

std::string sequence_json(const ConvergenceSequence& seq) { return to_json(seq).dump(2); }

std::string report_json(const EstimatorReport& r, const std::string& config_json) {
  json j;
  j["estimator"] = r.estimator;
  j["spec"] = {{"d", r.gammas.size()}, {"gammas", numbers(r.gammas)}};
  j["function"] = r.function;
  j["p"] = r.p ? number(*r.p) : json(nullptr);
  json seqs = json::object();
  for (const auto& [name, s] : r.sequences) seqs[name] = to_json(s);
  j["sequences"] = seqs;
  j["ground_truth"] = r.ground_truth ? number(*r.ground_truth) : json(nullptr);
  j["error"] = r.error ? number(*r.error) : json(nullptr);
  j["verdicts"] = r.verdicts;
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = number(v);
  j["values"] = values;
  j["notes"] = r.notes;
  if (!config_json.empty()) {
    try {
      j["config"] = json::parse(config_json);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::parse, std::string("embedded config is not JSON: ") + e.what());
    }
  }
  return j.dump(2) + "\n";
}

void write_convergence_csv(std::ostream& os, const ConvergenceSequence& seq) {
  os << "n,a_n,path\n";
  char buf[64];
  const auto path = to_string(seq.path);
  for (std::size_t i = 0; i < seq.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", seq.indices[i], seq.values[i]);
    os << buf << ',' << path << '\n';
  }
}

}  // namespace dunkl
