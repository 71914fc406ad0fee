#include <cmath>
#include <optional>

#include "doctest.h"
#include "dunkl/error.hpp"
#include "dunkl_tools/acceptance.hpp"
#include "dunkl_tools/runconfig.hpp"
#include "json.hpp"

using dunkl::Error;
using dunkl::ErrorCode;
using nlohmann::json;

namespace {

json first_report(const std::string& cfg) {
  const auto out = dunkl::cli::run_estimate(cfg);
  REQUIRE(!out.empty());
  return json::parse(out.front().json);
}

std::optional<ErrorCode> code_of(const std::string& cfg) {
  try {
    dunkl::cli::run_estimate(cfg);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("estimate runs are byte-identical") {
    const std::string cfg = R"cfg({
      "spec": {"gammas": [0.5]},
      "function": {"side": "frequency", "body": "indicator_annulus(1, 2)"},
      "estimators": [{"id": "tore", "type": "tore", "n_max": 30}]
    })cfg";
    const auto a = dunkl::cli::run_estimate(cfg), b = dunkl::cli::run_estimate(cfg);
    REQUIRE(a.size() == 1);
    CHECK(a[0].json == b[0].json);
    CHECK(a[0].csv == b[0].csv);
    const json j = json::parse(a[0].json);
    CHECK(j.contains("config"));
    CHECK(j.contains("sequences"));
  }

  TEST_CASE("zero, unbounded and sup-norm configurations") {
    const json z = first_report(R"cfg({"spec": {"d": 1, "gamma": 0.5},
      "function": {"side": "frequency", "body": "0*indicator_box(1)"},
      "estimators": [{"id": "r", "type": "support_radius", "n_max": 10}]})cfg");
    CHECK(z.at("sequences").begin()->at("extrapolated") == 0.0);

    const json g = first_report(R"cfg({"spec": {"gammas": [0.5]},
      "function": {"side": "frequency", "body": "exp(-x^2)"},
      "estimators": [{"id": "r", "type": "support_radius", "n_max": 30}]})cfg");
    CHECK(g.at("sequences").begin()->at("extrapolated") == "inf");

    const json h = first_report(R"cfg({"spec": {"gammas": [0.5]},
      "function": {"side": "frequency", "body": "indicator_annulus(1, 2)"},
      "estimators": [{"id": "h", "type": "heat_series", "n_max": 20, "p": "inf", "ball_radius": 0.9}]})cfg");
    CHECK(h.at("p") == "inf");
  }

  TEST_CASE("configuration errors carry codes") {
    CHECK(code_of("{not json") == ErrorCode::parse);
    CHECK(code_of(R"cfg({"spec": {"gammas": [-0.5]}, "function": "1", "estimators": []})cfg") == ErrorCode::invalid_argument);
    CHECK(code_of(R"cfg({"spec": {"gammas": [0.5]},
      "function": {"side": "frequency", "body": "indicator_box(1)"},
      "estimators": [{"id": "x", "type": "nonsense"}]})cfg").has_value());
    CHECK(code_of(R"cfg({"spec": {"gammas": [0.5]}, "function": {"body": "sin(", "side": "space"}, "estimators": []})cfg") ==
          ErrorCode::parse);
  }

  TEST_CASE("transform export") {
    const std::string csv = dunkl::cli::run_transform(R"cfg({"spec": {"gammas": [0.0]},
      "function": {"side": "space", "body": "exp(-x^2/2)"},
      "grid": {"space_extent": 9, "frequency_extent": 9}, "direction": "forward"})cfg");
    CHECK(csv.rfind("x1,re,im\n", 0) == 0);
  }

  TEST_CASE("selftest catalogue") {
    const auto& c = dunkl::acceptance::catalog();
    CHECK(c.size() == 13);
    std::vector<dunkl::acceptance::CheckResult> got;
    dunkl::acceptance::Options opt;
    opt.filter = "kernel-eigen";
    dunkl::acceptance::run(opt, [&](const dunkl::acceptance::CheckResult& r) { got.push_back(r); });
    REQUIRE(got.size() == 1);
    CHECK(got[0].pass);
  }
}
