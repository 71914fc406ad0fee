#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dunkl/error.hpp"
#include "dunkl/paleywiener.hpp"
#include "dunkl/report.hpp"
#include "json.hpp"

using namespace dunkl;

namespace {
FunctionExpr spectrum(const char* body, std::size_t d = 1) { return FunctionExpr::parse(body, d, Side::frequency); }
}  // namespace

TEST_SUITE("paleywiener") {
  TEST_CASE("moment sequence of the unit band") {
    const MultiplicitySpec s({0.5});
    const ConvergenceSequence a = support_radius_spectral(s, spectrum("indicator_box(1)"), 20);
    REQUIRE(a.values.size() == 20);
    CHECK(a.values[0] == doctest::Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-10));
    CHECK(a.monotone);
    CHECK(std::abs(a.extrapolated - 1.0) < 2e-2);
  }

  TEST_CASE("support radius follows dilation and localization") {
    const MultiplicitySpec s({0.5});
    const double R1 = support_radius_spectral(s, spectrum("indicator_box(1)"), 40).extrapolated;
    const double R2 = support_radius_spectral(s, spectrum("indicator_box(2)"), 40).extrapolated;
    const double Rh = support_radius_spectral(s, spectrum("indicator_box(0.5)"), 40).extrapolated;
    CHECK(R2 > R1);
    CHECK(R2 / R1 == doctest::Approx(2.0).epsilon(2e-3));
    CHECK(R1 / Rh == doctest::Approx(2.0).epsilon(2e-3));
  }

  TEST_CASE("zero and unbounded spectra") {
    const MultiplicitySpec s({0.5});
    const ConvergenceSequence z = support_radius_spectral(s, spectrum("0*indicator_box(1)"), 10);
    CHECK(z.extrapolated == 0.0);
    const ConvergenceSequence g = support_radius_spectral(s, spectrum("exp(-x^2)"), 30);
    CHECK(g.divergent);
    CHECK(std::isinf(g.extrapolated));
  }

  TEST_CASE("spatial path on the zero function") {
    const MultiplicitySpec s({0.5});
    const ConvergenceSequence z =
        support_radius_spatial(s, FunctionExpr::parse("0", 1), 3, SpatialNorm::box(1, 20.0, 2.0, 16, false));
    for (double v : z.values) CHECK(v == 0.0);
  }

  TEST_CASE("inner radius of an annulus and its ordering") {
    const MultiplicitySpec s({0.5});
    const ToreResult t = tore_localization(s, spectrum("indicator_annulus(1, 2)"), 40, nullptr);
    CHECK(std::abs(t.lambda - 1.0) < 5e-2);
    CHECK(std::abs(t.radius - 2.0) < 5e-2);
    CHECK(t.sandwich_ok);
    CHECK_THROWS_AS(inner_radius(s, spectrum("0*indicator_box(1)"), 10, nullptr), Error);
    const ToreResult z = tore_localization(s, spectrum("0*indicator_box(1)"), 10, nullptr);
    CHECK_FALSE(z.inner_defined);
    CHECK(z.radius == 0.0);
  }

  TEST_CASE("heat series closed form at p = 2") {
    // ||f_n||^2 = C (e^{-2n} - e^{-8n}) / (2n) for the annulus 1 <= |x| <= 2, gamma = 1/2.
    const MultiplicitySpec s({0.5});
    const ConvergenceSequence h = heat_series_norm(s, spectrum("indicator_annulus(1, 2)"), 2.0, 10, nullptr);
    const double C = s.plancherel();
    for (std::size_t i = 0; i < h.values.size(); ++i) {
      const double n = h.indices[i];
      const double norm = std::sqrt(C * (std::exp(-2 * n) - std::exp(-8 * n)) / (2 * n));
      CHECK(h.values[i] == doctest::Approx(std::pow(norm, 1.0 / n)).epsilon(1e-8));
    }
    CHECK(vanishes_on_ball(h, 0.9));
    CHECK_FALSE(vanishes_on_ball(h, 1.2));
  }

  TEST_CASE("polynomial spectrum sup") {
    const MultiplicitySpec s({0.5});
    const ConvergenceSequence a =
        poly_spectrum_sup(s, spectrum("indicator_box(2)"), PolynomialSpec::neg_norm2(1), 2.0, 40, nullptr, PolyRoute::spectral);
    CHECK(std::abs(a.extrapolated - 4.0) < 8e-2);
    CHECK(polynomial_domain_verdict(a) == "outside");
    const ConvergenceSequence b =
        poly_spectrum_sup(s, spectrum("indicator_box(0.5)"), PolynomialSpec::neg_norm2(1), 2.0, 40, nullptr, PolyRoute::spectral);
    CHECK(polynomial_domain_verdict(b) == "inside");
    CHECK_THROWS_AS(poly_spectrum_sup(s, spectrum("indicator_box(1)"), PolynomialSpec::neg_norm2(1), 1.0, 10, nullptr,
                                      PolyRoute::spectral),
                    Error);
  }

  TEST_CASE("symmetric body validation") {
    CHECK_NOTHROW(SymmetricBodySpec::box({1.0, 2.0}).validate());
    CHECK_NOTHROW(SymmetricBodySpec::ball(2, 1.0, 32).validate());
    CHECK_THROWS_AS(SymmetricBodySpec::polytope({{1.0, 0.0}, {0.0, 1.0}}, {{0.5, 0.5}}).validate(), Error);
    CHECK_THROWS_AS(SymmetricBodySpec::polytope({{1.0, 0.0}, {-1.0, 0.0}}, {}).validate(), Error);
    CHECK_THROWS_AS(SymmetricBodySpec::polytope({{1.0, 0.0}, {-1.0, 0.0}}, {{2.0, 0.0}}).validate(), Error);
    const MultiplicitySpec s1({0.5});
    CHECK_THROWS_AS(symmetric_body_test(s1, spectrum("indicator_box(1)"), SymmetricBodySpec::box({1.0, 1.0}), 5, nullptr),
                    Error);
  }

  TEST_CASE("symmetric body sequence starts at the norm") {
    const MultiplicitySpec s({0.5});
    const EstimatorReport r = symmetric_body_test(s, spectrum("indicator_box(0.5)"), SymmetricBodySpec::box({1.0}), 20, nullptr);
    CHECK(r.verdicts.at("membership") == "inside");
    REQUIRE(!r.sequences.empty());
    CHECK(r.sequences.front().second.values.front() == doctest::Approx(r.values.at("norm_f")));
  }

  TEST_CASE("report serialization") {
    const MultiplicitySpec s({0.5});
    EstimatorReport r;
    r.estimator = "support_radius";
    r.gammas = {0.5};
    r.function = "indicator_box(1)";
    r.sequences.emplace_back("outer", support_radius_spectral(s, spectrum("exp(-x^2)"), 20));
    r.set_truth(1.0, 1.25);
    const auto j = nlohmann::json::parse(report_json(r, R"cfg({"k": 1})cfg"));
    CHECK(j.at("estimator") == "support_radius");
    CHECK(j.at("config").at("k") == 1);
    CHECK(j.at("error").get<double>() == doctest::Approx(0.25));
    CHECK(j.at("sequences").at("outer").at("extrapolated") == "inf");
    std::ostringstream csv;
    write_convergence_csv(csv, r.sequences.front().second);
    CHECK(csv.str().rfind("n,a_n,path\n", 0) == 0);
  }
}
