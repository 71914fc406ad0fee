#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "dunkl/error.hpp"
#include "dunkl/expr.hpp"
#include "dunkl/multiplicity.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/sampled.hpp"
#include "dunkl/special.hpp"

using namespace dunkl;

TEST_SUITE("core") {
  TEST_CASE("weight") {
    const double x1[] = {5.0};
    CHECK(weight_eval(MultiplicitySpec({0.0}), x1) == 1.0);
    const double x2[] = {2.0};
    CHECK(weight_eval(MultiplicitySpec({1.0}), x2) == doctest::Approx(4.0));
    const double x3[] = {2.0, 3.0};
    CHECK(weight_eval(MultiplicitySpec({0.5, 1.0}), x3) == doctest::Approx(18.0));
    const double zero[] = {0.0};
    CHECK(weight_eval(MultiplicitySpec({0.0}), zero) == 1.0);
  }

  TEST_CASE("multiplicity validation") {
    CHECK_THROWS_AS(MultiplicitySpec({-0.1}), Error);
    CHECK_THROWS_AS(MultiplicitySpec(std::vector<double>{}), Error);
  }

  TEST_CASE("mehta constant against quadrature of the Gaussian weight") {
    for (double g : {0.0, 0.5, 1.0, 1.5}) {
      AxisParams a;
      a.extent = 12.0;
      a.panel_width = 0.5;
      a.nodes_per_panel = 20;
      const AxisRule r = make_axis(a);
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::exp(-r.nodes[i] * r.nodes[i]) * std::pow(std::abs(r.nodes[i]), 2 * g);
      CHECK(mehta_constant(MultiplicitySpec({g})) == doctest::Approx(1.0 / s).epsilon(1e-12));
    }
    CHECK(mehta_constant(MultiplicitySpec({0.0})) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
    CHECK(mehta_constant(MultiplicitySpec({0.5, 0.5})) == doctest::Approx(1.0));
  }

  TEST_CASE("plancherel constant") {
    const MultiplicitySpec s({0.5, 1.0});
    const double ck = 1.0 / (std::tgamma(1.0) * std::tgamma(1.5));
    CHECK(s.plancherel() == doctest::Approx(ck * ck / std::pow(4.0, 1.5 + 1.0)));
  }

  TEST_CASE("normalized Bessel") {
    CHECK(normalized_bessel(2.3, 0.0) == 1.0);
    CHECK(normalized_bessel(-0.5, std::numbers::pi) == doctest::Approx(-1.0));
    CHECK(normalized_bessel(0.5, std::numbers::pi / 2) == doctest::Approx(2.0 / std::numbers::pi));
    // Library J_alpha as an independent oracle over both evaluation routes.
    for (double a : {0.0, 0.25, 0.5, 1.0, 1.5, 2.7})
      for (double x : {0.3, 1.0, 2.5, 7.0, 19.0}) {
        const double ref = std::tgamma(a + 1.0) * std::pow(2.0 / x, a) * std::cyl_bessel_j(a, x);
        CHECK(normalized_bessel(a, x) == doctest::Approx(ref).epsilon(1e-11));
      }
    // Imaginary argument: j_{-1/2}(i t) = cosh t.
    CHECK(std::abs(normalized_bessel(-0.5, cplx(0.0, 2.0)) - std::cosh(2.0)) < 1e-12);
    CHECK_THROWS_AS(normalized_bessel(-0.7, 1.0), Error);
  }

  TEST_CASE("Gauss-Jacobi rules") {
    auto sum = [](const Rule1D& r) {
      double s = 0.0;
      for (double w : r.weights) s += w;
      return s;
    };
    CHECK(sum(gauss_jacobi_rule(1, 0.0)) == doctest::Approx(2.0));
    CHECK(sum(gauss_jacobi_rule(8, -0.5)) == doctest::Approx(std::numbers::pi).epsilon(1e-13));
    CHECK(sum(gauss_jacobi_rule(8, 0.5)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
    // Exact for t^6 against (1-t^2)^{0.3}: Beta-function oracle.
    const Rule1D r = gauss_jacobi_rule(5, 0.3);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 6);
    CHECK(s == doctest::Approx(std::beta(3.5, 1.3)).epsilon(1e-12));
    CHECK_THROWS_AS(gauss_jacobi_rule(4, -1.0), Error);
  }

  TEST_CASE("grid volume and ordering") {
    AxisParams a;
    a.extent = 3.0;
    a.panel_width = 0.7;
    a.nodes_per_panel = 6;
    a.breakpoints = {1.1, -2.0};
    const QuadratureGrid g = QuadratureGrid::uniform(2, a);
    CHECK(g.volume() == doctest::Approx(36.0).epsilon(1e-12));
    const auto& n = g.axis(0).nodes;
    for (std::size_t i = 1; i < n.size(); ++i) CHECK(n[i] > n[i - 1]);
    for (double w : g.axis(1).weights) CHECK(w > 0.0);
  }

  TEST_CASE("expression grammar") {
    const FunctionExpr f = FunctionExpr::parse("x1^2*exp(-r2) + 3*sin(x2)", 2);
    const double x[] = {0.3, -1.2};
    const double ref = 0.09 * std::exp(-(0.09 + 1.44)) + 3 * std::sin(-1.2);
    CHECK(std::abs(f(x) - ref) < 1e-14);
    CHECK(f.differentiable());
    CHECK_FALSE(FunctionExpr::parse("indicator_box(1)*x", 1).differentiable());
    CHECK_THROWS_AS(FunctionExpr::parse("x +* 2", 1), Error);
    CHECK_THROWS_AS(FunctionExpr::parse("foo(x)", 1), Error);
    try {
      FunctionExpr::parse("x3", 2);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parse);
    }
  }

  TEST_CASE("analytic partials agree with finite differences") {
    const char* bodies[] = {"exp(-r2)*cos(x1)", "x1*x2^3/(1+r2)^2", "bessel(1, 2*x1)*exp(-x2^2)", "sqrt(1+x1^2)*sin(x2)"};
    for (const char* b : bodies) {
      const FunctionExpr f = FunctionExpr::parse(b, 2);
      for (std::size_t j = 0; j < 2; ++j) {
        const FunctionExpr df = f.partial(j);
        double x[] = {0.37, -0.81};
        const double h = 1e-5;
        double xp[] = {x[0], x[1]}, xm[] = {x[0], x[1]};
        xp[j] += h;
        xm[j] -= h;
        const cplx fd = (f(xp) - f(xm)) / (2 * h);
        CHECK(std::abs(df(x) - fd) < 1e-8);
      }
    }
    CHECK_THROWS_AS(FunctionExpr::parse("indicator_ball(1)", 2).partial(0), Error);
  }

  TEST_CASE("support extents and breakpoints") {
    const FunctionExpr g = FunctionExpr::parse("indicator_annulus(1, 2)", 1, Side::frequency);
    REQUIRE(g.support_extent(0));
    CHECK(*g.support_extent(0) == 2.0);
    CHECK_FALSE(FunctionExpr::parse("exp(-x^2)", 1).support_extent(0));
  }

  TEST_CASE("function spec files") {
    const FunctionSpec s = parse_function_spec("# comment\nname = demo\nside = frequency\ndim = 1\nbody = indicator_box(1)\n");
    CHECK(s.side == Side::frequency);
    CHECK(s.build(1).side() == Side::frequency);
    CHECK_THROWS_AS(s.build(2), Error);
    CHECK_THROWS_AS(parse_function_spec("side = space"), Error);
  }

  TEST_CASE("sampled CSV round trip") {
    AxisParams a;
    a.extent = 2.0;
    a.panel_width = 1.0;
    a.nodes_per_panel = 3;
    auto grid = std::make_shared<const QuadratureGrid>(QuadratureGrid::uniform(2, a));
    const SampledFunction s = SampledFunction::sample(grid, FunctionExpr::parse("x1 + i*x2", 2));
    std::stringstream ss;
    write_csv(ss, s);
    const SampledFunction back = read_csv(ss, grid, Side::space);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.values[i] == s.values[i]);
  }
}
