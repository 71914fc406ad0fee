#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dunkl/conv.hpp"
#include "dunkl/error.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/transform.hpp"

using namespace dunkl;

namespace {
double sq(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r += v * v;
  return r;
}
double max_err(const SampledFunction& s, const std::function<cplx(std::span<const double>)>& ref) {
  std::vector<double> x(s.grid->dim());
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.grid->point(i, x);
    m = std::max(m, std::abs(s.values[i] - ref(x)));
  }
  return m;
}
}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("classical Gaussian pair at gamma = 0") {
    const MultiplicitySpec s({0.0});
    const TransformPlan plan = TransformPlan::automatic(s, 9.0, 9.0);
    const SampledFunction F = plan.forward(FunctionExpr::parse("exp(-x^2/2)", 1));
    CHECK(max_err(F, [](std::span<const double> y) { return std::sqrt(2 * std::numbers::pi) * std::exp(-y[0] * y[0] / 2); }) < 1e-12);
  }

  TEST_CASE("heat kernel pair and round trip") {
    const MultiplicitySpec s({0.5, 1.0});
    const TransformPlan plan = TransformPlan::automatic(s, 12.0, 6.0);
    const FunctionExpr E = HeatKernel(s, 1.0).expr();
    const SampledFunction F = plan.forward(E);
    CHECK(max_err(F, [](std::span<const double> y) { return std::exp(-sq(y)); }) < 1e-7);
    CHECK(max_err(plan.inverse(F), [&](std::span<const double> x) { return E(x); }) < 1e-8);
  }

  TEST_CASE("kernel cache matches on-demand evaluation") {
    const MultiplicitySpec s({0.7});
    const TransformPlan plan = TransformPlan::automatic(s, 6.0, 6.0);
    const auto& xs = plan.space_grid()->axis(0).nodes;
    const auto& ys = plan.frequency_grid()->axis(0).nodes;
    for (std::size_t a = 0; a < ys.size(); a += 17)
      for (std::size_t b = 0; b < xs.size(); b += 13)
        CHECK(std::abs(plan.kernel_entry(0, a, b) - kernel_1d(0.7, cplx(0.0, -ys[a]), xs[b])) < 1e-14);
  }

  TEST_CASE("linearity") {
    const MultiplicitySpec s({0.5});
    const TransformPlan plan = TransformPlan::automatic(s, 9.0, 9.0);
    const FunctionExpr f = FunctionExpr::parse("exp(-x^2/2)", 1), g = FunctionExpr::parse("x*exp(-x^2)", 1);
    SampledFunction lhs = plan.forward(f.scaled(2.0) + g.scaled(cplx(0.0, -3.0)));
    SampledFunction rhs = 2.0 * plan.forward(f);
    rhs += cplx(0.0, -3.0) * plan.forward(g);
    CHECK((lhs - rhs).max_abs() < 1e-12);
  }

  TEST_CASE("inverse of the band indicator at gamma = 0 is a sinc") {
    const MultiplicitySpec s({0.0});
    const FunctionExpr g = FunctionExpr::parse("indicator_box(1)", 1, Side::frequency);
    const TransformPlan plan = TransformPlan::automatic(s, 10.0, 1.0, {}, {-1.0, 1.0});
    const SampledFunction f = plan.inverse(g);
    CHECK(max_err(f, [](std::span<const double> y) { return std::sin(y[0]) / (std::numbers::pi * y[0]); }) < 1e-12);
    CHECK(plan.inverse(FunctionExpr::parse("0", 1, Side::frequency)).max_abs() == 0.0);
  }

  TEST_CASE("weighted norms") {
    const MultiplicitySpec half({0.5});
    CHECK(lp_norm(half, FunctionExpr::parse("indicator_box(1)", 1), 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(MultiplicitySpec({0.0, 0.0}), FunctionExpr::parse("exp(-r2)", 2), INFINITY) == doctest::Approx(1.0));
    CHECK(lp_norm(MultiplicitySpec({0.0}), FunctionExpr::parse("exp(-x^2)", 1), 2.0) ==
          doctest::Approx(std::pow(std::numbers::pi / 2, 0.25)).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(half, FunctionExpr::parse("exp(-x^2)", 1), 0.5), Error);
  }

  TEST_CASE("Plancherel defect") {
    const MultiplicitySpec s({0.5});
    const TransformPlan plan = TransformPlan::automatic(s, 9.0, 9.0);
    CHECK(plancherel_defect(plan, FunctionExpr::parse("x*exp(-x^2)", 1)) < 1e-6);
    CHECK(plancherel_defect(plan, FunctionExpr::parse("0", 1)) == 0.0);
  }

  TEST_CASE("transform is bounded by the L1 norm") {
    for (const char* b : {"exp(-x^2/2)", "x*exp(-x^2/2)", "(1+x)*exp(-x^2)"}) {
      const MultiplicitySpec s({0.5});
      const TransformPlan plan = TransformPlan::automatic(s, 9.0, 9.0);
      const FunctionExpr f = FunctionExpr::parse(b, 1);
      CHECK(plan.forward(f).max_abs() <= lp_norm(s, plan.sample_space(f), 1.0) * (1 + 1e-12));
    }
  }

  TEST_CASE("multipliers") {
    const MultiplicitySpec s({0.5});
    const TransformPlan plan = TransformPlan::automatic(s, 12.0, 6.0);
    const FunctionExpr E1 = HeatKernel(s, 1.0).expr();
    const SampledFunction id = multiplier_apply(plan, E1, [](std::span<const double>) { return cplx(1.0); });
    CHECK(max_err(id, [&](std::span<const double> x) { return E1(x); }) < 1e-8);
    const SampledFunction heat = multiplier_apply(plan, E1, [](std::span<const double> y) { return cplx(std::exp(-0.5 * sq(y))); });
    const HeatKernel E15(s, 1.5);
    CHECK(max_err(heat, [&](std::span<const double> x) { return cplx(E15(x)); }) < 1e-8);
    const SampledFunction grow = multiplier_apply(plan, E1, [](std::span<const double> y) { return cplx(std::exp(2.0 * sq(y))); });
    CHECK(grow.amplification_flag);
  }

  TEST_CASE("adequacy probe rejects a coarse plan") {
    AxisParams sp;
    sp.extent = 9.0;
    sp.panel_width = 4.5;
    sp.nodes_per_panel = 6;
    const TransformPlan plan(MultiplicitySpec({0.5}), {sp}, {sp});
    CHECK_FALSE(plan.adequacy().ok);
    try {
      plan.require_adequate();
      FAIL("expected plan_inadequate");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::plan_inadequate);
    }
  }

  TEST_CASE("truncation flag on slow decay") {
    const TransformPlan plan = TransformPlan::automatic(MultiplicitySpec({0.5}), 5.0, 5.0);
    CHECK(plan.forward(FunctionExpr::parse("exp(-x^2/50)", 1)).truncation_flag);
    CHECK_FALSE(plan.forward(FunctionExpr::parse("exp(-2*x^2)", 1)).truncation_flag);
  }
}
