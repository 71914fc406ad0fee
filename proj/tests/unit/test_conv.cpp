#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dunkl/conv.hpp"
#include "dunkl/error.hpp"

using namespace dunkl;

TEST_SUITE("conv") {
  TEST_CASE("heat kernel values") {
    const MultiplicitySpec s({0.5, 1.0});
    const double o[] = {0.0, 0.0};
    CHECK(gauss_kernel_eval(s, 2.0, o) == doctest::Approx(s.mehta() / std::pow(8.0, 2.5)));
    const double o1[] = {0.0};
    CHECK(gauss_kernel_eval(MultiplicitySpec({0.5}), 1.0, o1) == doctest::Approx(0.25));
    CHECK_THROWS_AS(HeatKernel(s, 0.0), Error);
    const double y[] = {0.3, -2.0};
    CHECK(std::abs(HeatKernel(s, 0.7).expr()(y) - gauss_kernel_eval(s, 0.7, y)) < 1e-15);
  }

  TEST_CASE("translation by zero and the classical case") {
    const FunctionExpr f = FunctionExpr::parse("(1+x)*exp(-x^2)", 1);
    const Evaluator1D t0 = translate_1d(0.5, f, 0.0);
    for (double x = -3.0; x <= 3.0; x += 0.3) CHECK(std::abs(t0(x) - f(x)) < 1e-10);
    CHECK_THROWS_AS(translate_1d(0.0, f, 1.0), Error);

    const MultiplicitySpec s({0.0});
    const TransformPlan plan = TransformPlan::automatic(s, 12.0, 12.0);
    const double y = 0.8;
    const SampledFunction shifted = translate_spectral(plan, f, std::span<const double>(&y, 1));
    const auto& xs = plan.space_grid()->axis(0).nodes;
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(shifted.values[i] - f(xs[i] - y)));
    CHECK(worst < 1e-8);
  }

  TEST_CASE("translation norm bound") {
    const MultiplicitySpec s({0.5});
    AxisParams a;
    a.extent = 10.0;
    a.panel_width = 0.5;
    a.nodes_per_panel = 16;
    const AxisRule r = make_axis(a);
    for (const char* b : {"exp(-x^2)", "x*exp(-x^2)", "(1+x)*exp(-x^2/2)"}) {
      const FunctionExpr f = FunctionExpr::parse(b, 1);
      for (double y : {-1.5, 0.7, 2.5}) {
        const Evaluator1D t = translate_1d(0.5, f, y);
        for (double p : {1.0, 2.0}) {
          double nt = 0.0, nf = 0.0;
          for (std::size_t i = 0; i < r.size(); ++i) {
            const double w = r.weights[i] * std::abs(r.nodes[i]);
            nt += w * std::pow(std::abs(t(r.nodes[i])), p);
            nf += w * std::pow(std::abs(f(r.nodes[i])), p);
          }
          CHECK(std::pow(nt, 1 / p) <= 3.0 * std::pow(nf, 1 / p));
        }
      }
    }
  }

  TEST_CASE("spectral translation at zero is the identity") {
    const MultiplicitySpec s({0.5, 1.0});
    const TransformPlan plan = TransformPlan::automatic(s, 9.0, 9.0);
    const FunctionExpr f = FunctionExpr::parse("x1*exp(-r2/2)", 2);
    const double y[] = {0.0, 0.0};
    CHECK((translate_spectral(plan, f, y) - plan.sample_space(f)).max_abs() < 1e-10);
  }

  TEST_CASE("convolution of heat kernels") {
    const MultiplicitySpec s({0.5});
    const TransformPlan plan = TransformPlan::automatic(s, 14.0, 6.0);
    const FunctionExpr a = HeatKernel(s, 0.5).expr(), b = HeatKernel(s, 1.0).expr();
    const SampledFunction ab = convolve(plan, a, b);
    CHECK((ab - plan.sample_space(HeatKernel(s, 1.5).expr())).max_abs() < 1e-8);
    CHECK((ab - convolve(plan, b, a)).max_abs() < 1e-10);
  }

  TEST_CASE("direct one-dimensional convolution") {
    const MultiplicitySpec s({0.5});
    const TransformPlan plan = TransformPlan::automatic(s, 9.0, 9.0);
    const FunctionExpr f = FunctionExpr::parse("exp(-x^2)", 1), g = FunctionExpr::parse("x*exp(-x^2/2)", 1);
    const SampledFunction spectral = convolve(plan, f, g);
    AxisParams a;
    a.extent = 9.0;
    a.panel_width = 0.5;
    a.nodes_per_panel = 20;
    const AxisRule r = make_axis(a);
    const auto& xs = plan.space_grid()->axis(0).nodes;
    for (std::size_t i = 0; i < xs.size(); i += 23)
      if (std::abs(xs[i]) < 4.0) CHECK(std::abs(convolve_direct_1d(0.5, f, g, xs[i], r) - spectral.values[i]) < 1e-7);
  }

  TEST_CASE("heat smoothing") {
    const MultiplicitySpec s({0.5});
    const TransformPlan plan = TransformPlan::automatic(s, 12.0, 6.0);
    const FunctionExpr E1 = HeatKernel(s, 1.0).expr();
    const SampledFunction sm = heat_smooth(plan, E1, 0.75);
    CHECK((sm - plan.sample_space(HeatKernel(s, 1.75).expr())).max_abs() < 1e-8);
    const FunctionExpr f = FunctionExpr::parse("x*exp(-x^2/2)", 1);
    const SampledFunction tiny = heat_smooth(plan, f, 0.001);
    const SampledFunction ref = plan.sample_space(f);
    CHECK(lp_norm(s, tiny - ref, 2.0) / lp_norm(s, ref, 2.0) < 1e-2);
  }

  TEST_CASE("translated heat kernel constant") {
    const MultiplicitySpec s({0.5});
    CHECK(heat_translation_constant(s) == doctest::Approx(0.25));
    CHECK(printed_translation_constant(s) == doctest::Approx(0.5));
  }
}
