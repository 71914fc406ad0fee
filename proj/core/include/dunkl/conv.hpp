#pragma once

#include <functional>
#include <span>

#include "dunkl/expr.hpp"
#include "dunkl/multiplicity.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/sampled.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

/// E_n(y) = c_k / (4n)^{gamma + d/2} exp(-||y||^2 / (4n)); its transform is exp(-n ||xi||^2).
double gauss_kernel_eval(const MultiplicitySpec& spec, double n, std::span<const double> y);

class HeatKernel {
 public:
  HeatKernel(MultiplicitySpec spec, double n);

  double n() const noexcept { return n_; }
  const MultiplicitySpec& spec() const noexcept { return spec_; }
  double operator()(std::span<const double> y) const;
  /// Space-side closed form usable with the transform and operator modules.
  FunctionExpr expr() const;

 private:
  MultiplicitySpec spec_;
  double n_;
};

using Evaluator1D = std::function<cplx(double)>;

inline constexpr int kTranslationNodes = 64;

/// x -> tau_y f(x) for d = 1 by the explicit integral against
/// Phi(t) = Gamma(g+1/2) / (sqrt(pi) Gamma(g)) (1+t)(1-t^2)^{g-1}, with the
/// endpoint factor absorbed into a Gauss-Jacobi rule. Requires gamma > 0.
/// Convention: F(tau_y f)(xi) = K(-i xi, y) F f(xi), so at gamma = 0 this is f(x - y).
Evaluator1D translate_1d(double gamma, const FunctionExpr& f, double y, int nodes = kTranslationNodes);

/// The gamma = 0 case: x -> f(x - y).
Evaluator1D translate_classical(const FunctionExpr& f, double y);

/// F^{-1}[K(-i xi, y) F f].
SampledFunction translate_spectral(const TransformPlan& plan, const FunctionExpr& f, std::span<const double> y);
SampledFunction translate_spectral(const TransformPlan& plan, const SampledFunction& f, std::span<const double> y);

/// F^{-1}[F f F g].
SampledFunction convolve(const TransformPlan& plan, const FunctionExpr& f, const FunctionExpr& g);
SampledFunction convolve(const TransformPlan& plan, const SampledFunction& f, const SampledFunction& g);

/// d = 1 direct route: (f * g)(x) = int tau_y f(x) g(y) |y|^{2 gamma} dy on the given y-rule.
cplx convolve_direct_1d(double gamma, const FunctionExpr& f, const FunctionExpr& g, double x, const AxisRule& y_rule,
                        int nodes = kTranslationNodes);

/// f_n = E_n * f, i.e. the multiplier exp(-n ||xi||^2).
SampledFunction heat_smooth(const TransformPlan& plan, const FunctionExpr& f, double n);
SampledFunction heat_smooth(const TransformPlan& plan, const SampledFunction& f, double n);
/// Same from frequency-side data already on the plan's frequency grid.
SampledFunction heat_smooth_spectrum(const TransformPlan& plan, const SampledFunction& spectrum, double n);

/// Closed form M / t^{gamma+d/2} K(x / sqrt(2t), y / sqrt(2t)) exp(-(|x|^2 + |y|^2) / (4t)),
/// the translate tau_y E_t(x) of the heat kernel when M = c_k / 4^{gamma+d/2}.
cplx gauss_translate_closed_form(const MultiplicitySpec& spec, double t, std::span<const double> x,
                                 std::span<const double> y, double M);
/// Constant printed with the Gaussian translation example: (2^{gamma+d/2} c_k)^{-1}.
double printed_translation_constant(const MultiplicitySpec& spec);
/// Constant that makes the closed form equal tau_y E_t: c_k / 4^{gamma+d/2}.
double heat_translation_constant(const MultiplicitySpec& spec);

}  // namespace dunkl
