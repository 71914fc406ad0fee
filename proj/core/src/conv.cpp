#include "dunkl/conv.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "dunkl/error.hpp"
#include "dunkl/kernel.hpp"

namespace dunkl {
namespace {

double norm2(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return s;
}

void check_time(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::invalid_argument, "heat parameter must be > 0");
}

// x -> (f_e(u), f_o(u) / u) as functions of R = u^2.
struct ParitySplit {
  std::function<cplx(double)> even;
  std::function<cplx(double)> odd_quotient;
};

ParitySplit split(const FunctionExpr& f) {
  if (f.differentiable()) {
    const auto& comps = f.form().components();
    sym::EvenForm h0(1), h1(1);
    if (auto it = comps.find(0); it != comps.end()) h0 = it->second;
    if (auto it = comps.find(1); it != comps.end()) h1 = it->second;
    auto e = std::make_shared<sym::CompiledForm>(sym::ParityForm::even(h0));
    auto o = std::make_shared<sym::CompiledForm>(sym::ParityForm::even(h1));
    return {[e](double R) {
              const double u = std::sqrt(std::max(R, 0.0));
              return (*e)(std::span<const double>(&u, 1));
            },
            [o](double R) {
              const double u = std::sqrt(std::max(R, 0.0));
              return (*o)(std::span<const double>(&u, 1));
            }};
  }
  return {[f](double R) {
            const double u = std::sqrt(std::max(R, 0.0));
            return 0.5 * (f(u) + f(-u));
          },
          [f](double R) -> cplx {
            const double u = std::sqrt(std::max(R, 0.0));
            if (u == 0.0) return 0.0;
            return 0.5 * (f(u) - f(-u)) / u;
          }};
}

}  // namespace

double gauss_kernel_eval(const MultiplicitySpec& spec, double n, std::span<const double> y) {
  check_time(n);
  const double e = spec.total() + 0.5 * static_cast<double>(spec.dim());
  return spec.mehta() / std::pow(4.0 * n, e) * std::exp(-norm2(y) / (4.0 * n));
}

HeatKernel::HeatKernel(MultiplicitySpec spec, double n) : spec_(std::move(spec)), n_(n) { check_time(n); }

double HeatKernel::operator()(std::span<const double> y) const { return gauss_kernel_eval(spec_, n_, y); }

FunctionExpr HeatKernel::expr() const {
  const double e = spec_.total() + 0.5 * static_cast<double>(spec_.dim());
  const double c = spec_.mehta() / std::pow(4.0 * n_, e);
  sym::EvenForm h(spec_.dim());
  sym::TermKey k;
  k.mono.assign(spec_.dim(), 0);
  k.expo.assign(spec_.dim(), cplx(-1.0 / (4.0 * n_)));
  h.add_term(k, c);
  return FunctionExpr::from_form(sym::ParityForm::even(h), Side::space);
}

Evaluator1D translate_1d(double gamma, const FunctionExpr& f, double y, int nodes) {
  if (f.dim() != 1) fail(ErrorCode::invalid_argument, "translate_1d needs a one-dimensional function");
  if (!(gamma > 0.0))
    fail(ErrorCode::invalid_argument,
         "the explicit translation integral needs gamma > 0; for gamma = 0 use translate_classical (f(x - y))");
  auto rule = std::make_shared<const Rule1D>(gauss_jacobi_rule(nodes, gamma - 1.0));
  const double phi = std::exp(std::lgamma(gamma + 0.5) - std::lgamma(gamma)) / std::sqrt(std::numbers::pi);
  const ParitySplit parts = split(f);
  return [rule, phi, parts, y](double x) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
      const double t = rule->nodes[i];
      const double R = x * x + y * y - 2.0 * x * y * t;
      s += rule->weights[i] * (1.0 + t) * (parts.even(R) + (x - y) * parts.odd_quotient(R));
    }
    return phi * s;
  };
}

Evaluator1D translate_classical(const FunctionExpr& f, double y) {
  if (f.dim() != 1) fail(ErrorCode::invalid_argument, "translate_classical needs a one-dimensional function");
  return [f, y](double x) { return f(x - y); };
}

SampledFunction translate_spectral(const TransformPlan& plan, const SampledFunction& f, std::span<const double> y) {
  if (y.size() != plan.dim()) fail(ErrorCode::invalid_argument, "shift dimension mismatch");
  std::vector<cplx> yc(y.begin(), y.end());
  const auto& spec = plan.spec();
  return multiplier_apply(plan, f, [&](std::span<const double> xi) {
    std::vector<cplx> z(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) z[j] = cplx(0.0, -xi[j]);
    return kernel_nd(spec, z, yc);
  });
}

SampledFunction translate_spectral(const TransformPlan& plan, const FunctionExpr& f, std::span<const double> y) {
  return translate_spectral(plan, plan.sample_space(f), y);
}

SampledFunction convolve(const TransformPlan& plan, const SampledFunction& f, const SampledFunction& g) {
  const SampledFunction Ff = plan.forward(f);
  SampledFunction prod = plan.forward(g);
  for (std::size_t i = 0; i < prod.size(); ++i) prod.values[i] *= Ff.values[i];
  prod.truncation_flag = prod.truncation_flag || Ff.truncation_flag;
  return plan.inverse(prod);
}

SampledFunction convolve(const TransformPlan& plan, const FunctionExpr& f, const FunctionExpr& g) {
  return convolve(plan, plan.sample_space(f), plan.sample_space(g));
}

cplx convolve_direct_1d(double gamma, const FunctionExpr& f, const FunctionExpr& g, double x, const AxisRule& y_rule,
                        int nodes) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < y_rule.size(); ++i) {
    const double y = y_rule.nodes[i];
    const cplx gy = g(y);
    if (gy == cplx(0.0)) continue;
    s += y_rule.weights[i] * std::pow(std::abs(y), 2.0 * gamma) * translate_1d(gamma, f, y, nodes)(x) * gy;
  }
  return s;
}

SampledFunction heat_smooth_spectrum(const TransformPlan& plan, const SampledFunction& spectrum, double n) {
  check_time(n);
  return multiplier_inverse(plan, spectrum, [n](std::span<const double> xi) { return std::exp(-n * norm2(xi)); });
}

SampledFunction heat_smooth(const TransformPlan& plan, const SampledFunction& f, double n) {
  return heat_smooth_spectrum(plan, plan.forward(f), n);
}

SampledFunction heat_smooth(const TransformPlan& plan, const FunctionExpr& f, double n) {
  return heat_smooth(plan, plan.sample_space(f), n);
}

cplx gauss_translate_closed_form(const MultiplicitySpec& spec, double t, std::span<const double> x,
                                 std::span<const double> y, double M) {
  check_time(t);
  const double s = 1.0 / std::sqrt(2.0 * t);
  std::vector<cplx> a(x.size()), b(y.size());
  for (std::size_t j = 0; j < x.size(); ++j) a[j] = x[j] * s;
  for (std::size_t j = 0; j < y.size(); ++j) b[j] = y[j] * s;
  const double e = spec.total() + 0.5 * static_cast<double>(spec.dim());
  return M / std::pow(t, e) * kernel_nd(spec, a, b) * std::exp(-(norm2(x) + norm2(y)) / (4.0 * t));
}

double printed_translation_constant(const MultiplicitySpec& spec) {
  const double e = spec.total() + 0.5 * static_cast<double>(spec.dim());
  return 1.0 / (std::pow(2.0, e) * spec.mehta());
}

double heat_translation_constant(const MultiplicitySpec& spec) {
  const double e = spec.total() + 0.5 * static_cast<double>(spec.dim());
  return spec.mehta() / std::pow(4.0, e);
}

}  // namespace dunkl
