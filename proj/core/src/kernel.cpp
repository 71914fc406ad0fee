#include "dunkl/kernel.hpp"

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/operators.hpp"

namespace dunkl {
namespace {

// c * p^m * A_b(p) with A_b(p) = j_b(i p) = J^_b(-p^2).
struct SeriesTerm {
  double c;
  int m;
  double b;
};

// F(p) = A_a(p) + p/(2 gamma + 1) A_{a+1}(p), a = gamma - 1/2, differentiated
// `order` times using dA_b/dp = p / (2 (b + 1)) A_{b+1}.
std::vector<SeriesTerm> kernel_terms(double gamma, int order) {
  const double a = gamma - 0.5;
  std::vector<SeriesTerm> terms{{1.0, 0, a}, {1.0 / (2.0 * gamma + 1.0), 1, a + 1.0}};
  for (int k = 0; k < order; ++k) {
    std::vector<SeriesTerm> next;
    for (const auto& t : terms) {
      if (t.m > 0) next.push_back({t.c * t.m, t.m - 1, t.b});
      next.push_back({t.c / (2.0 * (t.b + 1.0)), t.m + 1, t.b + 1.0});
    }
    terms = std::move(next);
  }
  return terms;
}

cplx eval_terms(const std::vector<SeriesTerm>& terms, cplx p, const SeriesControl& ctl) {
  const cplx w = -p * p;
  cplx sum = 0.0;
  for (const auto& t : terms) sum += t.c * std::pow(p, t.m) * bessel_hat(t.b, w, ctl);
  return sum;
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) fail(ErrorCode::invalid_argument, "multiplicity must be >= 0");
}

}  // namespace

cplx kernel_1d(double gamma, cplx z, cplx w, const SeriesControl& ctl) {
  return kernel_1d_derivative(gamma, z, w, 0, ctl);
}

cplx kernel_1d_derivative(double gamma, cplx z, cplx w, int order, const SeriesControl& ctl) {
  check_gamma(gamma);
  if (order < 0) fail(ErrorCode::invalid_argument, "derivative order must be >= 0");
  const cplx p = z * w;
  return std::pow(z, order) * eval_terms(kernel_terms(gamma, order), p, ctl);
}

cplx kernel_nd(const MultiplicitySpec& spec, std::span<const cplx> z, std::span<const cplx> w,
               const SeriesControl& ctl) {
  if (z.size() != spec.dim() || w.size() != spec.dim())
    fail(ErrorCode::invalid_argument, "kernel arguments must match the dimension");
  cplx r = 1.0;
  for (std::size_t j = 0; j < spec.dim(); ++j) r *= kernel_1d(spec.gamma(j), z[j], w[j], ctl);
  return r;
}

cplx kernel_nd(const MultiplicitySpec& spec, std::span<const double> x, std::span<const double> y) {
  std::vector<cplx> z(x.begin(), x.end()), w(y.begin(), y.end());
  return kernel_nd(spec, z, w);
}

KernelEvaluator::KernelEvaluator(MultiplicitySpec spec, SeriesControl ctl) : spec_(std::move(spec)), ctl_(ctl) {}

cplx KernelEvaluator::operator()(std::span<const cplx> z, std::span<const cplx> w) const {
  return kernel_nd(spec_, z, w, ctl_);
}

cplx KernelEvaluator::derivative(std::span<const cplx> z, std::span<const cplx> w, std::span<const int> nu) const {
  if (nu.size() != spec_.dim()) fail(ErrorCode::invalid_argument, "multi-index must match the dimension");
  cplx r = 1.0;
  for (std::size_t j = 0; j < spec_.dim(); ++j) r *= kernel_1d_derivative(spec_.gamma(j), z[j], w[j], nu[j], ctl_);
  return r;
}

double kernel_eigen_residual(const MultiplicitySpec& spec, std::size_t j, std::span<const double> x,
                             std::span<const double> y) {
  const std::size_t d = spec.dim();
  if (j >= d || x.size() != d || y.size() != d) fail(ErrorCode::invalid_argument, "bad eigen-residual arguments");
  const std::vector<cplx> yc(y.begin(), y.end());
  auto value = [&](std::span<const double> p) {
    std::vector<cplx> pc(p.begin(), p.end());
    return kernel_nd(spec, yc, pc);
  };
  auto partial = [&](std::span<const double> p) {
    std::vector<cplx> pc(p.begin(), p.end());
    std::vector<int> nu(d, 0);
    nu[j] = 1;
    return KernelEvaluator(spec).derivative(yc, pc, nu);
  };
  const cplx t = dunkl_apply_pointwise(spec, j, value, partial, x).value;
  return std::abs(t - y[j] * value(x));
}

}  // namespace dunkl
