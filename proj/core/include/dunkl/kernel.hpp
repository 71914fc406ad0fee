#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dunkl/multiplicity.hpp"
#include "dunkl/special.hpp"

namespace dunkl {

/// K(z, w) = j_{gamma-1/2}(i z w) + z w / (2 gamma + 1) j_{gamma+1/2}(i z w).
/// At gamma = 0 this is e^{z w}.
cplx kernel_1d(double gamma, cplx z, cplx w, const SeriesControl& ctl = {});

/// d^order/dw^order K(z, w), by term-wise differentiation of the series.
cplx kernel_1d_derivative(double gamma, cplx z, cplx w, int order, const SeriesControl& ctl = {});

/// Product over coordinates of kernel_1d(gamma_j, z_j, w_j).
cplx kernel_nd(const MultiplicitySpec& spec, std::span<const cplx> z, std::span<const cplx> w,
               const SeriesControl& ctl = {});
cplx kernel_nd(const MultiplicitySpec& spec, std::span<const double> x, std::span<const double> y);

/// Pre-bound kernel evaluation for one multiplicity.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(MultiplicitySpec spec, SeriesControl ctl = {});

  const MultiplicitySpec& spec() const noexcept { return spec_; }
  const SeriesControl& tolerance() const noexcept { return ctl_; }

  cplx operator()(std::span<const cplx> z, std::span<const cplx> w) const;
  /// d^nu/dw^nu K(z, w) for a multi-index nu over the second argument.
  cplx derivative(std::span<const cplx> z, std::span<const cplx> w, std::span<const int> nu) const;

 private:
  MultiplicitySpec spec_;
  SeriesControl ctl_;
};

/// |T_j K(., y)(x) - y_j K(x, y)| with T_j applied pointwise (removable
/// quotient handled by the limit rule of dunkl_apply_pointwise).
double kernel_eigen_residual(const MultiplicitySpec& spec, std::size_t j, std::span<const double> x,
                             std::span<const double> y);

}  // namespace dunkl
