#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dunkl/expr.hpp"
#include "dunkl/multiplicity.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/sampled.hpp"

namespace dunkl {

struct AdequacyReport {
  bool ok = true;
  double probe_change = 0.0;  // worst |T_N p - T_2N p| / ||p||_1 over probes
  std::string detail;
};

/// Dense quadrature Dunkl transform on a pair of tensor grids.
///
/// Each axis caches the matrix K(-i y_a, x_b) (frequency node a, space node b);
/// the transform applies these separably. The inverse uses the conjugate
/// transpose and the constant c_k^2 / 4^{gamma + d/2}. After construction the
/// plan is immutable.
class TransformPlan {
 public:
  TransformPlan(MultiplicitySpec spec, std::vector<AxisParams> space, std::vector<AxisParams> frequency,
                bool check_adequacy = true);

  /// Panels sized so that the kernel phase across one panel stays <= 8 rad;
  /// breakpoints are added to the respective axes.
  static TransformPlan automatic(const MultiplicitySpec& spec, double space_extent, double frequency_extent,
                                 std::vector<double> space_breaks = {}, std::vector<double> frequency_breaks = {},
                                 bool check_adequacy = true);

  const MultiplicitySpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return spec_.dim(); }
  const std::shared_ptr<const QuadratureGrid>& space_grid() const noexcept { return space_; }
  const std::shared_ptr<const QuadratureGrid>& frequency_grid() const noexcept { return frequency_; }
  const AdequacyReport& adequacy() const noexcept { return adequacy_; }
  /// Throws Error(plan_inadequate) with the adequacy detail when the probe failed.
  void require_adequate() const;

  /// Cached K(-i y_a, x_b) on axis j.
  cplx kernel_entry(std::size_t j, std::size_t freq_index, std::size_t space_index) const;

  SampledFunction forward(const SampledFunction& f) const;
  SampledFunction forward(const FunctionExpr& f) const;
  SampledFunction inverse(const SampledFunction& g) const;
  SampledFunction inverse(const FunctionExpr& g) const;

  /// f sampled on the space grid and weights |f|^p omega_k summed.
  SampledFunction sample_space(const FunctionExpr& f) const;
  SampledFunction sample_frequency(const FunctionExpr& g) const;

 private:
  void build_kernels();
  void run_adequacy_probe();

  MultiplicitySpec spec_;
  std::vector<AxisParams> space_params_, frequency_params_;
  std::shared_ptr<const QuadratureGrid> space_, frequency_;
  std::vector<std::vector<cplx>> kernels_;  // per axis, row-major (freq x space)
  AdequacyReport adequacy_;
};

/// Weighted norm (sum_i w_i omega_k(x_i) |f_i|^p)^{1/p}; p = inf takes the max over nodes.
double lp_norm(const MultiplicitySpec& spec, const SampledFunction& f, double p);
/// Same, on an automatic grid covering the function's support or [-extent, extent]^d.
double lp_norm(const MultiplicitySpec& spec, const FunctionExpr& f, double p, AxisParams params = {});

/// |‖f‖² - c ‖F f‖²| / ‖f‖², 0 for f = 0.
double plancherel_defect(const TransformPlan& plan, const FunctionExpr& f);

using Multiplier = std::function<cplx(std::span<const double>)>;

/// F^{-1}[m F f]. Flags amplification when m F f does not decay at the
/// frequency-grid boundary.
SampledFunction multiplier_apply(const TransformPlan& plan, const SampledFunction& f, const Multiplier& m);
SampledFunction multiplier_apply(const TransformPlan& plan, const FunctionExpr& f, const Multiplier& m);
SampledFunction multiplier_apply(const TransformPlan& plan, const FunctionExpr& f, const FunctionExpr& m);

/// Multiplies sampled frequency data by m and transforms back.
SampledFunction multiplier_inverse(const TransformPlan& plan, const SampledFunction& spectrum, const Multiplier& m);

}  // namespace dunkl
