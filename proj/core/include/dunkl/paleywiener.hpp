#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dunkl/expr.hpp"
#include "dunkl/extrapolate.hpp"
#include "dunkl/multiplicity.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/sampled.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

/// Mass w_i omega_k(xi_i) |g(xi_i)|^2 of a spectrum on a frequency quadrature,
/// with an inner sub-box used by the box-sensitivity probe.
class SpectralMass {
 public:
  /// Samples a frequency-side expression on [-2L, 2L]^d where L is the
  /// support half-width (or `default_extent` when the support is unbounded);
  /// the inner box is [-L, L]^d.
  static SpectralMass from_expr(const MultiplicitySpec& spec, const FunctionExpr& g, double default_extent = 8.0);
  /// Frequency data already on a grid (e.g. a forward transform); inner box is half the grid.
  static SpectralMass from_sampled(const MultiplicitySpec& spec, const SampledFunction& g);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return mass_.size(); }
  bool is_zero() const noexcept { return zero_; }
  std::span<const double> point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }

  /// log sum_i mass_i exp(log_weight(xi_i)), on the full or inner box; -inf if empty.
  double log_moment(const std::function<double(std::span<const double>)>& log_weight, bool inner = false) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> points_;
  std::vector<double> mass_;
  std::vector<char> inner_;
  bool zero_ = true;
};

struct EstimatorOptions {
  double default_extent = 8.0;  // spectral box when the support is not bounded by an indicator
  double box_tolerance = 0.01;  // relative change of a_n under the 2x box that flags unbounded support
  ExtrapolationModel model = ExtrapolationModel::log_harmonic;
  double verdict_slack = 1e-6;
};

/// a_n = (int ||xi||^{4n} |g|^2 omega_k)^{1/4n}, n = 1..n_max; +inf terms when box-sensitive.
ConvergenceSequence support_radius_spectral(const MultiplicitySpec& spec, const FunctionExpr& g, int n_max,
                                            const EstimatorOptions& opt = {});
ConvergenceSequence support_radius_spectral(const MultiplicitySpec& spec, const SpectralMass& mass, int n_max,
                                            const EstimatorOptions& opt = {});

/// Norm of a closed-form space function on a grid. With `richardson`, the
/// p-th power integral is extrapolated from the boxes L and L/2 as 2 I(L) - I(L/2),
/// which removes a 1/L truncation tail (slowly decaying band-limited functions).
struct SpatialNorm {
  std::shared_ptr<const QuadratureGrid> grid;
  bool richardson = false;

  /// Grid on [-L, L]^d with a panel boundary at +-L/2.
  static SpatialNorm box(std::size_t d, double extent, double panel_width, int nodes_per_panel, bool richardson);
  double operator()(const MultiplicitySpec& spec, const FunctionExpr& f, double p = 2.0) const;
};

/// a_n = ||Delta_k^n f||_{k,2}^{1/2n} by exact operator iteration, n = 1..n_max (n_max capped by the depth cap).
ConvergenceSequence support_radius_spatial(const MultiplicitySpec& spec, const FunctionExpr& f, int n_max,
                                           const SpatialNorm& norm);

enum class PolyRoute { spectral, multiplier, operator_iteration };

/// a_n = ||P(iT)^n f||_{k,p}^{1/n}; its limit is sup |P| over the spectrum.
/// `source` is the spectrum (frequency side) or f itself (space side, transformed with the plan).
/// spectral: Plancherel moments (p = 2 only); multiplier: F^{-1}[P(-xi)^n F f] on the plan;
/// operator_iteration: P(iT)^n f symbolically (space-side source, n deg P <= 24), normed on the plan's space grid.
ConvergenceSequence poly_spectrum_sup(const MultiplicitySpec& spec, const FunctionExpr& source, const PolynomialSpec& P,
                                      double p, int n_max, const TransformPlan* plan, PolyRoute route,
                                      const EstimatorOptions& opt = {});

/// Cor 4.3 style verdict: "inside" when the limit is <= 1 within the confidence width.
std::string polynomial_domain_verdict(const ConvergenceSequence& seq, double slack = 1e-6);

struct InnerRadiusResult {
  ConvergenceSequence radius;  // sqrt(-(1/n) ln ||f_n||)
  ConvergenceSequence rate;    // ||f_n||^{1/n}
  double lambda = 0.0;
  double lambda_width = 0.0;
  bool vanishing_near_origin = false;
};

/// b_n = ||E_n * f||_{k,p}^{1/n}; p = 2 runs on Plancherel moments, other p on the plan.
/// Extrapolation acts on -ln b_n, whose corrections are (c + e ln n)/n.
ConvergenceSequence heat_series_norm(const MultiplicitySpec& spec, const FunctionExpr& source, double p, int n_max,
                                     const TransformPlan* plan, const EstimatorOptions& opt = {});

InnerRadiusResult inner_radius(const MultiplicitySpec& spec, const FunctionExpr& source, int n_max,
                               const TransformPlan* plan, const EstimatorOptions& opt = {});

/// Ball-vanishing verdict from a heat-series limit: limit <= e^{-r^2}.
bool vanishes_on_ball(const ConvergenceSequence& heat_sequence, double r);

/// ||sum_{m <= m_max} (n Delta_k)^m f / m! - E_n * f|| / ||f|| on the plan's space grid.
double heat_series_direct_defect(const MultiplicitySpec& spec, const FunctionExpr& f, const FunctionExpr& spectrum,
                                 double n, int m_max, const TransformPlan& plan);

/// Symmetric body K with a finite sample of its polar set.
struct SymmetricBodySpec {
  std::string kind;  // "box", "ball", "polytope"
  std::vector<std::vector<double>> vertices;
  std::vector<std::vector<double>> polar_sample;
  double radius = 0.0;  // ball only

  static SymmetricBodySpec box(std::vector<double> half_widths);
  static SymmetricBodySpec ball(std::size_t d, double radius, int samples);
  static SymmetricBodySpec polytope(std::vector<std::vector<double>> vertices,
                                    std::vector<std::vector<double>> polar_sample);
  /// Throws unless K is symmetric and every polar point has <x, a> <= 1 + 1e-12 on K.
  void validate() const;
  std::string to_string() const;
};

struct EstimatorReport {
  std::string estimator;
  std::vector<double> gammas;
  std::string function;
  std::optional<double> p;
  std::vector<std::pair<std::string, ConvergenceSequence>> sequences;
  std::optional<double> ground_truth;
  std::optional<double> error;  // |extrapolated - ground_truth|
  std::map<std::string, std::string> verdicts;
  std::map<std::string, double> values;
  std::vector<std::string> notes;

  void set_truth(double truth, double estimate);
};

/// b_n = max_a ||<a, T>^n f||_{k,2} over the polar sample, n = 0..n_max (spectral route).
EstimatorReport symmetric_body_test(const MultiplicitySpec& spec, const FunctionExpr& source,
                                    const SymmetricBodySpec& body, int n_max, const TransformPlan* plan,
                                    const EstimatorOptions& opt = {});

struct ToreResult {
  InnerRadiusResult inner;
  ConvergenceSequence outer;
  double lambda = 0.0;
  double radius = 0.0;
  bool inner_defined = true;  // false for the zero spectrum
  bool sandwich_ok = true;    // lambda <= R + tol
};

/// (inner radius, support radius) of the spectrum; the spectrum lies in the shell between them.
ToreResult tore_localization(const MultiplicitySpec& spec, const FunctionExpr& source, int n_max,
                             const TransformPlan* plan, const EstimatorOptions& opt = {});

/// Plancherel-weighted spectrum of a source: frequency-side expressions are
/// sampled on their own moment grid, space-side ones transformed with the plan.
SpectralMass spectral_mass(const MultiplicitySpec& spec, const FunctionExpr& source, const TransformPlan* plan,
                           const EstimatorOptions& opt = {});

}  // namespace dunkl
