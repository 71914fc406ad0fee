#include "dunkl/transform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/special.hpp"

namespace dunkl {
namespace {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// K(-i y, x) = j_{g-1/2}(x y) - i x y / (2g + 1) j_{g+1/2}(x y)
cplx transform_kernel(double gamma, double y, double x) {
  const double t = x * y;
  if (gamma == 0.0) return {std::cos(t), -std::sin(t)};
  return {normalized_bessel(gamma - 0.5, t), -t / (2.0 * gamma + 1.0) * normalized_bessel(gamma + 0.5, t)};
}

std::vector<AxisParams> broadcast(std::vector<AxisParams> p, std::size_t d, const char* what) {
  if (p.size() == 1 && d > 1) p.assign(d, p.front());
  if (p.size() != d) fail(ErrorCode::invalid_argument, std::string(what) + " axis parameters must match the dimension");
  return p;
}

std::shared_ptr<const QuadratureGrid> build_grid(const std::vector<AxisParams>& params) {
  std::vector<AxisRule> axes;
  for (const auto& p : params) axes.push_back(make_axis(p));
  return std::make_shared<const QuadratureGrid>(std::move(axes));
}

// Apply `m` (rows_out x rows_in, or its adjoint) along `axis` of a row-major tensor.
std::vector<cplx> apply_axis(const std::vector<cplx>& in, std::vector<std::size_t>& shape, std::size_t axis,
                             const std::vector<cplx>& mat, std::size_t rows, std::size_t cols, bool adjoint) {
  const std::size_t n_in = adjoint ? rows : cols;
  const std::size_t n_out = adjoint ? cols : rows;
  if (shape[axis] != n_in) fail(ErrorCode::invalid_argument, "axis length does not match the kernel cache");
  std::size_t pre = 1, post = 1;
  for (std::size_t j = 0; j < axis; ++j) pre *= shape[j];
  for (std::size_t j = axis + 1; j < shape.size(); ++j) post *= shape[j];
  Eigen::Map<const RowMatrix> M(mat.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<cplx> out(pre * n_out * post);
  for (std::size_t p = 0; p < pre; ++p) {
    Eigen::Map<const RowMatrix> X(in.data() + p * n_in * post, static_cast<Eigen::Index>(n_in),
                                  static_cast<Eigen::Index>(post));
    Eigen::Map<RowMatrix> Y(out.data() + p * n_out * post, static_cast<Eigen::Index>(n_out),
                            static_cast<Eigen::Index>(post));
    if (adjoint)
      Y.noalias() = M.adjoint() * X;
    else
      Y.noalias() = M * X;
  }
  shape[axis] = n_out;
  return out;
}

std::vector<double> measure(const MultiplicitySpec& spec, const QuadratureGrid& g) {
  std::vector<double> w(g.size());
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, x);
    w[i] = g.weight(i) * spec.weight(x);
  }
  return w;
}

// Worst change of a 1-D transform of smooth probes when the panel width is halved.
double probe_change(double gamma, const AxisParams& params, double other_extent) {
  AxisParams fine = params;
  fine.panel_width *= 0.5;
  const AxisRule coarse_rule = make_axis(params);
  const AxisRule fine_rule = make_axis(fine);
  const double L = params.extent;
  auto probe = [&](double x, int parity) {
    const double u = 1.0 - (x / L) * (x / L);
    const double base = u * u * u * u * u * u * u * u;
    return parity == 0 ? base : (x / L) * base;
  };
  double worst = 0.0;
  for (int parity = 0; parity < 2; ++parity) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < fine_rule.size(); ++i) {
      const double x = fine_rule.nodes[i];
      l1 += fine_rule.weights[i] * std::pow(std::abs(x), 2.0 * gamma) * std::abs(probe(x, parity));
    }
    for (int k = 0; k <= 8; ++k) {
      const double y = other_extent * k / 8.0;
      auto integrate = [&](const AxisRule& r) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
          const double x = r.nodes[i];
          s += r.weights[i] * std::pow(std::abs(x), 2.0 * gamma) * probe(x, parity) * transform_kernel(gamma, y, x);
        }
        return s;
      };
      worst = std::max(worst, std::abs(integrate(coarse_rule) - integrate(fine_rule)) / l1);
    }
  }
  return worst;
}

constexpr double kAdequacyTol = 1e-8;

}  // namespace

TransformPlan::TransformPlan(MultiplicitySpec spec, std::vector<AxisParams> space, std::vector<AxisParams> frequency,
                             bool check_adequacy)
    : spec_(std::move(spec)),
      space_params_(broadcast(std::move(space), spec_.dim(), "space")),
      frequency_params_(broadcast(std::move(frequency), spec_.dim(), "frequency")) {
  space_ = build_grid(space_params_);
  frequency_ = build_grid(frequency_params_);
  build_kernels();
  if (check_adequacy) run_adequacy_probe();
}

TransformPlan TransformPlan::automatic(const MultiplicitySpec& spec, double space_extent, double frequency_extent,
                                       std::vector<double> space_breaks, std::vector<double> frequency_breaks,
                                       bool check_adequacy) {
  if (!(space_extent > 0.0) || !(frequency_extent > 0.0))
    fail(ErrorCode::invalid_argument, "plan extents must be positive");
  const int nodes = spec.dim() == 1 ? 24 : 16;
  constexpr double phase = 12.0;
  AxisParams sp;
  sp.extent = space_extent;
  sp.nodes_per_panel = nodes;
  sp.panel_width = std::min(2.0, phase / frequency_extent);
  sp.breakpoints = std::move(space_breaks);
  AxisParams fp;
  fp.extent = frequency_extent;
  fp.nodes_per_panel = nodes;
  fp.panel_width = std::min(2.0, phase / space_extent);
  fp.breakpoints = std::move(frequency_breaks);
  return TransformPlan(spec, {sp}, {fp}, check_adequacy);
}

void TransformPlan::build_kernels() {
  kernels_.resize(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const auto& xs = space_->axis(j).nodes;
    const auto& ys = frequency_->axis(j).nodes;
    auto& k = kernels_[j];
    k.resize(ys.size() * xs.size());
    // Reuse an identical earlier axis.
    bool reused = false;
    for (std::size_t i = 0; i < j && !reused; ++i)
      if (spec_.gamma(i) == spec_.gamma(j) && space_->axis(i).nodes == xs && frequency_->axis(i).nodes == ys) {
        k = kernels_[i];
        reused = true;
      }
    if (reused) continue;
    for (std::size_t a = 0; a < ys.size(); ++a)
      for (std::size_t b = 0; b < xs.size(); ++b) k[a * xs.size() + b] = transform_kernel(spec_.gamma(j), ys[a], xs[b]);
  }
}

void TransformPlan::run_adequacy_probe() {
  std::ostringstream os;
  os.precision(3);
  double worst = 0.0;
  for (std::size_t j = 0; j < dim(); ++j) {
    const double s = probe_change(spec_.gamma(j), space_params_[j], frequency_params_[j].extent);
    const double f = probe_change(spec_.gamma(j), frequency_params_[j], space_params_[j].extent);
    worst = std::max({worst, s, f});
    os << "axis " << j << ": space " << s << ", frequency " << f << "; ";
  }
  adequacy_.probe_change = worst;
  adequacy_.ok = worst < kAdequacyTol;
  os << (adequacy_.ok ? "adequate" : "inadequate: doubling the node count changes probe transforms by more than 1e-8");
  adequacy_.detail = os.str();
}

void TransformPlan::require_adequate() const {
  if (!adequacy_.ok) fail(ErrorCode::plan_inadequate, adequacy_.detail);
}

cplx TransformPlan::kernel_entry(std::size_t j, std::size_t freq_index, std::size_t space_index) const {
  return kernels_.at(j).at(freq_index * space_->axis(j).size() + space_index);
}

SampledFunction TransformPlan::sample_space(const FunctionExpr& f) const {
  if (f.side() != Side::space) fail(ErrorCode::invalid_argument, "expected a space-side function");
  return SampledFunction::sample(space_, f);
}

SampledFunction TransformPlan::sample_frequency(const FunctionExpr& g) const {
  if (g.side() != Side::frequency) fail(ErrorCode::invalid_argument, "expected a frequency-side function");
  return SampledFunction::sample(frequency_, g);
}

SampledFunction TransformPlan::forward(const SampledFunction& f) const {
  if (f.size() != space_->size()) fail(ErrorCode::invalid_argument, "input is not sampled on the plan's space grid");
  const auto w = measure(spec_, *space_);
  std::vector<cplx> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values[i] * w[i];
  std::vector<std::size_t> shape(space_->shape().begin(), space_->shape().end());
  for (std::size_t j = 0; j < dim(); ++j)
    v = apply_axis(v, shape, j, kernels_[j], frequency_->axis(j).size(), space_->axis(j).size(), false);
  SampledFunction out(frequency_, std::move(v), Side::frequency);
  out.truncation_flag = f.truncation_flag || f.boundary_level > 1e-14;
  out.boundary_level = f.boundary_level;
  return out;
}

SampledFunction TransformPlan::forward(const FunctionExpr& f) const { return forward(sample_space(f)); }

SampledFunction TransformPlan::inverse(const SampledFunction& g) const {
  if (g.size() != frequency_->size())
    fail(ErrorCode::invalid_argument, "input is not sampled on the plan's frequency grid");
  const auto w = measure(spec_, *frequency_);
  const double c = spec_.plancherel();
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * g.values[i] * w[i];
  std::vector<std::size_t> shape(frequency_->shape().begin(), frequency_->shape().end());
  for (std::size_t j = 0; j < dim(); ++j)
    v = apply_axis(v, shape, j, kernels_[j], frequency_->axis(j).size(), space_->axis(j).size(), true);
  SampledFunction out(space_, std::move(v), Side::space);
  const double level = boundary_level(g);
  out.truncation_flag = g.truncation_flag || level > 1e-14;
  out.amplification_flag = g.amplification_flag;
  out.boundary_level = level;
  return out;
}

SampledFunction TransformPlan::inverse(const FunctionExpr& g) const { return inverse(sample_frequency(g)); }

double lp_norm(const MultiplicitySpec& spec, const SampledFunction& f, double p) {
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "norm exponent must be >= 1");
  if (!f.grid) fail(ErrorCode::invalid_argument, "sampled function has no grid");
  if (std::isinf(p)) return f.max_abs();
  const auto w = measure(spec, *f.grid);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f.values[i]);
    if (a > 0.0) s += w[i] * (p == 2.0 ? a * a : std::pow(a, p));
  }
  return std::pow(s, 1.0 / p);
}

double lp_norm(const MultiplicitySpec& spec, const FunctionExpr& f, double p, AxisParams params) {
  if (f.dim() != spec.dim()) fail(ErrorCode::invalid_argument, "function and multiplicity dimensions differ");
  std::vector<AxisRule> axes;
  for (std::size_t j = 0; j < f.dim(); ++j) {
    AxisParams a = params;
    if (auto e = f.support_extent(j)) a.extent = *e;
    const auto b = f.breakpoints(j);
    a.breakpoints.insert(a.breakpoints.end(), b.begin(), b.end());
    axes.push_back(make_axis(a));
  }
  auto grid = std::make_shared<const QuadratureGrid>(std::move(axes));
  return lp_norm(spec, SampledFunction::sample(grid, f), p);
}

double plancherel_defect(const TransformPlan& plan, const FunctionExpr& f) {
  const SampledFunction s = plan.sample_space(f);
  const double n2 = std::pow(lp_norm(plan.spec(), s, 2.0), 2);
  if (n2 == 0.0) return 0.0;
  const double m2 = std::pow(lp_norm(plan.spec(), plan.forward(s), 2.0), 2);
  return std::abs(n2 - plan.spec().plancherel() * m2) / n2;
}

SampledFunction multiplier_inverse(const TransformPlan& plan, const SampledFunction& spectrum, const Multiplier& m) {
  SampledFunction g = spectrum;
  std::vector<double> y(plan.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    plan.frequency_grid()->point(i, y);
    g.values[i] *= m(y);
  }
  const double before = boundary_level(spectrum);
  const double after = boundary_level(g);
  g.amplification_flag = after > std::max(1e-12, 10.0 * before);
  return plan.inverse(g);
}

SampledFunction multiplier_apply(const TransformPlan& plan, const SampledFunction& f, const Multiplier& m) {
  return multiplier_inverse(plan, plan.forward(f), m);
}

SampledFunction multiplier_apply(const TransformPlan& plan, const FunctionExpr& f, const Multiplier& m) {
  return multiplier_apply(plan, plan.sample_space(f), m);
}

SampledFunction multiplier_apply(const TransformPlan& plan, const FunctionExpr& f, const FunctionExpr& m) {
  if (m.side() != Side::frequency) fail(ErrorCode::invalid_argument, "multiplier must be frequency-side");
  return multiplier_apply(plan, f, [&m](std::span<const double> y) { return m(y); });
}

}  // namespace dunkl
