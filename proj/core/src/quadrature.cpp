#include "dunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dunkl/error.hpp"

namespace dunkl {
namespace {

// Off-diagonal squares of the monic three-term recurrence for the symmetric
// Jacobi weight (1 - t^2)^e.
double jacobi_beta(int k, double e) {
  if (k == 1) return 1.0 / (3.0 + 2.0 * e);
  const double kk = k;
  return kk * (kk + 2.0 * e) / ((2.0 * kk + 2.0 * e + 1.0) * (2.0 * kk + 2.0 * e - 1.0));
}

}  // namespace

Rule1D gauss_jacobi_rule(int n, double exponent) {
  if (n < 1) fail(ErrorCode::invalid_argument, "quadrature needs at least one node");
  if (!(exponent > -1.0))
    fail(ErrorCode::invalid_argument, "Jacobi exponent must be > -1 (weight not integrable)");

  const double mu0 = std::sqrt(std::numbers::pi) * std::exp(std::lgamma(exponent + 1.0) -
                                                            std::lgamma(exponent + 1.5));
  std::vector<double> sqrt_beta(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) sqrt_beta[k] = std::sqrt(jacobi_beta(k, exponent));

  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = mu0;
    return rule;
  }

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 0; k < n - 1; ++k) sub[k] = sqrt_beta[k + 1];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  // Newton polish on the orthonormal recurrence; weights from Christoffel numbers.
  for (int i = 0; i < n; ++i) {
    double t = eig.eigenvalues()[i];
    double christoffel = 0.0;
    for (int iter = 0; iter < 4; ++iter) {
      double q_prev = 0.0, q = 1.0 / std::sqrt(mu0);
      double dq_prev = 0.0, dq = 0.0;
      christoffel = q * q;
      for (int k = 0; k < n; ++k) {
        const double q_next = (t * q - sqrt_beta[k] * q_prev) / sqrt_beta[k + 1];
        const double dq_next = (q + t * dq - sqrt_beta[k] * dq_prev) / sqrt_beta[k + 1];
        q_prev = q;
        q = q_next;
        dq_prev = dq;
        dq = dq_next;
        if (k < n - 1) christoffel += q * q;
      }
      const double step = q / dq;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = t;
    rule.weights[i] = 1.0 / christoffel;
  }
  // Symmetrize: the weight is even, so the rule is too.
  for (int i = 0; i < n / 2; ++i) {
    const int m = n - 1 - i;
    const double t = 0.5 * (rule.nodes[m] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[m] + rule.weights[i]);
    rule.nodes[i] = -t;
    rule.nodes[m] = t;
    rule.weights[i] = rule.weights[m] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Rule1D gauss_legendre(int n) { return gauss_jacobi_rule(n, 0.0); }

std::string_view to_string(Scheme s) noexcept {
  return s == Scheme::trapezoid ? "trapezoid" : "gauss_legendre_panels";
}

AxisRule make_axis(const AxisParams& p) {
  if (!(p.extent > 0.0) || !(p.panel_width > 0.0) || p.nodes_per_panel < 1)
    fail(ErrorCode::invalid_argument, "axis needs extent > 0, panel_width > 0, nodes_per_panel >= 1");

  AxisRule axis;
  axis.extent = p.extent;
  axis.scheme = p.scheme;

  if (p.scheme == Scheme::trapezoid) {
    const auto intervals = static_cast<std::size_t>(
        std::max(2.0, std::ceil(2.0 * p.extent / p.panel_width * p.nodes_per_panel)));
    const double h = 2.0 * p.extent / static_cast<double>(intervals);
    for (std::size_t i = 0; i <= intervals; ++i) {
      axis.nodes.push_back(-p.extent + h * static_cast<double>(i));
      axis.weights.push_back((i == 0 || i == intervals) ? 0.5 * h : h);
    }
    return axis;
  }

  std::vector<double> breaks{-p.extent, 0.0, p.extent};
  for (double b : p.breakpoints)
    if (b > -p.extent && b < p.extent) breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) { return std::abs(a - b) < 1e-14 * p.extent; }),
               breaks.end());

  const Rule1D base = gauss_legendre(p.nodes_per_panel);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s];
    const double b = breaks[s + 1];
    const auto panels = static_cast<int>(std::max(1.0, std::ceil((b - a) / p.panel_width - 1e-9)));
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
      const double lo = a + h * k;
      const double mid = lo + 0.5 * h;
      for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        axis.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
        axis.weights.push_back(0.5 * h * base.weights[i]);
      }
    }
  }
  return axis;
}

QuadratureGrid::QuadratureGrid(std::vector<AxisRule> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) fail(ErrorCode::invalid_argument, "grid needs at least one axis");
  size_ = 1;
  for (const auto& a : axes_) {
    if (a.nodes.empty() || a.nodes.size() != a.weights.size())
      fail(ErrorCode::invalid_argument, "axis rule node/weight lists are inconsistent");
    shape_.push_back(a.nodes.size());
    size_ *= a.nodes.size();
  }
}

QuadratureGrid QuadratureGrid::uniform(std::size_t d, const AxisParams& params) {
  return QuadratureGrid(std::vector<AxisRule>(d, make_axis(params)));
}

void QuadratureGrid::point(std::size_t flat, std::span<double> out) const {
  for (std::size_t j = axes_.size(); j-- > 0;) {
    const std::size_t n = shape_[j];
    out[j] = axes_[j].nodes[flat % n];
    flat /= n;
  }
}

std::vector<double> QuadratureGrid::point(std::size_t flat) const {
  std::vector<double> x(axes_.size());
  point(flat, x);
  return x;
}

double QuadratureGrid::weight(std::size_t flat) const {
  double w = 1.0;
  for (std::size_t j = axes_.size(); j-- > 0;) {
    const std::size_t n = shape_[j];
    w *= axes_[j].weights[flat % n];
    flat /= n;
  }
  return w;
}

double QuadratureGrid::volume() const {
  double v = 1.0;
  for (const auto& a : axes_) {
    double s = 0.0;
    for (double w : a.weights) s += w;
    v *= s;
  }
  return v;
}

}  // namespace dunkl
