#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dunkl {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule on [-1, 1] for the weight (1 - t^2)^exponent, exponent > -1.
/// Exact for polynomials of degree <= 2n - 1. exponent = 0 is Gauss-Legendre.
Rule1D gauss_jacobi_rule(int n, double exponent);
Rule1D gauss_legendre(int n);

enum class Scheme { trapezoid, gauss_legendre_panels };

std::string_view to_string(Scheme s) noexcept;

/// How to discretize one axis of a truncation box [-extent, extent].
/// The origin and every breakpoint inside the box become panel boundaries,
/// so integrands with kinks there (|x|^{2 gamma}, indicator edges) are
/// integrated panel-wise smooth.
struct AxisParams {
  double extent = 8.0;
  double panel_width = 0.5;
  int nodes_per_panel = 32;
  Scheme scheme = Scheme::gauss_legendre_panels;
  std::vector<double> breakpoints;
};

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double extent = 0.0;
  Scheme scheme = Scheme::gauss_legendre_panels;

  std::size_t size() const noexcept { return nodes.size(); }
};

AxisRule make_axis(const AxisParams& params);

/// Tensor-product grid; flat indices are row-major with axis 0 slowest.
class QuadratureGrid {
 public:
  QuadratureGrid() = default;
  explicit QuadratureGrid(std::vector<AxisRule> axes);
  static QuadratureGrid uniform(std::size_t d, const AxisParams& params);

  std::size_t dim() const noexcept { return axes_.size(); }
  std::size_t size() const noexcept { return size_; }
  const AxisRule& axis(std::size_t j) const { return axes_.at(j); }
  std::span<const std::size_t> shape() const noexcept { return shape_; }

  void point(std::size_t flat, std::span<double> out) const;
  std::vector<double> point(std::size_t flat) const;
  double weight(std::size_t flat) const;
  double volume() const;

 private:
  std::vector<AxisRule> axes_;
  std::vector<std::size_t> shape_;
  std::size_t size_ = 0;
};

}  // namespace dunkl
