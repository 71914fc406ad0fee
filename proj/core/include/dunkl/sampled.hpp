#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dunkl/expr.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// Values on the nodes of a tensor quadrature grid (flat row-major order).
struct SampledFunction {
  std::shared_ptr<const QuadratureGrid> grid;
  std::vector<cplx> values;
  Side side = Side::space;

  // Diagnostics attached by the producing operation.
  double boundary_level = 0.0;  // max |value| on the outermost nodes relative to max |value|
  bool truncation_flag = false;
  bool amplification_flag = false;

  SampledFunction() = default;
  SampledFunction(std::shared_ptr<const QuadratureGrid> g, std::vector<cplx> v, Side s);

  static SampledFunction sample(std::shared_ptr<const QuadratureGrid> g, const FunctionExpr& f);

  std::size_t size() const noexcept { return values.size(); }
  double max_abs() const;

  SampledFunction& operator+=(const SampledFunction& o);
  SampledFunction& operator*=(cplx c);
};

SampledFunction operator-(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(cplx c, SampledFunction a);

/// CSV: one row per node, columns x1..xd, re, im, preceded by a header line.
void write_csv(std::ostream& os, const SampledFunction& f);
void write_csv(const std::string& path, const SampledFunction& f);
/// Reads back values written by write_csv onto a grid with the same node order.
SampledFunction read_csv(std::istream& is, std::shared_ptr<const QuadratureGrid> grid, Side side);

/// Largest |value| over nodes that lie on the outermost panel of any axis,
/// relative to the overall maximum.
double boundary_level(const SampledFunction& f);

}  // namespace dunkl
