#include "dunkl/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

SampledFunction::SampledFunction(std::shared_ptr<const QuadratureGrid> g, std::vector<cplx> v, Side s)
    : grid(std::move(g)), values(std::move(v)), side(s) {
  if (!grid || grid->size() != values.size())
    fail(ErrorCode::invalid_argument, "sampled values must match the grid node count");
}

SampledFunction SampledFunction::sample(std::shared_ptr<const QuadratureGrid> g, const FunctionExpr& f) {
  if (!g || g->dim() != f.dim()) fail(ErrorCode::invalid_argument, "grid and function dimensions differ");
  std::vector<cplx> v(g->size());
  std::vector<double> x(g->dim());
  for (std::size_t i = 0; i < g->size(); ++i) {
    g->point(i, x);
    v[i] = f(x);
  }
  SampledFunction s(std::move(g), std::move(v), f.side());
  s.boundary_level = dunkl::boundary_level(s);
  return s;
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& o) {
  if (o.grid != grid && (o.size() != size())) fail(ErrorCode::invalid_argument, "sampled functions on different grids");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  truncation_flag = truncation_flag || o.truncation_flag;
  amplification_flag = amplification_flag || o.amplification_flag;
  return *this;
}

SampledFunction& SampledFunction::operator*=(cplx c) {
  for (auto& v : values) v *= c;
  return *this;
}

SampledFunction operator-(const SampledFunction& a, const SampledFunction& b) {
  SampledFunction r = a;
  r += (-1.0) * b;
  return r;
}

SampledFunction operator*(cplx c, SampledFunction a) {
  a *= c;
  return a;
}

double boundary_level(const SampledFunction& f) {
  const double peak = f.max_abs();
  if (peak == 0.0 || !f.grid) return 0.0;
  const auto& g = *f.grid;
  const std::size_t d = g.dim();
  // Nodes within the outermost 1/16 of each half-axis count as boundary.
  std::vector<double> x(d);
  double edge = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, x);
    for (std::size_t j = 0; j < d; ++j) {
      const double L = g.axis(j).extent;
      if (std::abs(x[j]) >= L * (15.0 / 16.0)) {
        edge = std::max(edge, std::abs(f.values[i]));
        break;
      }
    }
  }
  return edge / peak;
}

void write_csv(std::ostream& os, const SampledFunction& f) {
  if (!f.grid) fail(ErrorCode::invalid_argument, "sampled function has no grid");
  const std::size_t d = f.grid->dim();
  for (std::size_t j = 0; j < d; ++j) os << "x" << j + 1 << ",";
  os << "re,im\n";
  os << std::setprecision(17);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.grid->point(i, x);
    for (double v : x) os << v << ",";
    os << f.values[i].real() << "," << f.values[i].imag() << "\n";
  }
}

void write_csv(const std::string& path, const SampledFunction& f) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  write_csv(os, f);
}

SampledFunction read_csv(std::istream& is, std::shared_ptr<const QuadratureGrid> grid, Side side) {
  if (!grid) fail(ErrorCode::invalid_argument, "read_csv needs a grid");
  const std::size_t d = grid->dim();
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::io, "empty CSV");
  std::vector<cplx> values;
  values.reserve(grid->size());
  std::vector<double> x(d);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != d + 2) fail(ErrorCode::parse, "CSV row has " + std::to_string(row.size()) + " columns");
    const std::size_t i = values.size();
    if (i >= grid->size()) fail(ErrorCode::parse, "CSV has more rows than grid nodes");
    grid->point(i, x);
    for (std::size_t j = 0; j < d; ++j)
      if (std::abs(row[j] - x[j]) > 1e-12 * (1.0 + std::abs(x[j])))
        fail(ErrorCode::parse, "CSV node coordinates do not match the grid");
    values.emplace_back(row[d], row[d + 1]);
  }
  return SampledFunction(std::move(grid), std::move(values), side);
}

}  // namespace dunkl
