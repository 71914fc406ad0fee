#include "dunkl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

using sym::EvenForm;
using sym::ParityForm;

std::size_t PolynomialSpec::dim() const { return terms.empty() ? 0 : terms.front().mu.size(); }

int PolynomialSpec::degree() const {
  int deg = 0;
  for (const auto& t : terms)
    if (t.coeff != cplx(0.0)) deg = std::max(deg, std::accumulate(t.mu.begin(), t.mu.end(), 0));
  return deg;
}

cplx PolynomialSpec::operator()(std::span<const cplx> y) const {
  cplx sum = 0.0;
  for (const auto& t : terms) {
    cplx v = t.coeff;
    for (std::size_t j = 0; j < t.mu.size(); ++j) v *= std::pow(y[j], t.mu[j]);
    sum += v;
  }
  return sum;
}

cplx PolynomialSpec::operator()(std::span<const double> y) const {
  std::vector<cplx> c(y.begin(), y.end());
  return (*this)(c);
}

void PolynomialSpec::validate() const {
  if (terms.empty()) fail(ErrorCode::invalid_argument, "polynomial has no terms");
  const std::size_t d = dim();
  for (const auto& t : terms) {
    if (t.mu.size() != d) fail(ErrorCode::invalid_argument, "polynomial multi-indices differ in length");
    if (std::any_of(t.mu.begin(), t.mu.end(), [](int m) { return m < 0; }))
      fail(ErrorCode::invalid_argument, "negative exponent in polynomial");
  }
  if (degree() < 1) fail(ErrorCode::invalid_argument, "polynomial must be non-constant");
}

std::string PolynomialSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.real();
    if (t.coeff.imag() != 0.0) os << (t.coeff.imag() < 0 ? "-" : "+") << std::abs(t.coeff.imag()) << "i";
    os << ")";
    for (std::size_t j = 0; j < t.mu.size(); ++j)
      if (t.mu[j] > 0) os << "*y" << j + 1 << (t.mu[j] > 1 ? "^" + std::to_string(t.mu[j]) : "");
  }
  return os.str();
}

PolynomialSpec PolynomialSpec::neg_norm2(std::size_t d) {
  PolynomialSpec p;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<int> mu(d, 0);
    mu[j] = 2;
    p.terms.push_back({mu, -1.0});
  }
  return p;
}

PolynomialSpec PolynomialSpec::monomial(std::vector<int> mu, cplx coeff) {
  PolynomialSpec p;
  p.terms.push_back({std::move(mu), coeff});
  return p;
}

PolynomialSpec PolynomialSpec::linear(std::span<const double> a) {
  PolynomialSpec p;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0.0) continue;
    std::vector<int> mu(a.size(), 0);
    mu[j] = 1;
    p.terms.push_back({mu, a[j]});
  }
  return p;
}

namespace {

void check_operand(const MultiplicitySpec& spec, const FunctionExpr& f) {
  if (f.dim() != spec.dim()) fail(ErrorCode::invalid_argument, "function and multiplicity dimensions differ");
  if (f.side() != Side::space) fail(ErrorCode::invalid_argument, "Dunkl operators act on space-side functions");
  if (!f.differentiable())
    fail(ErrorCode::not_differentiable, "'" + f.to_string() + "' is outside the differentiable grammar");
}

// Drop imaginary parts that are round-off relative to the largest coefficient.
ParityForm realify(const ParityForm& f, double rel = 1e-10) {
  double peak = 0.0, imag_peak = 0.0;
  for (const auto& [mask, h] : f.components())
    for (const auto& [key, c] : h.terms()) {
      peak = std::max(peak, std::abs(c));
      imag_peak = std::max(imag_peak, std::abs(c.imag()));
    }
  if (imag_peak == 0.0 || imag_peak >= rel * peak) return f;
  ParityForm out(f.dim());
  for (const auto& [mask, h] : f.components()) {
    EvenForm r(f.dim());
    for (const auto& [key, c] : h.terms()) r.add_term(key, c.real());
    out.add_component(mask, r);
  }
  return out;
}

}  // namespace

FunctionExpr dunkl_apply(const MultiplicitySpec& spec, std::size_t j, const FunctionExpr& f) {
  check_operand(spec, f);
  if (j >= spec.dim()) fail(ErrorCode::invalid_argument, "axis out of range");
  return FunctionExpr::from_form(f.form().dunkl(static_cast<int>(j), spec.gamma(j)), Side::space);
}

FunctionExpr dunkl_laplacian(const MultiplicitySpec& spec, const FunctionExpr& f) {
  check_operand(spec, f);
  ParityForm sum(spec.dim());
  for (std::size_t j = 0; j < spec.dim(); ++j) {
    const int a = static_cast<int>(j);
    sum += f.form().dunkl(a, spec.gamma(j)).dunkl(a, spec.gamma(j));
  }
  return FunctionExpr::from_form(std::move(sum), Side::space);
}

FunctionExpr dunkl_laplacian_power(const MultiplicitySpec& spec, const FunctionExpr& f, int n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "power must be >= 0");
  if (2 * n > kDefaultDepthCap)
    fail(ErrorCode::depth_exceeded, "Delta_k^" + std::to_string(n) + " exceeds the operator depth cap of " +
                                        std::to_string(kDefaultDepthCap) + "; use the multiplier route");
  FunctionExpr g = f;
  for (int m = 0; m < n; ++m) g = dunkl_laplacian(spec, g);
  return g;
}

OperatorResult poly_iT_apply(const MultiplicitySpec& spec, const PolynomialSpec& P, const FunctionExpr& f, int n,
                             int depth_cap) {
  P.validate();
  if (P.dim() != spec.dim()) fail(ErrorCode::invalid_argument, "polynomial and multiplicity dimensions differ");
  if (n < 0) fail(ErrorCode::invalid_argument, "iteration count must be >= 0");
  if (static_cast<long>(n) * P.degree() > depth_cap)
    fail(ErrorCode::depth_exceeded, "n * deg(P) = " + std::to_string(static_cast<long>(n) * P.degree()) +
                                        " exceeds the depth cap " + std::to_string(depth_cap) +
                                        "; use the frequency-side multiplier route");
  check_operand(spec, f);

  // Lexicographic order of multi-indices; within a term T_1^{mu_1} first.
  std::vector<PolynomialSpec::Term> order = P.terms;
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });

  OperatorResult out;
  ParityForm cur = f.form();
  for (int it = 0; it < n; ++it) {
    ParityForm next(spec.dim());
    for (const auto& t : order) {
      if (t.coeff == cplx(0.0)) continue;
      ParityForm g = cur;
      int deg = 0;
      for (std::size_t j = 0; j < t.mu.size(); ++j)
        for (int r = 0; r < t.mu[j]; ++r, ++deg) g = g.dunkl(static_cast<int>(j), spec.gamma(j));
      static constexpr cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      next += (t.coeff * ipow[deg % 4]) * g;
    }
    cur = realify(next);
    out.log.push_back("application " + std::to_string(it + 1) + ": " + std::to_string(order.size()) +
                      " terms, exact reflection quotient, " + std::to_string(cur.term_count()) + " result terms");
  }
  out.function = FunctionExpr::from_form(std::move(cur), Side::space);
  return out;
}

PointwiseValue dunkl_apply_pointwise(const MultiplicitySpec& spec, std::size_t j, const PointFn& f,
                                     const PointFn& partial_j, std::span<const double> x, double axis_scale) {
  if (j >= spec.dim() || x.size() != spec.dim()) fail(ErrorCode::invalid_argument, "bad pointwise operator arguments");
  PointwiseValue out;
  out.value = partial_j(x);
  const double g = spec.gamma(j);
  if (g == 0.0) return out;
  std::vector<double> y(x.begin(), x.end());
  if (std::abs(x[j]) < 1e-6 * axis_scale) {
    y[j] = 0.0;
    out.value += g * 2.0 * partial_j(y);
    out.limit_rule = true;
  } else {
    y[j] = -x[j];
    out.value += g * (f(x) - f(y)) / x[j];
  }
  return out;
}

cplx laplacian_expanded(const MultiplicitySpec& spec, const FunctionExpr& f, std::span<const double> x) {
  check_operand(spec, f);
  cplx sum = 0.0;
  std::vector<double> y(x.begin(), x.end());
  const cplx fx = f(x);
  for (std::size_t j = 0; j < spec.dim(); ++j) {
    const FunctionExpr dj = f.partial(j);
    sum += dj.partial(j)(x);
    const double g = spec.gamma(j);
    if (g == 0.0) continue;
    y[j] = -x[j];
    const cplx fr = f(y);
    y[j] = x[j];
    sum += 2.0 * g * (dj(x) / x[j] - (fx - fr) / (2.0 * x[j] * x[j]));
  }
  return sum;
}

}  // namespace dunkl
