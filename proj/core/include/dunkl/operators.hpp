#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dunkl/expr.hpp"
#include "dunkl/multiplicity.hpp"

namespace dunkl {

/// Polynomial P(y) = sum_mu c_mu y^mu on R^d.
struct PolynomialSpec {
  struct Term {
    std::vector<int> mu;
    cplx coeff;
  };
  std::vector<Term> terms;

  std::size_t dim() const;
  int degree() const;
  cplx operator()(std::span<const cplx> y) const;
  cplx operator()(std::span<const double> y) const;
  /// Throws unless there is a term of total degree >= 1 and all multi-indices share one dimension.
  void validate() const;
  std::string to_string() const;

  static PolynomialSpec neg_norm2(std::size_t d);  // -||y||^2
  static PolynomialSpec monomial(std::vector<int> mu, cplx coeff = 1.0);
  /// Linear form <a, y>.
  static PolynomialSpec linear(std::span<const double> a);
};

struct OperatorResult {
  FunctionExpr function;
  std::vector<std::string> log;
};

/// T_j f = d_j f + gamma_j (f - f o sigma_j) / x_j, exactly (parity-form route).
FunctionExpr dunkl_apply(const MultiplicitySpec& spec, std::size_t j, const FunctionExpr& f);

/// sum_j T_j^2 f.
FunctionExpr dunkl_laplacian(const MultiplicitySpec& spec, const FunctionExpr& f);

/// Delta_k^n f.
FunctionExpr dunkl_laplacian_power(const MultiplicitySpec& spec, const FunctionExpr& f, int n);

inline constexpr int kDefaultDepthCap = 24;

/// P(iT)^n f; throws Error(depth_exceeded) when n * deg P > depth_cap.
OperatorResult poly_iT_apply(const MultiplicitySpec& spec, const PolynomialSpec& P, const FunctionExpr& f, int n,
                             int depth_cap = kDefaultDepthCap);

struct PointwiseValue {
  cplx value;
  bool limit_rule = false;  // |x_j| < eps: quotient replaced by 2 d_j f(x with x_j = 0)
};

using PointFn = std::function<cplx(std::span<const double>)>;

/// T_j at one point from callables for f and d_j f. For |x_j| < 1e-6 * axis_scale
/// the quotient (f(x) - f(sigma_j x)) / x_j is replaced by its limit 2 d_j f(x0).
PointwiseValue dunkl_apply_pointwise(const MultiplicitySpec& spec, std::size_t j, const PointFn& f,
                                     const PointFn& partial_j, std::span<const double> x, double axis_scale = 1.0);

/// Laplacian in the expanded form Delta f + 2 sum_j gamma_j delta_j f with
/// delta_j f = d_j f / x_j - (f - f o sigma_j) / (2 x_j^2). Smooth points only.
cplx laplacian_expanded(const MultiplicitySpec& spec, const FunctionExpr& f, std::span<const double> x);

}  // namespace dunkl
