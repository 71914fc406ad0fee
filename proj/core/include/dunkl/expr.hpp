#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl/symbolic.hpp"

namespace dunkl {

using cplx = std::complex<double>;

enum class Side { space, frequency };

std::string_view to_string(Side s) noexcept;
Side side_from_string(std::string_view s);

namespace ast {

enum class Kind {
  constant,
  variable,
  radius2,  // |x|^2
  add,
  sub,
  mul,
  div,
  neg,
  pow,
  exp,
  sin,
  cos,
  sqrt,
  gaussian,  // exp(-t |x|^2)
  bessel,    // j_alpha(arg)
  indicator_box,
  indicator_ball,
  indicator_annulus,
  form,  // pre-built parity form (results of operators and arithmetic)
};

struct Node {
  Kind kind = Kind::constant;
  cplx value{};                // constant
  int axis = 0;                // variable
  std::vector<double> params;  // gaussian t; bessel alpha; indicator extents
  std::vector<std::shared_ptr<const Node>> kids;
  std::shared_ptr<const sym::ParityForm> form;
  std::shared_ptr<const sym::CompiledForm> compiled;
};

using NodePtr = std::shared_ptr<const Node>;

}  // namespace ast

/// Closed-form scalar function on R^d, declared space- or frequency-side.
///
/// Functions inside the differentiable class carry an exact parity-factored
/// form (see sym::ParityForm) from which partials and Dunkl operators are
/// derived symbolically. Indicator leaves make a function non-differentiable;
/// it can still be evaluated.
class FunctionExpr {
 public:
  FunctionExpr() = default;

  /// Parse the expression grammar (documented in docs/grammar.md).
  static FunctionExpr parse(std::string_view body, std::size_t dim, Side side = Side::space);
  static FunctionExpr from_form(sym::ParityForm form, Side side = Side::space);
  static FunctionExpr constant(std::size_t dim, cplx c, Side side = Side::space);

  Side side() const noexcept { return side_; }
  std::size_t dim() const noexcept { return dim_; }
  bool differentiable() const noexcept { return form_ != nullptr; }
  bool is_zero() const noexcept;

  cplx operator()(std::span<const double> x) const;
  cplx operator()(double x) const;

  /// Exact d/dx_j; throws Error(not_differentiable) outside the class.
  FunctionExpr partial(std::size_t j) const;
  const sym::ParityForm& form() const;

  /// Panel breakpoints along an axis contributed by indicator edges.
  std::vector<double> breakpoints(std::size_t axis) const;
  /// Half-width of the smallest origin-centered box containing the support,
  /// when an indicator factor bounds it.
  std::optional<double> support_extent(std::size_t axis) const;

  std::string to_string() const;
  FunctionExpr with_side(Side side) const;

  FunctionExpr operator+(const FunctionExpr& o) const;
  FunctionExpr operator-(const FunctionExpr& o) const;
  FunctionExpr operator*(const FunctionExpr& o) const;
  FunctionExpr scaled(cplx c) const;

 private:
  FunctionExpr(ast::NodePtr node, std::string text, std::size_t dim, Side side);
  static FunctionExpr combine(ast::Kind kind, const FunctionExpr& a, const FunctionExpr& b);

  ast::NodePtr node_;
  std::string text_;
  std::shared_ptr<const sym::ParityForm> form_;
  std::shared_ptr<const sym::CompiledForm> compiled_;
  std::size_t dim_ = 0;
  Side side_ = Side::space;
};

/// Parsed function-spec file: `key=value` items separated by ';' or newlines.
/// Recognized keys: side, body, dim, name.
struct FunctionSpec {
  std::string name;
  Side side = Side::space;
  std::optional<std::size_t> dim;
  std::string body;

  FunctionExpr build(std::size_t default_dim) const;
};

FunctionSpec parse_function_spec(std::string_view text);

namespace detail {
ast::NodePtr parse_expression(std::string_view text, std::size_t dim);
cplx eval_node(const ast::Node& n, std::span<const double> x);
std::optional<sym::ParityForm> to_form(const ast::Node& n, std::size_t dim);
}  // namespace detail

}  // namespace dunkl
