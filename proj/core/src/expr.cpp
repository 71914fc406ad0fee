#include "dunkl/expr.hpp"

#include <algorithm>
#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/special.hpp"

namespace dunkl {

using ast::Kind;
using ast::Node;
using sym::EvenForm;
using sym::ParityForm;
using sym::TermKey;

std::string_view to_string(Side s) noexcept { return s == Side::space ? "space" : "frequency"; }

Side side_from_string(std::string_view s) {
  if (s == "space") return Side::space;
  if (s == "frequency") return Side::frequency;
  fail(ErrorCode::parse, "side must be 'space' or 'frequency', got '" + std::string(s) + "'");
}

namespace detail {
namespace {

double sum_sq(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r += v * v;
  return r;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

cplx power(cplx base, cplx e) {
  if (e.imag() == 0.0 && base.imag() == 0.0 && (base.real() > 0.0 || is_integer(e.real())))
    return std::pow(base.real(), e.real());
  if (base == cplx(0.0) && e.imag() == 0.0 && e.real() > 0.0) return 0.0;
  return std::pow(base, e);
}

TermKey unit(std::size_t dim) {
  TermKey k;
  k.mono.assign(dim, 0);
  k.expo.assign(dim, cplx(0.0));
  return k;
}

bool is_unit(const TermKey& k) {
  return k.bessel.empty() && k.pows.empty() &&
         std::all_of(k.mono.begin(), k.mono.end(), [](int m) { return m == 0; }) &&
         std::all_of(k.expo.begin(), k.expo.end(), [](cplx e) { return e == cplx(0.0); });
}

bool as_constant(const ParityForm& f, cplx& c) {
  if (f.is_zero()) {
    c = 0.0;
    return true;
  }
  if (f.components().size() != 1 || f.components().begin()->first != 0) return false;
  const auto& h = f.components().begin()->second;
  if (h.terms().size() != 1 || !is_unit(h.terms().begin()->first)) return false;
  c = h.terms().begin()->second;
  return true;
}

// f = c * x_axis exactly; returns the axis or -1.
int as_linear(const ParityForm& f, cplx& c) {
  if (f.components().size() != 1) return -1;
  const auto& [mask, h] = *f.components().begin();
  if (mask == 0 || (mask & (mask - 1)) != 0) return -1;
  if (h.terms().size() != 1 || !is_unit(h.terms().begin()->first)) return -1;
  c = h.terms().begin()->second;
  return std::countr_zero(mask);
}

ParityForm bessel_form(std::size_t dim, int axis, double alpha, cplx a) {
  TermKey k = unit(dim);
  k.bessel.push_back({axis, alpha, a});
  EvenForm h(dim);
  h.add_term(k, 1.0);
  return ParityForm::even(h);
}

// cos(c x) = J^_{-1/2}(c^2 s), sin(c x) = x c J^_{1/2}(c^2 s)
ParityForm cos_form(std::size_t dim, int axis, cplx c) { return bessel_form(dim, axis, -0.5, c * c); }

ParityForm sin_form(std::size_t dim, int axis, cplx c) {
  return ParityForm::variable(dim, axis).times(c * bessel_form(dim, axis, 0.5, c * c));
}

std::optional<ParityForm> even_power(const ParityForm& f, double r) {
  if (f.is_zero()) return std::nullopt;
  if (f.components().size() != 1 || f.components().begin()->first != 0) return std::nullopt;
  const EvenForm& h = f.components().begin()->second;
  const std::size_t dim = f.dim();
  std::vector<cplx> base;
  if (h.affine(base)) {
    cplx c0 = base[0];
    if (std::all_of(base.begin() + 1, base.end(), [](cplx b) { return b == cplx(0.0); }))
      return ParityForm::constant(dim, power(c0, r));
    TermKey k = unit(dim);
    k.pows.push_back({base, r});
    EvenForm out(dim);
    out.add_term(k, 1.0);
    return ParityForm::even(out);
  }
  TermKey key;
  cplx coeff;
  if (h.simple_single(key, coeff)) {
    for (auto& e : key.expo) e *= r;
    for (auto& p : key.pows) p.r *= r;
    key.pows.erase(std::remove_if(key.pows.begin(), key.pows.end(), [](const sym::PowFactor& p) { return p.r == 0.0; }),
                   key.pows.end());
    EvenForm out(dim);
    out.add_term(key, power(coeff, r));
    return ParityForm::even(out);
  }
  return std::nullopt;
}

std::optional<ParityForm> int_power(const ParityForm& f, long n) {
  ParityForm result = ParityForm::constant(f.dim(), 1.0);
  ParityForm base = f;
  while (n > 0) {
    if (n & 1) result = result.times(base);
    n >>= 1;
    if (n) base = base.times(base);
  }
  return result;
}

std::optional<ParityForm> exp_form(const ParityForm& u) {
  const std::size_t dim = u.dim();
  cplx scalar = 1.0;
  std::vector<cplx> expo(dim, cplx(0.0));
  ParityForm result = ParityForm::constant(dim, 1.0);
  for (const auto& [mask, h] : u.components()) {
    if (mask == 0) {
      std::vector<cplx> base;
      if (!h.affine(base)) return std::nullopt;
      scalar *= std::exp(base[0]);
      for (std::size_t j = 0; j < dim; ++j) expo[j] += base[j + 1];
    } else {
      if ((mask & (mask - 1)) != 0) return std::nullopt;
      if (h.terms().size() != 1 || !is_unit(h.terms().begin()->first)) return std::nullopt;
      const cplx c = h.terms().begin()->second;
      const int axis = std::countr_zero(mask);
      // e^{c x} = cosh(c x) + sinh(c x) = J^_{-1/2}(-c^2 s) + x c J^_{1/2}(-c^2 s)
      ParityForm factor = bessel_form(dim, axis, -0.5, -c * c);
      factor += ParityForm::variable(dim, axis).times(c * bessel_form(dim, axis, 0.5, -c * c));
      result = result.times(factor);
    }
  }
  TermKey k = unit(dim);
  k.expo = expo;
  EvenForm e(dim);
  e.add_term(k, scalar);
  return result.times(ParityForm::even(e));
}

// u = c x_j + d with constants c, d.
bool as_affine_axis(const ParityForm& u, int& axis, cplx& c, cplx& d) {
  axis = -1;
  c = 0.0;
  d = 0.0;
  for (const auto& [mask, h] : u.components()) {
    if (h.terms().size() != 1 || !is_unit(h.terms().begin()->first)) return false;
    const cplx v = h.terms().begin()->second;
    if (mask == 0) {
      d = v;
    } else if ((mask & (mask - 1)) == 0 && axis < 0) {
      axis = std::countr_zero(mask);
      c = v;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

cplx eval_node(const Node& n, std::span<const double> x) {
  switch (n.kind) {
    case Kind::constant: return n.value;
    case Kind::variable: return x[static_cast<std::size_t>(n.axis)];
    case Kind::radius2: return sum_sq(x);
    case Kind::add: return eval_node(*n.kids[0], x) + eval_node(*n.kids[1], x);
    case Kind::sub: return eval_node(*n.kids[0], x) - eval_node(*n.kids[1], x);
    case Kind::mul: return eval_node(*n.kids[0], x) * eval_node(*n.kids[1], x);
    case Kind::div: return eval_node(*n.kids[0], x) / eval_node(*n.kids[1], x);
    case Kind::neg: return -eval_node(*n.kids[0], x);
    case Kind::pow: return power(eval_node(*n.kids[0], x), eval_node(*n.kids[1], x));
    case Kind::exp: return std::exp(eval_node(*n.kids[0], x));
    case Kind::sin: return std::sin(eval_node(*n.kids[0], x));
    case Kind::cos: return std::cos(eval_node(*n.kids[0], x));
    case Kind::sqrt: {
      const cplx v = eval_node(*n.kids[0], x);
      return (v.imag() == 0.0 && v.real() >= 0.0) ? cplx(std::sqrt(v.real())) : std::sqrt(v);
    }
    case Kind::gaussian: return std::exp(-n.params[0] * sum_sq(x));
    case Kind::bessel: return normalized_bessel(n.params[0], eval_node(*n.kids[0], x));
    case Kind::indicator_box:
      for (std::size_t j = 0; j < x.size(); ++j)
        if (std::abs(x[j]) > n.params[j]) return 0.0;
      return 1.0;
    case Kind::indicator_ball: return sum_sq(x) <= n.params[0] * n.params[0] ? 1.0 : 0.0;
    case Kind::indicator_annulus: {
      const double r2 = sum_sq(x);
      return (r2 >= n.params[0] * n.params[0] && r2 <= n.params[1] * n.params[1]) ? 1.0 : 0.0;
    }
    case Kind::form: return (*n.compiled)(x);
  }
  return 0.0;
}

std::optional<ParityForm> to_form(const Node& n, std::size_t dim) {
  auto kid = [&](std::size_t i) { return to_form(*n.kids[i], dim); };
  switch (n.kind) {
    case Kind::constant: return ParityForm::constant(dim, n.value);
    case Kind::variable: return ParityForm::variable(dim, n.axis);
    case Kind::radius2: {
      EvenForm h(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        TermKey k = unit(dim);
        k.mono[j] = 1;
        h.add_term(k, 1.0);
      }
      return ParityForm::even(h);
    }
    case Kind::add:
    case Kind::sub: {
      auto a = kid(0), b = kid(1);
      if (!a || !b) return std::nullopt;
      if (n.kind == Kind::sub) *b *= -1.0;
      return *a + *b;
    }
    case Kind::neg: {
      auto a = kid(0);
      if (!a) return std::nullopt;
      *a *= -1.0;
      return a;
    }
    case Kind::mul: {
      auto a = kid(0), b = kid(1);
      if (!a || !b) return std::nullopt;
      return a->times(*b);
    }
    case Kind::div: {
      auto a = kid(0), b = kid(1);
      if (!a || !b) return std::nullopt;
      cplx c;
      if (as_constant(*b, c)) {
        if (c == cplx(0.0)) return std::nullopt;
        *a *= 1.0 / c;
        return a;
      }
      auto inv = even_power(*b, -1.0);
      if (!inv) return std::nullopt;
      return a->times(*inv);
    }
    case Kind::sqrt:
    case Kind::pow: {
      auto base = kid(0);
      if (!base) return std::nullopt;
      cplx e = 0.5;
      if (n.kind == Kind::pow) {
        auto ef = kid(1);
        if (!ef || !as_constant(*ef, e) || e.imag() != 0.0) return std::nullopt;
      }
      const double r = e.real();
      cplx c;
      if (as_constant(*base, c)) return ParityForm::constant(dim, power(c, r));
      // (b0 + sum b_j s_j)^r with b0 != 0 stays one factor so it remains invertible
      if (base->components().size() == 1 && base->components().begin()->first == 0) {
        std::vector<cplx> aff;
        if (base->components().begin()->second.affine(aff) && aff[0] != cplx(0.0)) return even_power(*base, r);
      }
      if (is_integer(r) && r >= 0.0 && r <= 64.0) return int_power(*base, static_cast<long>(r));
      return even_power(*base, r);
    }
    case Kind::exp: {
      auto u = kid(0);
      if (!u) return std::nullopt;
      return exp_form(*u);
    }
    case Kind::sin:
    case Kind::cos: {
      auto u = kid(0);
      if (!u) return std::nullopt;
      int axis;
      cplx c, d;
      if (!as_affine_axis(*u, axis, c, d)) return std::nullopt;
      const bool is_sin = n.kind == Kind::sin;
      if (axis < 0) return ParityForm::constant(dim, is_sin ? std::sin(d) : std::cos(d));
      const ParityForm cs = cos_form(dim, axis, c);
      const ParityForm sn = sin_form(dim, axis, c);
      // sin(cx + d) = sin(cx) cos d + cos(cx) sin d ; cos(cx + d) = cos(cx) cos d - sin(cx) sin d
      if (is_sin) return std::cos(d) * sn + std::sin(d) * cs;
      return std::cos(d) * cs + (-std::sin(d)) * sn;
    }
    case Kind::gaussian: {
      TermKey k = unit(dim);
      std::fill(k.expo.begin(), k.expo.end(), cplx(-n.params[0]));
      EvenForm h(dim);
      h.add_term(k, 1.0);
      return ParityForm::even(h);
    }
    case Kind::bessel: {
      auto u = kid(0);
      if (!u) return std::nullopt;
      cplx c;
      if (as_constant(*u, c)) return ParityForm::constant(dim, normalized_bessel(n.params[0], c));
      const int axis = as_linear(*u, c);
      if (axis < 0) return std::nullopt;
      return bessel_form(dim, axis, n.params[0], c * c);
    }
    case Kind::indicator_box:
    case Kind::indicator_ball:
    case Kind::indicator_annulus:
      return std::nullopt;
    case Kind::form: return *n.form;
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

ast::NodePtr form_node(std::shared_ptr<const ParityForm> form) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::form;
  n->compiled = std::make_shared<const sym::CompiledForm>(*form);
  n->form = std::move(form);
  return n;
}

void collect_breaks(const Node& n, std::size_t axis, std::vector<double>& out) {
  switch (n.kind) {
    case Kind::indicator_box:
      out.push_back(-n.params[axis]);
      out.push_back(n.params[axis]);
      break;
    case Kind::indicator_ball:
      out.push_back(-n.params[0]);
      out.push_back(n.params[0]);
      break;
    case Kind::indicator_annulus:
      for (double r : n.params) {
        out.push_back(-r);
        out.push_back(r);
      }
      break;
    default:
      break;
  }
  for (const auto& k : n.kids) collect_breaks(*k, axis, out);
}

std::optional<double> extent_of(const Node& n, std::size_t axis) {
  switch (n.kind) {
    case Kind::indicator_box: return n.params[axis];
    case Kind::indicator_ball: return n.params[0];
    case Kind::indicator_annulus: return n.params[1];
    case Kind::neg: return extent_of(*n.kids[0], axis);
    case Kind::div: return extent_of(*n.kids[0], axis);
    case Kind::mul: {
      auto a = extent_of(*n.kids[0], axis), b = extent_of(*n.kids[1], axis);
      if (a && b) return std::min(*a, *b);
      return a ? a : b;
    }
    case Kind::add:
    case Kind::sub: {
      auto a = extent_of(*n.kids[0], axis), b = extent_of(*n.kids[1], axis);
      if (a && b) return std::max(*a, *b);
      return std::nullopt;
    }
    case Kind::constant:
      if (n.value == cplx(0.0)) return 0.0;
      return std::nullopt;
    default: return std::nullopt;
  }
}

}  // namespace

FunctionExpr::FunctionExpr(ast::NodePtr node, std::string text, std::size_t dim, Side side)
    : node_(std::move(node)), text_(std::move(text)), dim_(dim), side_(side) {
  if (node_->kind == Kind::form) {
    form_ = node_->form;
    compiled_ = node_->compiled;
  } else if (auto f = detail::to_form(*node_, dim_)) {
    form_ = std::make_shared<const ParityForm>(std::move(*f));
    compiled_ = std::make_shared<const sym::CompiledForm>(*form_);
  }
}

FunctionExpr FunctionExpr::parse(std::string_view body, std::size_t dim, Side side) {
  return FunctionExpr(detail::parse_expression(body, dim), std::string(body), dim, side);
}

FunctionExpr FunctionExpr::from_form(ParityForm form, Side side) {
  const std::size_t dim = form.dim();
  auto shared = std::make_shared<const ParityForm>(std::move(form));
  return FunctionExpr(form_node(shared), std::string{}, dim, side);
}

FunctionExpr FunctionExpr::constant(std::size_t dim, cplx c, Side side) {
  return from_form(ParityForm::constant(dim, c), side);
}

bool FunctionExpr::is_zero() const noexcept {
  if (form_) return form_->is_zero();
  return node_ && node_->kind == Kind::constant && node_->value == cplx(0.0);
}

cplx FunctionExpr::operator()(std::span<const double> x) const {
  if (x.size() != dim_) fail(ErrorCode::invalid_argument, "point dimension does not match function dimension");
  // Indicator-free functions evaluate through the parity form so that
  // operator outputs and their inputs share one evaluation path.
  if (compiled_) return (*compiled_)(x);
  return detail::eval_node(*node_, x);
}

cplx FunctionExpr::operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }

const ParityForm& FunctionExpr::form() const {
  if (!form_)
    fail(ErrorCode::not_differentiable,
         "function '" + to_string() + "' is outside the differentiable grammar (indicator or unsupported composition)");
  return *form_;
}

FunctionExpr FunctionExpr::partial(std::size_t j) const {
  if (j >= dim_) fail(ErrorCode::invalid_argument, "axis out of range");
  return from_form(form().partial(static_cast<int>(j)), side_);
}

std::vector<double> FunctionExpr::breakpoints(std::size_t axis) const {
  std::vector<double> out;
  if (node_) collect_breaks(*node_, axis, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<double> FunctionExpr::support_extent(std::size_t axis) const {
  if (!node_) return std::nullopt;
  return extent_of(*node_, axis);
}

std::string FunctionExpr::to_string() const {
  if (!text_.empty()) return text_;
  if (form_) return form_->to_string();
  return "<expr>";
}

FunctionExpr FunctionExpr::with_side(Side side) const {
  FunctionExpr f = *this;
  f.side_ = side;
  return f;
}

FunctionExpr FunctionExpr::combine(Kind kind, const FunctionExpr& a, const FunctionExpr& b) {
  if (a.dim_ != b.dim_) fail(ErrorCode::invalid_argument, "cannot combine functions of different dimension");
  if (a.form_ && b.form_) {
    ParityForm f(a.dim_);
    switch (kind) {
      case Kind::add: f = *a.form_ + *b.form_; break;
      case Kind::sub: f = *a.form_ + (-1.0) * (*b.form_); break;
      default: f = a.form_->times(*b.form_); break;
    }
    return from_form(std::move(f), a.side_);
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->kids = {a.node_, b.node_};
  const char* op = kind == Kind::add ? ")+(" : kind == Kind::sub ? ")-(" : ")*(";
  return FunctionExpr(n, "(" + a.to_string() + op + b.to_string() + ")", a.dim_, a.side_);
}

FunctionExpr FunctionExpr::operator+(const FunctionExpr& o) const { return combine(Kind::add, *this, o); }
FunctionExpr FunctionExpr::operator-(const FunctionExpr& o) const { return combine(Kind::sub, *this, o); }
FunctionExpr FunctionExpr::operator*(const FunctionExpr& o) const { return combine(Kind::mul, *this, o); }

FunctionExpr FunctionExpr::scaled(cplx c) const { return combine(Kind::mul, constant(dim_, c, side_), *this); }

}  // namespace dunkl
