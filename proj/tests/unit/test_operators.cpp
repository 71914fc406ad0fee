#include <cmath>

#include "doctest.h"
#include "dunkl/error.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/operators.hpp"

using namespace dunkl;

namespace {
double at(const FunctionExpr& f, double x) { return std::abs(f(x)); }
cplx at2(const FunctionExpr& f, double a, double b) {
  const double x[] = {a, b};
  return f(x);
}
}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("hand-computed Dunkl derivatives") {
    for (double g : {0.0, 0.5, 1.3}) {
      const MultiplicitySpec s({g});
      const FunctionExpr sq = FunctionExpr::parse("x^2", 1);
      const FunctionExpr lin = FunctionExpr::parse("x", 1);
      for (double x : {-1.5, 0.0, 0.8}) {
        CHECK(std::abs(dunkl_apply(s, 0, sq)(x) - 2 * x) < 1e-13);
        CHECK(std::abs(dunkl_apply(s, 0, lin)(x) - (1 + 2 * g)) < 1e-13);
        CHECK(std::abs(dunkl_laplacian(s, sq)(x) - 2 * (1 + 2 * g)) < 1e-13);
      }
    }
    const FunctionExpr sinx = FunctionExpr::parse("sin(x)", 1);
    CHECK(std::abs(dunkl_laplacian(MultiplicitySpec({0.0}), sinx)(0.9) + std::sin(0.9)) < 1e-13);
  }

  TEST_CASE("expanded Laplacian cross-check") {
    const MultiplicitySpec s({0.5, 1.0});
    const FunctionExpr f = FunctionExpr::parse("(1+x1+x2^3)*exp(-r2)", 2);
    const FunctionExpr L = dunkl_laplacian(s, f);
    const double x[] = {0.6, -0.4};
    CHECK(std::abs(L(x) - laplacian_expanded(s, f, x)) < 1e-9);
  }

  TEST_CASE("kernel is an eigenfunction of the operator") {
    const MultiplicitySpec s({0.5});
    // x -> K(ix, 1.3) in closed form; T acts by the factor 1.3 i.
    const FunctionExpr K = FunctionExpr::parse("bessel(0, 1.3*x) + i*1.3*x/2*bessel(1, 1.3*x)", 1);
    const FunctionExpr TK = dunkl_apply(s, 0, K);
    for (double x : {-1.2, 0.0, 0.4, 2.0}) {
      const cplx z[] = {cplx(0.0, x)}, w[] = {1.3};
      CHECK(std::abs(K(x) - kernel_nd(s, z, w)) < 1e-13);
      CHECK(std::abs(TK(x) - cplx(0.0, 1.3) * K(x)) < 1e-8);
    }
  }

  TEST_CASE("polynomial in iT") {
    const MultiplicitySpec s({0.5, 1.0});
    const FunctionExpr f = FunctionExpr::parse("x1*exp(-r2)+x2^2", 2);
    const auto lap = poly_iT_apply(s, PolynomialSpec::neg_norm2(2), f, 1).function;
    const auto ref = dunkl_laplacian(s, f);
    CHECK(std::abs(at2(lap, 0.3, 0.7) - at2(ref, 0.3, 0.7)) < 1e-12);

    const MultiplicitySpec s1({0.5});
    const FunctionExpr g = FunctionExpr::parse("x*exp(-x^2)", 1);
    const auto two = poly_iT_apply(s1, PolynomialSpec::monomial({1}), g, 2).function;
    const auto tt = dunkl_apply(s1, 0, dunkl_apply(s1, 0, g));
    CHECK(std::abs(two(0.7) + tt(0.7)) < 1e-12);

    // u = K(i., y0) has T u = i y0 u, so (iT)^2 u = y0^2 u.
    const FunctionExpr K = FunctionExpr::parse("bessel(0, 0.9*x) + i*0.9*x/2*bessel(1, 0.9*x)", 1);
    const auto pk = poly_iT_apply(s1, PolynomialSpec::monomial({2}), K, 1).function;
    CHECK(std::abs(pk(1.1) - 0.81 * K(1.1)) < 1e-7);
  }

  TEST_CASE("depth cap") {
    const MultiplicitySpec s({0.5});
    const FunctionExpr f = FunctionExpr::parse("exp(-x^2)", 1);
    try {
      poly_iT_apply(s, PolynomialSpec::neg_norm2(1), f, 13);
      FAIL("expected depth_exceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::depth_exceeded);
    }
    CHECK(at(dunkl_laplacian_power(s, f, 3), 0.2) > 0.0);
  }

  TEST_CASE("pointwise rule near the reflecting hyperplane") {
    const MultiplicitySpec s({0.5});
    const FunctionExpr f = FunctionExpr::parse("x*exp(-x^2) + cos(x)", 1);
    const FunctionExpr df = f.partial(0);
    const FunctionExpr Tf = dunkl_apply(s, 0, f);
    auto F = [&](std::span<const double> x) { return f(x); };
    auto D = [&](std::span<const double> x) { return df(x); };
    const double x0[] = {1e-9};
    const PointwiseValue v = dunkl_apply_pointwise(s, 0, F, D, x0);
    CHECK(v.limit_rule);
    CHECK(std::abs(v.value - Tf(0.0)) < 1e-8);
    const double x1[] = {0.5};
    CHECK(std::abs(dunkl_apply_pointwise(s, 0, F, D, x1).value - Tf(0.5)) < 1e-12);
  }

  TEST_CASE("polynomial validation") {
    PolynomialSpec c;
    c.terms.push_back({{0, 0}, 1.0});
    CHECK_THROWS_AS(c.validate(), Error);
    PolynomialSpec mixed;
    mixed.terms.push_back({{1}, 1.0});
    mixed.terms.push_back({{1, 1}, 1.0});
    CHECK_THROWS_AS(mixed.validate(), Error);
  }
}
