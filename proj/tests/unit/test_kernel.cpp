#include <cmath>
#include <random>

#include "doctest.h"
#include "dunkl/kernel.hpp"

using namespace dunkl;

TEST_SUITE("kernel") {
  TEST_CASE("special values") {
    CHECK(std::abs(kernel_1d(0.7, cplx(1.3, -0.4), 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(kernel_1d(0.0, 1.0, 1.0) - std::exp(1.0)) < 1e-14);
    const cplx k = kernel_1d(0.5, cplx(0.0, 1.0), 1.0);
    CHECK(k.real() == doctest::Approx(std::cyl_bessel_j(0.0, 1.0)).epsilon(1e-13));
    CHECK(k.imag() == doctest::Approx(std::cyl_bessel_j(1.0, 1.0)).epsilon(1e-13));
    CHECK(std::abs(k) <= 1.0);
  }

  TEST_CASE("classical case is the exponential") {
    const MultiplicitySpec s({0.0, 0.0});
    const double x[] = {0.4, -1.1}, y[] = {1.5, 0.3};
    CHECK(std::abs(kernel_nd(s, x, y) - std::exp(0.4 * 1.5 - 1.1 * 0.3)) < 1e-13);
  }

  TEST_CASE("symmetries") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const MultiplicitySpec s({0.5, 1.0});
    const KernelEvaluator K(s);
    for (int t = 0; t < 50; ++t) {
      std::vector<cplx> z = {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
      std::vector<cplx> w = {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
      const cplx lambda(u(rng), u(rng));
      std::vector<cplx> lz = z, lw = w;
      for (auto& v : lz) v *= lambda;
      for (auto& v : lw) v *= lambda;
      const cplx base = K(z, w);
      CHECK(std::abs(K(w, z) - base) < 1e-12 * (1 + std::abs(base)));
      CHECK(std::abs(K(lz, w) - K(z, lw)) < 1e-11 * (1 + std::abs(K(lz, w))));
      std::vector<cplx> gz = {-z[0], z[1]}, gw = {-w[0], w[1]};
      CHECK(std::abs(K(gz, gw) - base) < 1e-12 * (1 + std::abs(base)));
    }
  }

  TEST_CASE("derivative in the second argument") {
    for (double g : {0.5, 1.0, 0.2}) {
      const cplx z(0.3, 0.9), w(0.7, -0.2);
      const double h = 1e-5;
      const cplx fd = (kernel_1d(g, z, w + h) - kernel_1d(g, z, w - h)) / (2 * h);
      CHECK(std::abs(kernel_1d_derivative(g, z, w, 1, {}) - fd) < 1e-8);
    }
  }

  TEST_CASE("eigen relation") {
    const double x[] = {0.7}, y[] = {1.3};
    CHECK(kernel_eigen_residual(MultiplicitySpec({0.5}), 0, x, y) < 1e-8);
    CHECK(kernel_eigen_residual(MultiplicitySpec({0.0}), 0, x, y) < 1e-12);
    const double x0[] = {0.0}, y0[] = {1.3};
    CHECK(kernel_eigen_residual(MultiplicitySpec({0.5}), 0, x0, y0) < 1e-6);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const MultiplicitySpec s({0.5, 1.0});
    for (int t = 0; t < 100; ++t) {
      const double a[] = {u(rng), u(rng)}, b[] = {u(rng), u(rng)};
      for (std::size_t j = 0; j < 2; ++j) CHECK(kernel_eigen_residual(s, j, a, b) < 1e-7);
    }
  }

  TEST_CASE("bound on the imaginary axis") {
    for (double g : {0.0, 0.5, 1.0, 2.5})
      for (double t = -20.0; t <= 20.0; t += 0.37) CHECK(std::abs(kernel_1d(g, cplx(0.0, t), 1.0)) <= 1.0 + 1e-12);
  }
}
