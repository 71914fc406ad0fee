#include <cmath>

#include "doctest.h"
#include "dunkl/error.hpp"
#include "dunkl/extrapolate.hpp"

using namespace dunkl;

TEST_SUITE("extrapolate") {
  TEST_CASE("indicator moment sequence") {
    ConvergenceSequence s;
    for (int n = 10; n <= 50; ++n) s.push(n, std::pow(2.0 / (4.0 * n + 2.0), 1.0 / (4.0 * n)));
    const Extrapolation e = extrapolate_limit(s);
    CHECK(std::abs(e.value - 1.0) < 1e-2);
    CHECK_FALSE(e.divergent);
    CHECK(s.monotone);
    const Extrapolation h = extrapolate_limit(s, ExtrapolationModel::harmonic);
    CHECK(std::abs(h.value - 1.0) < 1e-2);
  }

  TEST_CASE("constant, divergent and short sequences") {
    ConvergenceSequence c;
    for (int n = 1; n <= 8; ++n) c.push(n, 0.7);
    CHECK(extrapolate_limit(c).value == 0.7);

    ConvergenceSequence d;
    for (int n = 1; n <= 20; ++n) d.push(n, n);
    CHECK(extrapolate_limit(d).divergent);
    CHECK(std::isinf(d.extrapolated));

    ConvergenceSequence r;
    for (int n = 1; n <= 30; ++n) r.push(n, std::sqrt(n));
    CHECK(extrapolate_limit(r).divergent);

    ConvergenceSequence shortseq;
    for (int n = 1; n <= 3; ++n) shortseq.push(n, 1.0 / n);
    CHECK_THROWS_AS(extrapolate_limit(shortseq), Error);

    ConvergenceSequence flagged;
    for (int n = 1; n <= 6; ++n) flagged.push(n, n < 4 ? 1.0 : INFINITY);
    CHECK(extrapolate_limit(flagged).divergent);
  }

  TEST_CASE("convergent sequences are not flagged") {
    ConvergenceSequence s;
    for (int n = 1; n <= 40; ++n) s.push(n, 2.0 - 3.0 / n + std::log(n) / n);
    const Extrapolation e = extrapolate_limit(s);
    CHECK_FALSE(e.divergent);
    CHECK(std::abs(e.value - 2.0) < 1e-10);
  }

  TEST_CASE("oscillation reports liminf and limsup") {
    ConvergenceSequence s;
    for (int n = 1; n <= 30; ++n) s.push(n, 1.0 + (n % 2 ? 0.1 : -0.1));
    const Extrapolation e = extrapolate_limit(s);
    CHECK(e.low_confidence);
    CHECK(s.oscillating);
    CHECK(s.liminf == doctest::Approx(0.9));
    CHECK(s.limsup == doctest::Approx(1.1));
  }
}
