#pragma once

#include <complex>

namespace dunkl {

using cplx = std::complex<double>;

/// Truncation control for the power series of j_alpha. Summation stops once
/// the next term falls below `rel_tol` times the largest term seen so far.
struct SeriesControl {
  double rel_tol = 1e-16;
  int max_terms = 200;
};

/// Normalized Bessel function
///   j_alpha(z) = Gamma(alpha+1) sum_n (-1)^n (z/2)^{2n} / (n! Gamma(alpha+1+n)),
/// alpha >= -1/2. Real arguments away from the origin go through
/// std::cyl_bessel_j; everything else through the series. Throws
/// Error(range) when the series budget is exhausted.
cplx normalized_bessel(double alpha, cplx z, const SeriesControl& ctl = {});
double normalized_bessel(double alpha, double x);

/// j_alpha(sqrt(w)). j_alpha is even, so this is single-valued and entire in w.
cplx bessel_hat(double alpha, cplx w, const SeriesControl& ctl = {});

namespace detail {
cplx bessel_series(double alpha, cplx w, const SeriesControl& ctl);
}

}  // namespace dunkl
