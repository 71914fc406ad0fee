#include "dunkl/extrapolate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dunkl/error.hpp"

namespace dunkl {

std::string_view to_string(Path p) noexcept { return p == Path::spatial ? "spatial" : "spectral"; }

std::string_view to_string(ExtrapolationModel m) noexcept {
  return m == ExtrapolationModel::harmonic ? "a+c/n" : "a+(c+e*ln n)/n";
}

void ConvergenceSequence::push(double n, double a) {
  indices.push_back(n);
  values.push_back(a);
}

std::size_t ConvergenceSequence::finite_count() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return std::isfinite(v); }));
}

namespace {

// Least-squares intercept of the chosen model on points [lo, n).
double fit(const std::vector<double>& n, const std::vector<double>& a, std::size_t lo, ExtrapolationModel model,
           double* rms) {
  const std::size_t m = n.size() - lo;
  const int cols = model == ExtrapolationModel::harmonic ? 2 : 3;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(m), cols);
  Eigen::VectorXd b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const double k = n[lo + i];
    const auto r = static_cast<Eigen::Index>(i);
    A(r, 0) = 1.0;
    A(r, 1) = 1.0 / k;
    if (cols == 3) A(r, 2) = std::log(k) / k;
    b(r) = a[lo + i];
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  if (rms) *rms = std::sqrt((A * x - b).squaredNorm() / static_cast<double>(m));
  return x(0);
}

}  // namespace

Extrapolation extrapolate_values(const std::vector<double>& n, const std::vector<double>& a, ExtrapolationModel model) {
  if (n.size() != a.size()) fail(ErrorCode::invalid_argument, "index and value lists differ in length");
  std::vector<double> fn, fa;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isinf(a[i])) return {std::numeric_limits<double>::infinity(), 0.0, true, false};
    if (std::isfinite(a[i])) {
      fn.push_back(n[i]);
      fa.push_back(a[i]);
    }
  }
  if (fa.size() < 4) fail(ErrorCode::invalid_argument, "extrapolation needs at least 4 finite terms");
  const std::size_t N = fa.size();
  const double scale = std::max(1e-300, *std::max_element(fa.begin(), fa.end(), [](double x, double y) {
    return std::abs(x) < std::abs(y);
  }));
  const double range = *std::max_element(fa.begin(), fa.end()) - *std::min_element(fa.begin(), fa.end());
  if (range <= 1e-14 * std::abs(scale)) return {fa.back(), 0.0, false, false};

  const std::size_t tail_lo = N / 2;
  const std::size_t tail = N - tail_lo;

  // Divergence: growth that is not O(n^{-3/2}) per step.
  if (fa.back() > 1e100) return {std::numeric_limits<double>::infinity(), 0.0, true, false};
  if (tail >= 3) {
    auto rate = [&](std::size_t i) { return std::pow(fn[i], 1.5) * (fa[i] - fa[i - 1]) / (fn[i] - fn[i - 1]); };
    const std::size_t mid = std::max<std::size_t>(1, tail_lo);
    const double q_mid = rate(mid), q_end = rate(N - 1);
    bool increasing = true;
    for (std::size_t i = tail_lo + 1; i < N; ++i) increasing = increasing && fa[i] > fa[i - 1];
    if (increasing && q_mid > 0.0 && q_end > 2.0 * q_mid)
      return {std::numeric_limits<double>::infinity(), 0.0, true, false};
    // Power or logarithmic growth keeps d ln a / d ln n roughly constant,
    // while a + c/n tails see it shrink like 1/n.
    const std::size_t half = tail_lo + tail / 2;
    auto slope = [&](std::size_t i, std::size_t j) {
      return fa[i] > 0.0 && fa[j] > 0.0 ? std::log(fa[j] / fa[i]) / std::log(fn[j] / fn[i]) : 0.0;
    };
    const double early = slope(tail_lo, half), late = slope(half, N - 1);
    if (increasing && late > 0.02 && late > 0.9 * early)
      return {std::numeric_limits<double>::infinity(), 0.0, true, false};
  }

  // Oscillation: frequent sign changes of the increments in the tail.
  int changes = 0;
  double step = 0.0;
  for (std::size_t i = tail_lo + 2; i < N; ++i) {
    const double d1 = fa[i] - fa[i - 1], d0 = fa[i - 1] - fa[i - 2];
    if (d1 * d0 < 0.0) ++changes;
    step = std::max(step, std::abs(d1));
  }
  if (tail >= 4 && changes * 3 >= static_cast<int>(tail - 2) && step > 1e-8 * std::abs(scale)) {
    const double lo = *std::min_element(fa.begin() + static_cast<long>(tail_lo), fa.end());
    const double hi = *std::max_element(fa.begin() + static_cast<long>(tail_lo), fa.end());
    return {fa.back(), hi - lo, false, true};
  }

  const std::size_t cols = model == ExtrapolationModel::harmonic ? 2 : 3;
  const std::size_t lo = std::min(tail_lo, N - std::max<std::size_t>(cols + 1, 4));
  double rms = 0.0;
  const double full = fit(fn, fa, lo, model, &rms);
  // Stability against dropping the first half of the fitted window.
  const std::size_t lo2 = std::min(lo + (N - lo) / 2, N - (cols + 1));
  const double late = fit(fn, fa, lo2, model, nullptr);
  const double width = std::abs(full - late) + rms;
  return {full, width, false, false};
}

Extrapolation extrapolate_limit(ConvergenceSequence& seq, ExtrapolationModel model) {
  const Extrapolation e = extrapolate_values(seq.indices, seq.values, model);
  seq.has_limit = true;
  seq.extrapolated = e.value;
  seq.confidence = e.width;
  seq.divergent = e.divergent;
  seq.low_confidence = e.low_confidence;
  seq.model = std::string(to_string(model));

  std::vector<double> fa;
  for (double v : seq.values)
    if (std::isfinite(v)) fa.push_back(v);
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < fa.size(); ++i) {
    inc = inc && fa[i] >= fa[i - 1];
    dec = dec && fa[i] <= fa[i - 1];
  }
  seq.monotone = inc || dec;
  seq.oscillating = e.low_confidence;
  if (e.low_confidence && !fa.empty()) {
    const auto first = fa.begin() + static_cast<long>(fa.size() / 2);
    seq.liminf = *std::min_element(first, fa.end());
    seq.limsup = *std::max_element(first, fa.end());
    seq.notes.push_back("tail oscillates: liminf and limsup reported separately, limit is the last value");
  } else {
    seq.liminf = seq.limsup = e.value;
  }
  if (e.divergent) seq.notes.push_back("sequence diverges");
  return e;
}

}  // namespace dunkl
