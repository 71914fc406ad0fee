#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dunkl {

/// Multiplicity data for the reflection group Z_2^d: one value gamma_j >= 0
/// per coordinate sign flip. gamma_j = 0 gives the classical Fourier case
/// along that axis.
class MultiplicitySpec {
 public:
  explicit MultiplicitySpec(std::vector<double> gammas);
  static MultiplicitySpec uniform(std::size_t d, double gamma);

  std::size_t dim() const noexcept { return gammas_.size(); }
  double gamma(std::size_t j) const { return gammas_.at(j); }
  std::span<const double> gammas() const noexcept { return gammas_; }

  /// Index gamma = sum_j gamma_j.
  double total() const noexcept { return total_; }

  /// omega_k(x) = prod_j |x_j|^{2 gamma_j}, with 0^0 = 1.
  double weight(std::span<const double> x) const;
  double axis_weight(std::size_t j, double xj) const;

  /// c_k = (int e^{-|x|^2} omega_k)^{-1} = prod_j 1 / Gamma(gamma_j + 1/2).
  double mehta() const noexcept { return mehta_; }

  /// c_k^2 / 4^{gamma + d/2}: the inversion and Plancherel constant.
  double plancherel() const noexcept { return plancherel_; }

  friend bool operator==(const MultiplicitySpec&, const MultiplicitySpec&) = default;

 private:
  std::vector<double> gammas_;
  double total_ = 0.0;
  double mehta_ = 1.0;
  double plancherel_ = 1.0;
};

double weight_eval(const MultiplicitySpec& spec, std::span<const double> x);
double mehta_constant(const MultiplicitySpec& spec);

}  // namespace dunkl
