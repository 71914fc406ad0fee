#include "dunkl/multiplicity.hpp"

#include <cmath>
#include <string>

#include "dunkl/error.hpp"

namespace dunkl {

MultiplicitySpec::MultiplicitySpec(std::vector<double> gammas) : gammas_(std::move(gammas)) {
  if (gammas_.empty()) fail(ErrorCode::invalid_argument, "multiplicity spec needs d >= 1");
  double log_c = 0.0;
  for (double g : gammas_) {
    if (!(g >= 0.0) || !std::isfinite(g))
      fail(ErrorCode::invalid_argument, "multiplicity values must be finite and >= 0");
    total_ += g;
    log_c -= std::lgamma(g + 0.5);
  }
  mehta_ = std::exp(log_c);
  const double dim = static_cast<double>(gammas_.size());
  plancherel_ = mehta_ * mehta_ / std::pow(4.0, total_ + dim / 2.0);
}

MultiplicitySpec MultiplicitySpec::uniform(std::size_t d, double gamma) {
  return MultiplicitySpec(std::vector<double>(d, gamma));
}

double MultiplicitySpec::axis_weight(std::size_t j, double xj) const {
  const double g = gammas_.at(j);
  if (g == 0.0) return 1.0;
  return std::pow(std::abs(xj), 2.0 * g);
}

double MultiplicitySpec::weight(std::span<const double> x) const {
  if (x.size() != gammas_.size())
    fail(ErrorCode::invalid_argument,
         "point dimension " + std::to_string(x.size()) + " does not match d = " +
             std::to_string(gammas_.size()));
  double w = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) w *= axis_weight(j, x[j]);
  return w;
}

double weight_eval(const MultiplicitySpec& spec, std::span<const double> x) { return spec.weight(x); }

double mehta_constant(const MultiplicitySpec& spec) { return spec.mehta(); }

}  // namespace dunkl
