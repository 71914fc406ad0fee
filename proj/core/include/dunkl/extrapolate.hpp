#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace dunkl {

enum class Path { spatial, spectral };
std::string_view to_string(Path p) noexcept;

enum class ExtrapolationModel {
  harmonic,      // a_n = a + c / n
  log_harmonic,  // a_n = a + (c + e ln n) / n
};
std::string_view to_string(ExtrapolationModel m) noexcept;

/// Indexed sequence a_n with its extrapolated limit and diagnostics.
struct ConvergenceSequence {
  std::vector<double> indices;
  std::vector<double> values;  // +inf marks a divergent term
  Path path = Path::spectral;

  bool has_limit = false;
  double extrapolated = std::numeric_limits<double>::quiet_NaN();  // may be +inf
  double confidence = std::numeric_limits<double>::infinity();     // half-width
  std::string model;

  bool divergent = false;
  bool low_confidence = false;
  bool monotone = false;
  bool oscillating = false;
  double liminf = std::numeric_limits<double>::quiet_NaN();
  double limsup = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> notes;

  void push(double n, double a);
  std::size_t finite_count() const;
};

struct Extrapolation {
  double value;
  double width;
  bool divergent;
  bool low_confidence;
};

/// Fits the tail of the sequence and records limit, width and flags in `seq`.
/// Needs at least 4 finite terms (Error(invalid_argument) otherwise).
Extrapolation extrapolate_limit(ConvergenceSequence& seq,
                                ExtrapolationModel model = ExtrapolationModel::log_harmonic);

/// Limit of a plain value list indexed by n, without a sequence object.
Extrapolation extrapolate_values(const std::vector<double>& n, const std::vector<double>& a,
                                 ExtrapolationModel model = ExtrapolationModel::log_harmonic);

}  // namespace dunkl
