#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dunkl {

using cplx = std::complex<double>;

/// Exact differentiable function representation used by the Dunkl operators.
///
/// A function on R^d is stored parity-factored as
///   f(x) = sum_{eps in {0,1}^d} x^eps * h_eps(s),   s_j = x_j^2,
/// where each h_eps is a finite sum of terms
///   c * prod_j s_j^{m_j} * exp(sum_j e_j s_j) * prod J^_alpha(a s_j) * prod (b_0 + sum_j b_j s_j)^r
/// with J^_alpha(w) = j_alpha(sqrt(w)). Every piece is closed under d/ds_j,
/// so the reflection quotient (f(x) - f(sigma_j x)) / x_j never has to be
/// evaluated numerically: on an odd component x_j h it is exactly 2h.
namespace sym {

struct BesselFactor {
  int axis = 0;
  double alpha = 0.0;
  cplx a;  // J^_alpha(a * s_axis) = j_alpha(sqrt(a) |x_axis|)
};

struct PowFactor {
  std::vector<cplx> base;  // b_0, b_1..b_d: b_0 + sum_j b_j s_j
  double r = 1.0;
};

struct TermKey {
  std::vector<int> mono;
  std::vector<cplx> expo;
  std::vector<BesselFactor> bessel;  // sorted
  std::vector<PowFactor> pows;       // sorted by base, distinct bases
};

bool operator<(const BesselFactor& a, const BesselFactor& b);
bool operator==(const BesselFactor& a, const BesselFactor& b);
bool operator<(const PowFactor& a, const PowFactor& b);
bool operator<(const TermKey& a, const TermKey& b);

/// h(s): linear combination of TermKeys with complex coefficients.
class EvenForm {
 public:
  explicit EvenForm(std::size_t dim = 1) : dim_(dim) {}
  static EvenForm constant(std::size_t dim, cplx c);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return terms_.empty(); }
  const std::map<TermKey, cplx>& terms() const noexcept { return terms_; }

  void add_term(const TermKey& key, cplx coeff);
  EvenForm& operator+=(const EvenForm& o);
  EvenForm& operator*=(cplx c);
  EvenForm times(const EvenForm& o) const;
  EvenForm times_s(int axis) const;  // multiply by s_axis
  EvenForm ds(int axis) const;       // d/ds_axis

  /// Non-null when every term is c or c*s_j (affine in s): returns b_0..b_d.
  bool affine(std::vector<cplx>& base) const;
  /// Single term without monomial or Bessel factors (invertible under *, ^).
  bool simple_single(TermKey& key, cplx& coeff) const;
  std::size_t max_degree(int axis) const;

 private:
  std::size_t dim_;
  std::map<TermKey, cplx> terms_;
};

EvenForm operator+(EvenForm a, const EvenForm& b);

/// f = sum_eps x^eps h_eps; eps is a bitmask over axes.
class ParityForm {
 public:
  explicit ParityForm(std::size_t dim = 1) : dim_(dim) {}
  static ParityForm constant(std::size_t dim, cplx c);
  static ParityForm variable(std::size_t dim, int axis);
  static ParityForm even(EvenForm h);

  std::size_t dim() const noexcept { return dim_; }
  const std::map<std::uint32_t, EvenForm>& components() const noexcept { return parts_; }
  bool is_zero() const noexcept { return parts_.empty(); }
  std::size_t term_count() const;

  void add_component(std::uint32_t mask, const EvenForm& h);
  ParityForm& operator+=(const ParityForm& o);
  ParityForm& operator*=(cplx c);
  ParityForm times(const ParityForm& o) const;

  /// Exact d/dx_j.
  ParityForm partial(int axis) const;
  /// Exact Dunkl operator T_j for multiplicity gamma_j on axis j.
  ParityForm dunkl(int axis, double gamma) const;
  /// f(sigma_j x).
  ParityForm reflect(int axis) const;

  std::string to_string() const;

 private:
  void prune();

  std::size_t dim_;
  std::map<std::uint32_t, EvenForm> parts_;
};

ParityForm operator+(ParityForm a, const ParityForm& b);
ParityForm operator*(cplx c, ParityForm a);

/// Flattened, point-evaluation-ready form of a ParityForm. Distinct factors
/// are evaluated once per point and shared between terms.
class CompiledForm {
 public:
  explicit CompiledForm(const ParityForm& form);
  cplx operator()(std::span<const double> x) const;
  std::size_t dim() const noexcept { return dim_; }

 private:
  struct Term {
    std::uint32_t mask;
    cplx coeff;
    std::vector<int> mono;
    int expo = -1;
    std::vector<int> bessel;
    std::vector<int> pows;
  };
  std::size_t dim_;
  std::vector<int> max_mono_;
  std::vector<std::vector<cplx>> expos_;
  std::vector<BesselFactor> bessels_;
  std::vector<PowFactor> pows_;
  std::vector<Term> terms_;
};

}  // namespace sym
}  // namespace dunkl
