#include "dunkl/paleywiener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dunkl/conv.hpp"
#include "dunkl/error.hpp"

namespace dunkl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

void check_n(int n_max) {
  if (n_max < 1) fail(ErrorCode::invalid_argument, "n_max must be >= 1");
}

void maybe_extrapolate(ConvergenceSequence& seq, const EstimatorOptions& opt) {
  bool any_inf = std::any_of(seq.values.begin(), seq.values.end(), [](double v) { return std::isinf(v); });
  if (any_inf) {
    seq.has_limit = true;
    seq.extrapolated = kInf;
    seq.confidence = 0.0;
    seq.divergent = true;
    seq.model = "divergence flag";
    return;
  }
  if (seq.finite_count() >= 4) {
    extrapolate_limit(seq, opt.model);
  } else {
    seq.notes.push_back("fewer than 4 finite terms: no extrapolated limit");
  }
}

// Extrapolates L_n = -ln b_n and maps the limit back to b = exp(-L).
Extrapolation extrapolate_log_rate(ConvergenceSequence& seq, const EstimatorOptions& opt) {
  std::vector<double> L;
  for (double b : seq.values) L.push_back(b > 0.0 ? -std::log(b) : kInf);
  const Extrapolation e = extrapolate_values(seq.indices, L, opt.model);
  seq.has_limit = true;
  seq.model = std::string(to_string(opt.model)) + " on -ln a_n";
  seq.divergent = e.divergent;
  seq.low_confidence = e.low_confidence;
  seq.oscillating = e.low_confidence;
  seq.extrapolated = e.divergent ? 0.0 : std::exp(-e.value);
  seq.confidence = e.divergent ? 0.0 : seq.extrapolated * (std::exp(e.width) - 1.0);
  seq.liminf = seq.limsup = seq.extrapolated;
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < seq.values.size(); ++i) {
    inc = inc && seq.values[i] >= seq.values[i - 1];
    dec = dec && seq.values[i] <= seq.values[i - 1];
  }
  seq.monotone = inc || dec;
  return e;
}

SampledFunction spectrum_on_plan(const FunctionExpr& source, const TransformPlan* plan) {
  if (!plan) fail(ErrorCode::invalid_argument, "this route needs a transform plan");
  return source.side() == Side::frequency ? plan->sample_frequency(source) : plan->forward(source);
}

}  // namespace

// ---------------------------------------------------------------------------

SpectralMass SpectralMass::from_expr(const MultiplicitySpec& spec, const FunctionExpr& g, double default_extent) {
  if (g.side() != Side::frequency) fail(ErrorCode::invalid_argument, "expected a frequency-side spectrum");
  if (g.dim() != spec.dim()) fail(ErrorCode::invalid_argument, "spectrum and multiplicity dimensions differ");
  const std::size_t d = spec.dim();
  bool empty_support = g.is_zero();
  for (std::size_t j = 0; j < d; ++j) empty_support = empty_support || g.support_extent(j) == 0.0;
  if (empty_support) {
    SpectralMass zero;
    zero.dim_ = d;
    return zero;
  }
  std::vector<AxisRule> axes;
  std::vector<double> inner_extent(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double L = g.support_extent(j).value_or(default_extent);
    if (!(L > 0.0)) fail(ErrorCode::invalid_argument, "spectrum support has zero extent");
    inner_extent[j] = L;
    AxisParams a;
    a.extent = 2.0 * L;
    a.nodes_per_panel = d == 1 ? 32 : 16;
    a.panel_width = d == 1 ? L / 32.0 : L / 4.0;
    a.breakpoints = g.breakpoints(j);
    a.breakpoints.push_back(-L);
    a.breakpoints.push_back(L);
    axes.push_back(make_axis(a));
  }
  auto grid = std::make_shared<const QuadratureGrid>(std::move(axes));
  SpectralMass m;
  m.dim_ = d;
  m.points_.resize(grid->size() * d);
  m.mass_.resize(grid->size());
  m.inner_.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    std::span<double> x(m.points_.data() + i * d, d);
    grid->point(i, x);
    const double a = std::abs(g(x));
    m.mass_[i] = grid->weight(i) * spec.weight(x) * a * a;
    bool in = true;
    for (std::size_t j = 0; j < d; ++j) in = in && std::abs(x[j]) <= inner_extent[j] * (1.0 + 1e-12);
    m.inner_[i] = in;
    if (m.mass_[i] > 0.0) m.zero_ = false;
  }
  return m;
}

SpectralMass SpectralMass::from_sampled(const MultiplicitySpec& spec, const SampledFunction& g) {
  if (!g.grid || g.grid->dim() != spec.dim()) fail(ErrorCode::invalid_argument, "spectrum grid dimension mismatch");
  const auto& grid = *g.grid;
  const std::size_t d = spec.dim();
  SpectralMass m;
  m.dim_ = d;
  m.points_.resize(grid.size() * d);
  m.mass_.resize(grid.size());
  m.inner_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::span<double> x(m.points_.data() + i * d, d);
    grid.point(i, x);
    const double a = std::abs(g.values[i]);
    m.mass_[i] = grid.weight(i) * spec.weight(x) * a * a;
    bool in = true;
    for (std::size_t j = 0; j < d; ++j) in = in && std::abs(x[j]) <= 0.5 * grid.axis(j).extent * (1.0 + 1e-12);
    m.inner_[i] = in;
    if (m.mass_[i] > 0.0) m.zero_ = false;
  }
  return m;
}

double SpectralMass::log_moment(const std::function<double(std::span<const double>)>& log_weight, bool inner) const {
  std::vector<double> terms;
  terms.reserve(mass_.size());
  double peak = -kInf;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (mass_[i] <= 0.0 || (inner && !inner_[i])) continue;
    const double v = std::log(mass_[i]) + log_weight(point(i));
    if (std::isnan(v) || v == -kInf) continue;
    terms.push_back(v);
    peak = std::max(peak, v);
  }
  if (terms.empty()) return -kInf;
  double s = 0.0;
  for (double v : terms) s += std::exp(v - peak);
  return peak + std::log(s);
}

SpectralMass spectral_mass(const MultiplicitySpec& spec, const FunctionExpr& source, const TransformPlan* plan,
                           const EstimatorOptions& opt) {
  if (source.side() == Side::frequency) return SpectralMass::from_expr(spec, source, opt.default_extent);
  if (!plan) fail(ErrorCode::invalid_argument, "a space-side source needs a transform plan");
  return SpectralMass::from_sampled(spec, plan->forward(source));
}

// ---------------------------------------------------------------------------

ConvergenceSequence support_radius_spectral(const MultiplicitySpec& spec, const SpectralMass& mass, int n_max,
                                            const EstimatorOptions& opt) {
  check_n(n_max);
  ConvergenceSequence seq;
  seq.path = Path::spectral;
  if (mass.is_zero()) {
    for (int n = 1; n <= n_max; ++n) seq.push(n, 0.0);
    seq.has_limit = true;
    seq.extrapolated = 0.0;
    seq.confidence = 0.0;
    seq.model = "zero spectrum";
    seq.notes.push_back("g = 0: support radius is 0 by convention");
    return seq;
  }
  (void)spec;
  for (int n = 1; n <= n_max; ++n) {
    const double k = 4.0 * n;
    auto lw = [k](std::span<const double> xi) { return 0.5 * k * std::log(norm2(xi)); };
    const double a = std::exp(mass.log_moment(lw) / k);
    const double a_in = std::exp(mass.log_moment(lw, true) / k);
    if (std::abs(a - a_in) > opt.box_tolerance * a) {
      seq.push(n, kInf);
      if (seq.notes.empty()) seq.notes.push_back("moment is box-dominated from n = " + std::to_string(n));
    } else {
      seq.push(n, a);
    }
  }
  maybe_extrapolate(seq, opt);
  if (seq.divergent) seq.notes.push_back("unbounded support");
  return seq;
}

ConvergenceSequence support_radius_spectral(const MultiplicitySpec& spec, const FunctionExpr& g, int n_max,
                                            const EstimatorOptions& opt) {
  return support_radius_spectral(spec, SpectralMass::from_expr(spec, g, opt.default_extent), n_max, opt);
}

SpatialNorm SpatialNorm::box(std::size_t d, double extent, double panel_width, int nodes_per_panel, bool richardson) {
  AxisParams a;
  a.extent = extent;
  a.panel_width = panel_width;
  a.nodes_per_panel = nodes_per_panel;
  a.breakpoints = {-0.5 * extent, 0.5 * extent};
  SpatialNorm s;
  s.grid = std::make_shared<const QuadratureGrid>(QuadratureGrid::uniform(d, a));
  s.richardson = richardson;
  return s;
}

double SpatialNorm::operator()(const MultiplicitySpec& spec, const FunctionExpr& f, double p) const {
  if (!grid) fail(ErrorCode::invalid_argument, "spatial norm has no grid");
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "norm exponent must be >= 1");
  const SampledFunction s = SampledFunction::sample(grid, f);
  if (std::isinf(p)) return s.max_abs();
  if (!richardson) return lp_norm(spec, s, p);
  const std::size_t d = grid->dim();
  std::vector<double> x(d);
  double full = 0.0, half = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    grid->point(i, x);
    const double v = grid->weight(i) * spec.weight(x) * std::pow(std::abs(s.values[i]), p);
    full += v;
    bool in = true;
    for (std::size_t j = 0; j < d; ++j) in = in && std::abs(x[j]) <= 0.5 * grid->axis(j).extent * (1.0 + 1e-12);
    if (in) half += v;
  }
  return std::pow(std::max(0.0, 2.0 * full - half), 1.0 / p);
}

ConvergenceSequence support_radius_spatial(const MultiplicitySpec& spec, const FunctionExpr& f, int n_max,
                                           const SpatialNorm& norm) {
  check_n(n_max);
  ConvergenceSequence seq;
  seq.path = Path::spatial;
  const int cap = kDefaultDepthCap / 2;
  if (n_max > cap) {
    seq.notes.push_back("truncated at n = " + std::to_string(cap) + " by the operator depth cap; use the spectral path");
    n_max = cap;
  }
  if (f.is_zero()) {
    for (int n = 1; n <= n_max; ++n) seq.push(n, 0.0);
    seq.has_limit = true;
    seq.extrapolated = 0.0;
    seq.confidence = 0.0;
    return seq;
  }
  FunctionExpr g = f;
  for (int n = 1; n <= n_max; ++n) {
    g = dunkl_laplacian(spec, g);
    seq.push(n, std::pow(norm(spec, g, 2.0), 1.0 / (2.0 * n)));
  }
  maybe_extrapolate(seq, EstimatorOptions{});
  return seq;
}

// ---------------------------------------------------------------------------

ConvergenceSequence poly_spectrum_sup(const MultiplicitySpec& spec, const FunctionExpr& source, const PolynomialSpec& P,
                                      double p, int n_max, const TransformPlan* plan, PolyRoute route,
                                      const EstimatorOptions& opt) {
  check_n(n_max);
  P.validate();
  if (P.dim() != spec.dim()) fail(ErrorCode::invalid_argument, "polynomial and multiplicity dimensions differ");
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "norm exponent must be >= 1");
  auto neg = [](std::span<const double> xi) {
    std::vector<double> m(xi.begin(), xi.end());
    for (auto& v : m) v = -v;
    return m;
  };
  ConvergenceSequence seq;
  const double C = spec.plancherel();
  switch (route) {
    case PolyRoute::spectral: {
      if (p != 2.0) fail(ErrorCode::invalid_argument, "the spectral route computes p = 2 only");
      seq.path = Path::spectral;
      const SpectralMass mass = spectral_mass(spec, source, plan, opt);
      for (int n = 1; n <= n_max; ++n) {
        auto lw = [&](std::span<const double> xi) { return 2.0 * n * std::log(std::abs(P(neg(xi)))); };
        const double full = mass.log_moment(lw);
        const double in = mass.log_moment(lw, true);
        const double a = std::exp((std::log(C) + full) / (2.0 * n));
        const double a_in = std::exp((std::log(C) + in) / (2.0 * n));
        seq.push(n, std::abs(a - a_in) > opt.box_tolerance * a ? kInf : a);
      }
      break;
    }
    case PolyRoute::multiplier: {
      seq.path = Path::spatial;
      const SampledFunction G = spectrum_on_plan(source, plan);
      for (int n = 1; n <= n_max; ++n) {
        const SampledFunction h = multiplier_inverse(
            *plan, G, [&](std::span<const double> xi) { return std::pow(P(neg(xi)), n); });
        if (h.amplification_flag && seq.notes.empty())
          seq.notes.push_back("multiplier amplification flagged from n = " + std::to_string(n));
        seq.push(n, std::pow(lp_norm(spec, h, p), 1.0 / n));
      }
      break;
    }
    case PolyRoute::operator_iteration: {
      seq.path = Path::spatial;
      if (!plan) fail(ErrorCode::invalid_argument, "operator iteration is normed on a plan's space grid");
      const int cap = kDefaultDepthCap / P.degree();
      if (n_max > cap) {
        seq.notes.push_back("truncated at n = " + std::to_string(cap) + " by the operator depth cap");
        n_max = cap;
      }
      for (int n = 1; n <= n_max; ++n) {
        const OperatorResult r = poly_iT_apply(spec, P, source, n);
        seq.push(n, std::pow(lp_norm(spec, plan->sample_space(r.function), p), 1.0 / n));
      }
      break;
    }
  }
  maybe_extrapolate(seq, opt);
  return seq;
}

std::string polynomial_domain_verdict(const ConvergenceSequence& seq, double slack) {
  if (!seq.has_limit) return "undetermined";
  if (seq.divergent) return "outside";
  return seq.extrapolated <= 1.0 + seq.confidence + slack ? "inside" : "outside";
}

// ---------------------------------------------------------------------------

ConvergenceSequence heat_series_norm(const MultiplicitySpec& spec, const FunctionExpr& source, double p, int n_max,
                                     const TransformPlan* plan, const EstimatorOptions& opt) {
  check_n(n_max);
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "norm exponent must be >= 1");
  ConvergenceSequence seq;
  if (p == 2.0) {
    seq.path = Path::spectral;
    const SpectralMass mass = spectral_mass(spec, source, plan, opt);
    if (mass.is_zero()) fail(ErrorCode::invalid_argument, "f = 0 has no inner radius");
    const double logC = std::log(spec.plancherel());
    for (int n = 1; n <= n_max; ++n) {
      const double lm = mass.log_moment([n](std::span<const double> xi) { return -2.0 * n * norm2(xi); });
      seq.push(n, std::exp((logC + lm) / (2.0 * n)));
    }
  } else {
    seq.path = Path::spatial;
    const SampledFunction G = spectrum_on_plan(source, plan);
    if (G.max_abs() == 0.0) fail(ErrorCode::invalid_argument, "f = 0 has no inner radius");
    for (int n = 1; n <= n_max; ++n)
      seq.push(n, std::pow(lp_norm(spec, heat_smooth_spectrum(*plan, G, n), p), 1.0 / n));
  }
  if (seq.finite_count() >= 4) extrapolate_log_rate(seq, opt);
  return seq;
}

InnerRadiusResult inner_radius(const MultiplicitySpec& spec, const FunctionExpr& source, int n_max,
                               const TransformPlan* plan, const EstimatorOptions& opt) {
  InnerRadiusResult r;
  r.rate = heat_series_norm(spec, source, 2.0, n_max, plan, opt);
  r.radius.path = r.rate.path;
  std::vector<double> L;
  for (std::size_t i = 0; i < r.rate.values.size(); ++i) {
    const double l = -std::log(r.rate.values[i]);
    L.push_back(l);
    r.radius.push(r.rate.indices[i], std::sqrt(std::max(0.0, l)));
  }
  if (L.size() >= 4) {
    const Extrapolation e = extrapolate_values(r.rate.indices, L, opt.model);
    const double l2 = std::max(0.0, e.value);
    r.lambda = std::sqrt(l2);
    r.lambda_width = std::sqrt(l2 + e.width) - r.lambda;
    r.vanishing_near_origin = e.value > std::max(3.0 * e.width, 1e-2);
    r.radius.has_limit = true;
    r.radius.extrapolated = r.lambda;
    r.radius.confidence = r.lambda_width;
    r.radius.model = std::string(to_string(opt.model)) + " on the squared radius";
    r.radius.low_confidence = e.low_confidence;
    r.radius.liminf = r.radius.limsup = r.lambda;
  } else {
    r.radius.notes.push_back("fewer than 4 terms: no extrapolated limit");
  }
  return r;
}

bool vanishes_on_ball(const ConvergenceSequence& heat_sequence, double r) {
  if (!heat_sequence.has_limit) fail(ErrorCode::invalid_argument, "heat sequence has no limit");
  return heat_sequence.extrapolated <= std::exp(-r * r) + heat_sequence.confidence + 1e-6;
}

double heat_series_direct_defect(const MultiplicitySpec& spec, const FunctionExpr& f, const FunctionExpr& spectrum,
                                 double n, int m_max, const TransformPlan& plan) {
  if (m_max < 0) fail(ErrorCode::invalid_argument, "m_max must be >= 0");
  sym::ParityForm sum = f.form();
  FunctionExpr term = f;
  double coeff = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    if (2 * m > kDefaultDepthCap) fail(ErrorCode::depth_exceeded, "operator series exceeds the depth cap");
    term = dunkl_laplacian(spec, term);
    coeff *= n / m;
    sum += coeff * term.form();
  }
  const SampledFunction direct = plan.sample_space(FunctionExpr::from_form(std::move(sum), Side::space));
  const SampledFunction spectral = heat_smooth_spectrum(plan, plan.sample_frequency(spectrum), n);
  const double base = lp_norm(spec, plan.sample_space(f), 2.0);
  if (base == 0.0) return 0.0;
  return lp_norm(spec, direct - spectral, 2.0) / base;
}

// ---------------------------------------------------------------------------

SymmetricBodySpec SymmetricBodySpec::box(std::vector<double> h) {
  if (h.empty()) fail(ErrorCode::invalid_argument, "box needs at least one half-width");
  for (double v : h)
    if (!(v > 0.0)) fail(ErrorCode::invalid_argument, "box half-widths must be positive");
  SymmetricBodySpec b;
  b.kind = "box";
  const std::size_t d = h.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<double> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = (mask >> j & 1) ? -h[j] : h[j];
    b.vertices.push_back(v);
  }
  for (std::size_t j = 0; j < d; ++j)
    for (double s : {1.0, -1.0}) {
      std::vector<double> a(d, 0.0);
      a[j] = s / h[j];
      b.polar_sample.push_back(a);
    }
  return b;
}

SymmetricBodySpec SymmetricBodySpec::ball(std::size_t d, double radius, int samples) {
  if (!(radius > 0.0)) fail(ErrorCode::invalid_argument, "ball radius must be positive");
  if (d == 0 || d > 2) fail(ErrorCode::invalid_argument, "ball polar sampling is provided for d = 1, 2");
  SymmetricBodySpec b;
  b.kind = "ball";
  b.radius = radius;
  if (d == 1) {
    b.vertices = {{radius}, {-radius}};
    b.polar_sample = {{1.0 / radius}, {-1.0 / radius}};
    return b;
  }
  const int m = std::max(4, samples);
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * std::numbers::pi * k / m;
    b.polar_sample.push_back({std::cos(t) / radius, std::sin(t) / radius});
  }
  return b;
}

SymmetricBodySpec SymmetricBodySpec::polytope(std::vector<std::vector<double>> vertices,
                                              std::vector<std::vector<double>> polar_sample) {
  SymmetricBodySpec b;
  b.kind = "polytope";
  b.vertices = std::move(vertices);
  b.polar_sample = std::move(polar_sample);
  b.validate();
  return b;
}

void SymmetricBodySpec::validate() const {
  if (polar_sample.empty()) fail(ErrorCode::invalid_argument, "polar sample is empty");
  const std::size_t d = polar_sample.front().size();
  for (const auto& a : polar_sample)
    if (a.size() != d) fail(ErrorCode::invalid_argument, "polar sample points differ in dimension");
  if (kind == "ball") {
    for (const auto& a : polar_sample)
      if (std::sqrt(norm2(a)) * radius > 1.0 + 1e-12) fail(ErrorCode::invalid_argument, "polar point outside K*");
    return;
  }
  for (const auto& v : vertices) {
    if (v.size() != d) fail(ErrorCode::invalid_argument, "vertex dimension mismatch");
    std::vector<double> neg(v);
    for (auto& c : neg) c = -c;
    const bool has_mirror = std::any_of(vertices.begin(), vertices.end(), [&](const auto& w) {
      for (std::size_t j = 0; j < d; ++j)
        if (std::abs(w[j] - neg[j]) > 1e-12) return false;
      return true;
    });
    if (!has_mirror) fail(ErrorCode::invalid_argument, "body is not symmetric: -x missing for a vertex");
    for (const auto& a : polar_sample) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += v[j] * a[j];
      if (dot > 1.0 + 1e-12) fail(ErrorCode::invalid_argument, "polar sample point violates <x, a> <= 1");
    }
  }
}

std::string SymmetricBodySpec::to_string() const {
  std::ostringstream os;
  os << kind;
  if (kind == "ball") os << "(r=" << radius << ")";
  os << " with " << polar_sample.size() << " polar points";
  return os.str();
}

void EstimatorReport::set_truth(double truth, double estimate) {
  ground_truth = truth;
  error = std::abs(estimate - truth);
}

EstimatorReport symmetric_body_test(const MultiplicitySpec& spec, const FunctionExpr& source,
                                    const SymmetricBodySpec& body, int n_max, const TransformPlan* plan,
                                    const EstimatorOptions& opt) {
  body.validate();
  if (n_max < 0) fail(ErrorCode::invalid_argument, "n_max must be >= 0");
  if (body.polar_sample.front().size() != spec.dim())
    fail(ErrorCode::invalid_argument, "body and multiplicity dimensions differ");
  const SpectralMass mass = spectral_mass(spec, source, plan, opt);
  const double logC = std::log(spec.plancherel());
  const double fnorm = std::exp(0.5 * (logC + mass.log_moment([](std::span<const double>) { return 0.0; })));

  ConvergenceSequence b;
  b.path = Path::spectral;
  int first_violation = -1;
  for (int n = 0; n <= n_max; ++n) {
    double best = 0.0;
    for (const auto& a : body.polar_sample) {
      auto lw = [&](std::span<const double> xi) {
        if (n == 0) return 0.0;
        double dot = 0.0;
        for (std::size_t j = 0; j < xi.size(); ++j) dot += a[j] * xi[j];
        return 2.0 * n * std::log(std::abs(dot));
      };
      const double lm = mass.log_moment(lw);
      best = std::max(best, std::isinf(lm) ? 0.0 : std::exp(0.5 * (logC + lm)));
    }
    b.push(n, best);
    if (first_violation < 0 && best > fnorm * (1.0 + opt.verdict_slack)) first_violation = n;
  }

  EstimatorReport r;
  r.estimator = "symmetric_body";
  r.gammas.assign(spec.gammas().begin(), spec.gammas().end());
  r.function = source.to_string();
  r.p = 2.0;
  r.values["norm_f"] = fnorm;
  r.values["n_max"] = n_max;
  double growth = 1.0;
  if (b.values.size() >= 3 && b.values[b.values.size() - 2] > 0.0)
    growth = b.values.back() / b.values[b.values.size() - 2];
  r.values["growth_ratio"] = growth;
  if (first_violation < 0) {
    r.verdicts["membership"] = "inside";
  } else {
    r.values["first_violation"] = first_violation;
    r.verdicts["membership"] = growth > 1.0 ? "outside" : "undetermined";
  }
  r.notes.push_back("b_n = max over polar sample of ||<a,T>^n f||_{k,2} via Plancherel moments; body " +
                    body.to_string());
  r.sequences.emplace_back("b_n", std::move(b));
  return r;
}

ToreResult tore_localization(const MultiplicitySpec& spec, const FunctionExpr& source, int n_max,
                             const TransformPlan* plan, const EstimatorOptions& opt) {
  ToreResult t;
  const SpectralMass mass = spectral_mass(spec, source, plan, opt);
  t.outer = support_radius_spectral(spec, mass, n_max, opt);
  t.radius = t.outer.has_limit ? t.outer.extrapolated : t.outer.values.back();
  if (mass.is_zero()) {
    t.inner_defined = false;
    t.lambda = std::numeric_limits<double>::quiet_NaN();
    return t;
  }
  t.inner = inner_radius(spec, source, n_max, plan, opt);
  t.lambda = t.inner.lambda;
  t.sandwich_ok = t.lambda <= t.radius + 1e-6;
  return t;
}

}  // namespace dunkl
