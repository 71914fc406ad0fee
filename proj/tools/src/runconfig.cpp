#include "dunkl_tools/runconfig.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "dunkl/conv.hpp"
#include "dunkl/error.hpp"
#include "dunkl/expr.hpp"
#include "dunkl/multiplicity.hpp"
#include "dunkl/paleywiener.hpp"
#include "dunkl/report.hpp"
#include "dunkl/sampled.hpp"
#include "dunkl/transform.hpp"
#include "json.hpp"

namespace dunkl::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::parse, "config: " + what); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorCode::io, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MultiplicitySpec parse_spec(const json& j) {
  if (!j.is_object()) bad("'spec' must be an object");
  std::vector<double> gammas;
  if (j.contains("gammas")) {
    gammas = get_or<std::vector<double>>(j, "gammas", {});
    if (j.contains("d") && get_or<std::size_t>(j, "d", 0) != gammas.size()) bad("'d' disagrees with 'gammas'");
  } else if (j.contains("d") && j.contains("gamma")) {
    gammas.assign(get_or<std::size_t>(j, "d", 0), get_or<double>(j, "gamma", 0.0));
  } else {
    bad("'spec' needs 'gammas' or both 'd' and 'gamma'");
  }
  if (gammas.empty()) bad("'spec' has no coordinates");
  return MultiplicitySpec(std::move(gammas));
}

FunctionExpr parse_function(const json& cfg, std::size_t d, const fs::path& base) {
  if (cfg.contains("function_file")) {
    const auto path = base / get_or<std::string>(cfg, "function_file", "");
    return parse_function_spec(read_file(path)).build(d);
  }
  if (!cfg.contains("function")) bad("missing 'function' or 'function_file'");
  const json& f = cfg["function"];
  if (f.is_string()) return FunctionExpr::parse(f.get<std::string>(), d, Side::space);
  FunctionSpec spec;
  spec.body = get_or<std::string>(f, "body", "");
  spec.side = side_from_string(get_or<std::string>(f, "side", "space"));
  spec.name = get_or<std::string>(f, "name", "");
  if (spec.body.empty()) bad("'function.body' is empty");
  return spec.build(d);
}

AxisParams parse_axis(const json& j) {
  AxisParams a;
  a.extent = get_or<double>(j, "extent", a.extent);
  a.panel_width = get_or<double>(j, "panel_width", a.panel_width);
  a.nodes_per_panel = get_or<int>(j, "nodes_per_panel", a.nodes_per_panel);
  a.breakpoints = get_or<std::vector<double>>(j, "breakpoints", {});
  const auto scheme = get_or<std::string>(j, "scheme", "gauss_legendre_panels");
  if (scheme == "trapezoid") a.scheme = Scheme::trapezoid;
  else if (scheme != "gauss_legendre_panels") bad("unknown scheme '" + scheme + "'");
  return a;
}

TransformPlan build_plan(const MultiplicitySpec& spec, const json& cfg, const FunctionExpr& f) {
  const json grid = cfg.contains("grid") ? cfg["grid"] : json("auto");
  if (grid.is_object() && grid.contains("space") && grid.contains("frequency"))
    return TransformPlan(spec, {parse_axis(grid["space"])}, {parse_axis(grid["frequency"])});
  if (!grid.is_object() && !(grid.is_string() && grid.get<std::string>() == "auto"))
    bad("'grid' must be \"auto\" or an object");
  const json g = grid.is_object() ? grid : json::object();
  double fx = 8.0;
  std::vector<double> space_breaks, freq_breaks;
  if (f.side() == Side::frequency) {
    if (auto e = f.support_extent(0)) fx = *e;
    freq_breaks = f.breakpoints(0);
  } else {
    space_breaks = f.breakpoints(0);
  }
  return TransformPlan::automatic(spec, get_or<double>(g, "space_extent", 12.0), get_or<double>(g, "frequency_extent", fx),
                                  space_breaks, freq_breaks);
}

// Norm exponent: a number >= 1 or the string "inf".
double parse_p(const json& est) {
  if (!est.contains("p")) return 2.0;
  const json& v = est["p"];
  if (v.is_string() && (v == "inf" || v == "infinity")) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) bad("'p' must be a number or \"inf\"");
  return v.get<double>();
}

PolynomialSpec parse_polynomial(const json& j, std::size_t d) {
  if (j.is_string()) {
    if (j.get<std::string>() == "neg_norm2") return PolynomialSpec::neg_norm2(d);
    bad("unknown polynomial '" + j.get<std::string>() + "'");
  }
  PolynomialSpec P;
  if (!j.contains("terms")) bad("polynomial needs 'terms'");
  for (const auto& t : j["terms"]) {
    PolynomialSpec::Term term;
    term.mu = get_or<std::vector<int>>(t, "mu", {});
    const json& c = t.contains("coeff") ? t["coeff"] : json(1.0);
    if (c.is_array() && c.size() == 2) term.coeff = cplx(c[0].get<double>(), c[1].get<double>());
    else if (c.is_number()) term.coeff = c.get<double>();
    else bad("polynomial coeff must be a number or [re, im]");
    P.terms.push_back(std::move(term));
  }
  P.validate();
  return P;
}

SymmetricBodySpec parse_body(const json& j, std::size_t d) {
  const auto kind = get_or<std::string>(j, "kind", "");
  if (kind == "box") return SymmetricBodySpec::box(get_or<std::vector<double>>(j, "half_widths", {}));
  if (kind == "ball") return SymmetricBodySpec::ball(d, get_or<double>(j, "radius", 1.0), get_or<int>(j, "samples", 64));
  if (kind == "polytope")
    return SymmetricBodySpec::polytope(get_or<std::vector<std::vector<double>>>(j, "vertices", {}),
                                       get_or<std::vector<std::vector<double>>>(j, "polar", {}));
  bad("unknown body kind '" + kind + "'");
}

PolyRoute parse_route(const std::string& s) {
  if (s == "spectral") return PolyRoute::spectral;
  if (s == "multiplier") return PolyRoute::multiplier;
  if (s == "operator_iteration") return PolyRoute::operator_iteration;
  bad("unknown route '" + s + "'");
}

EstimatorReport base_report(const std::string& type, const MultiplicitySpec& spec, const FunctionExpr& f) {
  EstimatorReport r;
  r.estimator = type;
  r.gammas.assign(spec.gammas().begin(), spec.gammas().end());
  r.function = f.to_string();
  return r;
}

double limit_of(const ConvergenceSequence& s) { return s.has_limit ? s.extrapolated : s.values.back(); }

EstimatorReport run_one(const json& est, const MultiplicitySpec& spec, const FunctionExpr& f,
                        const std::function<const TransformPlan*()>& plan) {
  const auto type = get_or<std::string>(est, "type", "");
  const int n_max = get_or<int>(est, "n_max", 20);
  EstimatorOptions opt;
  opt.default_extent = get_or<double>(est, "default_extent", opt.default_extent);
  const auto model = get_or<std::string>(est, "model", "log_harmonic");
  if (model == "harmonic") opt.model = ExtrapolationModel::harmonic;
  else if (model != "log_harmonic") bad("unknown model '" + model + "'");

  EstimatorReport r = base_report(type, spec, f);
  if (type == "support_radius") {
    const auto path = get_or<std::string>(est, "path", "spectral");
    ConvergenceSequence s;
    if (path == "spectral") {
      s = f.side() == Side::frequency ? support_radius_spectral(spec, f, n_max, opt)
                                      : support_radius_spectral(spec, spectral_mass(spec, f, plan(), opt), n_max, opt);
    } else if (path == "spatial") {
      if (f.side() != Side::space) bad("the spatial path needs a space-side function");
      const json sn = est.contains("spatial_norm") ? est["spatial_norm"] : json::object();
      s = support_radius_spatial(
          spec, f, n_max,
          SpatialNorm::box(spec.dim(), get_or<double>(sn, "extent", 200.0), get_or<double>(sn, "panel_width", 2.0),
                           get_or<int>(sn, "nodes_per_panel", 24), get_or<bool>(sn, "richardson", false)));
    } else {
      bad("unknown path '" + path + "'");
    }
    const bool zero = s.has_limit && s.extrapolated == 0.0 && s.model == "zero spectrum";
    r.verdicts["support"] = zero ? "zero" : s.divergent ? "unbounded" : s.has_limit ? "bounded" : "undetermined";
    r.values["R"] = limit_of(s);
    r.sequences.emplace_back("a_n", std::move(s));
  } else if (type == "inner_radius") {
    InnerRadiusResult ir = inner_radius(spec, f, n_max, f.side() == Side::space ? plan() : nullptr, opt);
    r.p = 2.0;
    r.values["lambda"] = ir.lambda;
    r.values["lambda_width"] = ir.lambda_width;
    r.verdicts["vanishing_near_origin"] = ir.vanishing_near_origin ? "yes" : "no";
    r.sequences.emplace_back("radius", std::move(ir.radius));
    r.sequences.emplace_back("rate", std::move(ir.rate));
  } else if (type == "heat_series") {
    const double p = parse_p(est);
    r.p = p;
    const bool needs_plan = p != 2.0 || f.side() == Side::space;
    ConvergenceSequence s = heat_series_norm(spec, f, p, n_max, needs_plan ? plan() : nullptr, opt);
    r.values["limit"] = limit_of(s);
    if (est.contains("ball_radius") && s.has_limit) {
      const double rad = get_or<double>(est, "ball_radius", 0.0);
      r.values["ball_radius"] = rad;
      r.verdicts["vanishes_on_ball"] = vanishes_on_ball(s, rad) ? "yes" : "no";
    }
    r.sequences.emplace_back("b_n", std::move(s));
  } else if (type == "poly_spectrum") {
    const PolynomialSpec P = parse_polynomial(est.contains("polynomial") ? est["polynomial"] : json("neg_norm2"), spec.dim());
    const double p = parse_p(est);
    const PolyRoute route = parse_route(get_or<std::string>(est, "route", p == 2.0 ? "spectral" : "multiplier"));
    const bool needs_plan = route != PolyRoute::spectral || f.side() == Side::space;
    r.p = p;
    ConvergenceSequence s = poly_spectrum_sup(spec, f, P, p, n_max, needs_plan ? plan() : nullptr, route, opt);
    r.values["sup_abs_P"] = limit_of(s);
    r.verdicts["polynomial_domain"] = polynomial_domain_verdict(s, opt.verdict_slack);
    r.notes.push_back("P = " + P.to_string());
    r.sequences.emplace_back("a_n", std::move(s));
  } else if (type == "symmetric_body") {
    if (!est.contains("body")) bad("symmetric_body needs 'body'");
    const SymmetricBodySpec body = parse_body(est["body"], spec.dim());
    r = symmetric_body_test(spec, f, body, n_max, f.side() == Side::space ? plan() : nullptr, opt);
  } else if (type == "tore") {
    ToreResult t = tore_localization(spec, f, n_max, f.side() == Side::space ? plan() : nullptr, opt);
    r.values["R"] = t.radius;
    if (t.inner_defined) {
      r.values["lambda"] = t.lambda;
      r.verdicts["sandwich"] = t.sandwich_ok ? "ok" : "violated";
      r.sequences.emplace_back("inner_radius", std::move(t.inner.radius));
    } else {
      r.verdicts["inner_radius"] = "undefined";
      r.notes.push_back("zero spectrum: inner radius undefined, support radius 0");
    }
    r.sequences.emplace_back("support_radius", std::move(t.outer));
  } else {
    bad("unknown estimator type '" + type + "'");
  }
  if (est.contains("ground_truth")) {
    const double truth = get_or<double>(est, "ground_truth", 0.0);
    double estimate = 0.0;
    if (!r.values.empty()) {
      for (const char* key : {"R", "lambda", "sup_abs_P", "limit"})
        if (r.values.count(key)) {
          estimate = r.values[key];
          break;
        }
    }
    r.set_truth(truth, estimate);
  }
  return r;
}

struct Loaded {
  json cfg;
  MultiplicitySpec spec;
  FunctionExpr f;
};

Loaded load(const std::string& text, const std::string& base_dir) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!cfg.is_object() || !cfg.contains("spec")) bad("missing 'spec'");
  MultiplicitySpec spec = parse_spec(cfg["spec"]);
  FunctionExpr f = parse_function(cfg, spec.dim(), base_dir);
  return {std::move(cfg), std::move(spec), std::move(f)};
}

}  // namespace

std::vector<EstimateOutput> run_estimate(const std::string& config_text, const std::string& base_dir) {
  Loaded l = load(config_text, base_dir);
  if (!l.cfg.contains("estimators") || !l.cfg["estimators"].is_array() || l.cfg["estimators"].empty())
    bad("'estimators' must be a non-empty array");

  std::unique_ptr<TransformPlan> plan;
  auto get_plan = [&]() -> const TransformPlan* {
    if (!plan) {
      plan = std::make_unique<TransformPlan>(build_plan(l.spec, l.cfg, l.f));
      plan->require_adequate();
    }
    return plan.get();
  };

  const std::string embedded = l.cfg.dump();
  std::vector<EstimateOutput> out;
  int index = 0;
  for (const auto& est : l.cfg["estimators"]) {
    ++index;
    EstimateOutput o;
    o.id = get_or<std::string>(est, "id", get_or<std::string>(est, "type", "estimator") + "_" + std::to_string(index));
    EstimatorReport r = run_one(est, l.spec, l.f, get_plan);
    o.json = report_json(r, embedded);
    for (const auto& [name, seq] : r.sequences) {
      std::ostringstream os;
      write_convergence_csv(os, seq);
      o.csv.emplace_back(o.id + "_" + name, os.str());
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::string> write_outputs(const std::vector<EstimateOutput>& outputs, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create " + dir);
  std::vector<std::string> written;
  auto put = [&](const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!(os << text)) fail(ErrorCode::io, "cannot write " + p.string());
    written.push_back(p.string());
  };
  for (const auto& o : outputs) {
    put(fs::path(dir) / (o.id + ".json"), o.json);
    for (const auto& [stem, text] : o.csv) put(fs::path(dir) / (stem + ".csv"), text);
  }
  return written;
}

std::string run_transform(const std::string& config_text, const std::string& base_dir) {
  Loaded l = load(config_text, base_dir);
  const TransformPlan plan = build_plan(l.spec, l.cfg, l.f);
  plan.require_adequate();
  const auto direction = get_or<std::string>(l.cfg, "direction", l.f.side() == Side::space ? "forward" : "inverse");
  SampledFunction s;
  if (direction == "forward") {
    if (l.f.side() != Side::space) bad("forward needs a space-side function");
    s = plan.forward(l.f);
  } else if (direction == "inverse") {
    if (l.f.side() != Side::frequency) bad("inverse needs a frequency-side function");
    s = plan.inverse(l.f);
  } else if (direction == "roundtrip") {
    s = l.f.side() == Side::space ? plan.inverse(plan.forward(l.f)) : plan.forward(plan.inverse(l.f));
  } else {
    bad("unknown direction '" + direction + "'");
  }
  std::ostringstream os;
  write_csv(os, s);
  return os.str();
}

}  // namespace dunkl::cli
