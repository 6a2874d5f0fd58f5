#include "aplab/jobs.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "aplab/classify.hpp"
#include "aplab/dosscond.hpp"
#include "aplab/expr.hpp"
#include "aplab/operators.hpp"

namespace aplab {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool found = false;
    for (const char* k : allowed)
      if (it.key() == k) found = true;
    if (!found) throw std::invalid_argument(where + ": unknown key \"" + it.key() + "\"");
  }
}

Pt pt_from(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty() || arr.size() > kMaxDim)
    throw std::invalid_argument(where + ": expected a coordinate array");
  Pt p = Pt::zero(static_cast<int>(arr.size()));
  for (size_t i = 0; i < arr.size(); ++i) p[static_cast<int>(i)] = arr[i].get<double>();
  return p;
}

Domain domain_from(const json& j) {
  if (j.contains("axes")) {
    require_keys(j, "field.domain", {"axes"});
    std::vector<AxisInterval> axes;
    for (const auto& ax : j.at("axes")) {
      AxisInterval iv;
      if (ax.is_array() && ax.size() == 2) {
        iv.lo = ax[0].is_null() ? -kInf : ax[0].get<double>();
        iv.hi = ax[1].is_null() ? kInf : ax[1].get<double>();
      } else {
        throw std::invalid_argument("field.domain.axes: expected [lo, hi] pairs (null for infinite)");
      }
      axes.push_back(iv);
    }
    return Domain::product(axes);
  }
  throw std::invalid_argument("field.domain: expected an \"axes\" list");
}

Field field_from(const json& j) {
  require_keys(j, "field", {"gallery", "params", "expr", "dim", "domain"});
  if (j.contains("gallery")) {
    std::map<std::string, double> params;
    if (j.contains("params"))
      for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
        params[it.key()] = it.value().get<double>();
    return gallery_get(j.at("gallery").get<std::string>(), params).field;
  }
  if (j.contains("expr")) {
    Expr e = Expr::parse(j.at("expr").get<std::string>());
    Domain dom = j.contains("domain")
                     ? domain_from(j.at("domain"))
                     : Domain::full_space(std::max(1, j.contains("dim") ? j.at("dim").get<int>()
                                                                        : e.max_variable()));
    return expr_field(e, dom);
  }
  throw std::invalid_argument("field: need \"gallery\" or \"expr\"");
}

WeightProfile profile_from(const json& j) {
  require_keys(j, "profile", {"phi", "weight", "p"});
  WeightProfile prof;
  if (j.contains("phi")) {
    const auto& p = j.at("phi");
    require_keys(p, "profile.phi", {"kind", "alpha"});
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "identity")
      prof.phi = GaugePhi::identity();
    else if (kind == "power")
      prof.phi = GaugePhi::power(p.at("alpha").get<double>());
    else
      throw std::invalid_argument("profile.phi.kind: expected identity|power");
  }
  if (j.contains("weight")) {
    const auto& w = j.at("weight");
    require_keys(w, "profile.weight", {"kind", "beta"});
    const std::string kind = w.at("kind").get<std::string>();
    if (kind == "power")
      prof.weight = WindowWeight::power_decay(w.at("beta").get<double>());
    else
      throw std::invalid_argument("profile.weight.kind: expected power");
  }
  if (j.contains("p")) {
    if (j.at("p").is_number()) {
      prof.p = VariableExponent::constant(j.at("p").get<double>());
    } else if (j.at("p").is_object() && j.at("p").contains("expr")) {
      require_keys(j.at("p"), "profile.p", {"expr"});
      Expr e = Expr::parse(j.at("p").at("expr").get<std::string>());
      prof.p = VariableExponent::function([e](const Pt& x) { return e.evaluate(x).real(); });
    } else {
      throw std::invalid_argument("profile.p: expected a number or {\"expr\": ...}");
    }
  }
  return prof;
}

std::vector<Window> windows_from(const json& j, const Domain& dom, const std::string& shape_flag,
                                 const std::string& preset) {
  double t0 = 8.0, ratio = 2.0;
  int count = preset == "fast" ? 8 : (preset == "deep" ? 14 : 11);
  WindowShape shape = shape_flag == "ball" ? WindowShape::Ball : WindowShape::Cube;
  if (j.contains("windows")) {
    const auto& w = j.at("windows");
    require_keys(w, "windows", {"t0", "ratio", "count", "shape"});
    if (w.contains("t0")) t0 = w.at("t0").get<double>();
    if (w.contains("ratio")) ratio = w.at("ratio").get<double>();
    if (w.contains("count")) count = w.at("count").get<int>();
    if (w.contains("shape")) {
      const std::string s = w.at("shape").get<std::string>();
      if (s != "cube" && s != "ball") throw std::invalid_argument("windows.shape: cube|ball");
      if (shape_flag.empty()) shape = s == "ball" ? WindowShape::Ball : WindowShape::Cube;
    }
  }
  return make_window_sweep(dom, shape, geometric_schedule(t0, ratio, count));
}

json estimate_json(const LimsupEstimate& est) {
  json j;
  j["estimate"] = est.estimate;
  j["trend"] = trend_name(est.trend);
  j["tail_slope"] = est.tail_slope;
  j["vanishing"] = est.vanishing();
  json samples = json::array();
  for (const auto& [t, v] : est.samples) samples.push_back({{"t", t}, {"value", v}});
  j["samples"] = samples;
  return j;
}

std::string sweep_csv(const LimsupEstimate& est, const std::vector<Window>& windows,
                      const char* index_name = "t") {
  std::ostringstream os;
  os.precision(12);
  os << index_name << ",value_re,value_im,window_measure\n";
  for (size_t i = 0; i < est.samples.size(); ++i) {
    const double measure = i < windows.size() ? windows[i].measure() : 0.0;
    os << est.samples[i].first << "," << est.samples[i].second << ",0," << measure << "\n";
  }
  return os.str();
}

JobOutcome run_seminorm(const json& cfg, const std::string& shape, const std::string& preset) {
  Field f = field_from(cfg.at("field"));
  auto windows = windows_from(cfg, f.domain, shape, preset);
  JobOutcome out;
  json rep;
  rep["command"] = "seminorm";
  if (cfg.contains("profile")) {
    WeightProfile prof = profile_from(cfg.at("profile"));
    auto b = besicovitch_bounded(f, prof, windows);
    rep["mode"] = "weighted-residual";
    rep["verdict"] = bounded_verdict_name(b.verdict);
    if (b.verdict == BoundedVerdict::Bounded) rep["bound"] = b.bound;
    rep["sweep"] = estimate_json(b.sweep.estimate);
    out.sweep_csv = sweep_csv(b.sweep.estimate, windows);
    if (b.verdict == BoundedVerdict::Inconclusive) out.exit_code = 2;
  } else {
    double p = 1.0;
    std::string normalization = "measure";
    if (cfg.contains("seminorm")) {
      require_keys(cfg.at("seminorm"), "seminorm", {"p", "normalization"});
      if (cfg.at("seminorm").contains("p")) p = cfg.at("seminorm").at("p").get<double>();
      if (cfg.at("seminorm").contains("normalization"))
        normalization = cfg.at("seminorm").at("normalization").get<std::string>();
    }
    auto r = m_p_seminorm(f, p, windows,
                          normalization == "volume" ? Normalization::Volume : Normalization::Measure);
    rep["mode"] = "m_p";
    rep["p"] = p;
    rep["sweep"] = estimate_json(r.estimate);
    out.sweep_csv = sweep_csv(r.estimate, windows);
    if (r.estimate.trend == Trend::Inconclusive) out.exit_code = 2;
  }
  out.report_json = rep.dump(2);
  return out;
}

JobOutcome run_classify(const json& cfg, const std::string& shape, const std::string& preset) {
  Field f = field_from(cfg.at("field"));
  WeightProfile prof = cfg.contains("profile") ? profile_from(cfg.at("profile")) : WeightProfile{};
  auto windows = windows_from(cfg, f.domain, shape, preset);
  int budget = 8;
  std::vector<Pt> freqs;
  if (cfg.contains("classify")) {
    const auto& c = cfg.at("classify");
    require_keys(c, "classify", {"budget", "frequencies"});
    if (c.contains("budget")) budget = c.at("budget").get<int>();
    if (c.contains("frequencies"))
      for (const auto& fr : c.at("frequencies")) freqs.push_back(pt_from(fr, "classify.frequencies"));
  }
  auto rep = classify_besicovitch(f, prof, budget, freqs, windows);
  JobOutcome out;
  json j = json::parse(rep.to_json());
  j["command"] = "classify";
  out.report_json = j.dump(2);
  std::ostringstream os;
  os.precision(12);
  os << "k,value_re,value_im,window_measure\n";
  for (size_t i = 0; i < rep.budgets.size(); ++i)
    os << rep.budgets[i] << "," << rep.residual_tails[i] << ",0," << windows.back().measure() << "\n";
  out.sweep_csv = os.str();
  if (rep.verdict == ClassVerdict::Inconclusive) out.exit_code = 2;
  return out;
}

JobOutcome run_condition(const json& cfg, const std::string& shape, const std::string& preset) {
  Field f = field_from(cfg.at("field"));
  WeightProfile prof = cfg.contains("profile") ? profile_from(cfg.at("profile")) : WeightProfile{};
  auto windows = windows_from(cfg, f.domain, shape, preset);
  const auto& c = cfg.at("condition");
  require_keys(c, "condition", {"which", "a", "ks", "mode", "lambda", "ls", "f1_beta"});
  const std::string which = c.at("which").get<std::string>();
  JobOutcome out;
  json rep;
  rep["command"] = "condition";
  rep["which"] = which;
  if (which == "A") {
    const Pt a = pt_from(c.at("a"), "condition.a");
    std::vector<int> ks = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    if (c.contains("ks")) ks = c.at("ks").get<std::vector<int>>();
    PeriodicMode mode = PeriodicMode::Vector;
    if (c.contains("mode") && c.at("mode").get<std::string>() == "per-axis")
      mode = PeriodicMode::PerAxis;
    Field cand = condition_A_candidate(f, a, ks.back(), mode);
    auto res = condition_A_residual(f, a, cand, prof, ks, windows, mode, false);
    rep["k_slope"] = res.k_slope;
    rep["k_trend"] = trend_name(res.k_trend);
    json per_k = json::array();
    std::ostringstream os;
    os.precision(12);
    os << "k,value_re,value_im,window_measure\n";
    for (size_t i = 0; i < res.ks.size(); ++i) {
      per_k.push_back({{"k", res.ks[i]}, {"sweep", estimate_json(res.residuals[i])}});
      os << res.ks[i] << "," << res.residuals[i].estimate << ",0," << windows.back().measure()
         << "\n";
    }
    rep["per_k"] = per_k;
    out.sweep_csv = os.str();
    if (res.k_trend == Trend::Inconclusive) out.exit_code = 2;
  } else if (which == "B") {
    const Pt lambda = pt_from(c.at("lambda"), "condition.lambda");
    std::vector<double> ls = {1, 2, 4, 8, 16, 32, 64};
    if (c.contains("ls")) ls = c.at("ls").get<std::vector<double>>();
    WindowWeight f1 = WindowWeight::power_decay(
        c.contains("f1_beta") ? c.at("f1_beta").get<double>() : static_cast<double>(f.domain.dimension()));
    auto res = condition_B_sweep(f, lambda, ls, f1, prof, windows);
    rep["l_trend"] = trend_name(res.l_trend);
    json per_l = json::array();
    std::ostringstream os;
    os.precision(12);
    os << "l,value_re,value_im,window_measure\n";
    for (size_t i = 0; i < ls.size(); ++i) {
      per_l.push_back({{"l", ls[i]}, {"sweep", estimate_json(res.per_l[i])}});
      os << ls[i] << "," << res.per_l[i].estimate << ",0," << windows.back().measure() << "\n";
    }
    rep["per_l"] = per_l;
    out.sweep_csv = os.str();
    if (res.l_trend == Trend::Inconclusive) out.exit_code = 2;
  } else {
    throw std::invalid_argument("condition.which: expected A or B");
  }
  out.report_json = rep.dump(2);
  return out;
}

JobOutcome run_operator(const json& cfg, const std::string&, const std::string&) {
  const auto& op = cfg.at("operator");
  require_keys(op, "operator",
               {"which", "kernel", "t", "x", "t0", "lipschitz", "grid", "input"});
  const std::string which = op.at("which").get<std::string>();
  JobOutcome out;
  json rep;
  rep["command"] = "operator";
  rep["which"] = which;

  auto kernel_from = [&](const json& k) {
    require_keys(k, "operator.kernel", {"form", "M", "beta", "gamma", "c"});
    const std::string form = k.at("form").get<std::string>();
    const double M = k.contains("M") ? k.at("M").get<double>() : 1.0;
    const double beta = k.contains("beta") ? k.at("beta").get<double>() : 1.0;
    if (form == "algebraic") return KernelSpec::algebraic(M, beta, k.at("gamma").get<double>());
    if (form == "exponential") return KernelSpec::exponential(M, k.at("c").get<double>(), beta);
    throw std::invalid_argument("operator.kernel.form: algebraic|exponential");
  };

  if (which == "convolution") {
    Field f = field_from(cfg.at("field"));
    KernelSpec spec = kernel_from(op.at("kernel"));
    const double t = op.at("t").get<double>();
    const complexd v = infinite_convolution(spec, f, t, {1.0, 0.0}, 1e-8, true);
    rep["t"] = t;
    rep["value_re"] = v.real();
    rep["value_im"] = v.imag();
  } else if (which == "gaussian") {
    Field f = field_from(cfg.at("field"));
    const double t0 = op.at("t0").get<double>();
    const Pt x = pt_from(op.at("x"), "operator.x");
    const complexd v = gaussian_semigroup(f, t0, x);
    rep["t0"] = t0;
    rep["value_re"] = v.real();
    rep["value_im"] = v.imag();
  } else if (which == "fixed-point") {
    KernelSpec spec = kernel_from(op.at("kernel"));
    const double a = op.at("lipschitz").get<double>();
    const auto& g = op.at("grid");
    require_keys(g, "operator.grid", {"lo", "hi", "step"});
    // desk nonlinearity: G(s, u) = lipschitz * sin(u) + cos(s)
    auto res = semilinear_fixed_point(
        spec, [a](double s, complexd u) { return a * std::sin(u.real()) + std::cos(s); }, a,
        g.at("lo").get<double>(), g.at("hi").get<double>(), g.at("step").get<double>());
    rep["iterations"] = res.iterations;
    rep["converged"] = res.converged;
    rep["contraction"] = res.contraction_estimate;
    rep["residual_history"] = res.residual_history;
    std::ostringstream os;
    os.precision(12);
    os << "t,value_re,value_im,window_measure\n";
    for (size_t i = 0; i < res.iterate.values.size(); ++i) {
      const double t = res.iterate.lo + static_cast<double>(i) * res.iterate.step;
      os << t << "," << res.iterate.values[i].real() << "," << res.iterate.values[i].imag() << ",0\n";
    }
    out.sweep_csv = os.str();
  } else {
    throw std::invalid_argument("operator.which: convolution|gaussian|fixed-point");
  }
  out.report_json = rep.dump(2);
  return out;
}

JobOutcome run_gallery(const json& cfg, const std::string&, const std::string& preset) {
  JobOutcome out;
  if (cfg.contains("gallery")) {
    const auto& g = cfg.at("gallery");
    require_keys(g, "gallery", {"id", "verify"});
    const std::string id = g.at("id").get<std::string>();
    if (g.contains("verify") && g.at("verify").get<bool>()) {
      auto rep = gallery_verify(id, preset_from_name(preset));
      json j;
      j["command"] = "gallery";
      j["id"] = rep.id;
      j["preset"] = preset_name(rep.preset);
      j["passed"] = rep.passed;
      j["failed"] = rep.failed;
      j["inconclusive"] = rep.inconclusive;
      json checks = json::array();
      for (const auto& [name, r] : rep.results)
        checks.push_back({{"name", name}, {"status", property_status_name(r.status)}, {"detail", r.detail}});
      j["checks"] = checks;
      out.report_json = j.dump(2);
      if (rep.failed > 0) out.exit_code = 1;
      else if (rep.inconclusive > 0) out.exit_code = 2;
    } else {
      GalleryEntry e = gallery_get(id);
      json j;
      j["command"] = "gallery";
      j["id"] = e.id;
      j["formula"] = e.formula;
      j["params"] = e.params;
      out.report_json = j.dump(2);
    }
  } else {
    out.report_json = gallery_manifest_json();
  }
  return out;
}

}  // namespace

std::string normalize_config(const std::string& config_json) {
  json cfg = json::parse(config_json);
  require_keys(cfg, "config",
               {"command", "field", "profile", "windows", "seminorm", "classify", "condition",
                "operator", "gallery", "out_dir", "seed"});
  return cfg.dump(2);
}

JobOutcome run_job(const std::string& config_json, const std::string& preset,
                   const std::string& window_shape, long seed) {
  JobOutcome out;
  try {
    json cfg = json::parse(config_json);
    normalize_config(config_json);
    const std::string command = cfg.at("command").get<std::string>();
    if (command == "seminorm")
      out = run_seminorm(cfg, window_shape, preset);
    else if (command == "classify")
      out = run_classify(cfg, window_shape, preset);
    else if (command == "condition")
      out = run_condition(cfg, window_shape, preset);
    else if (command == "operator")
      out = run_operator(cfg, window_shape, preset);
    else if (command == "gallery")
      out = run_gallery(cfg, window_shape, preset);
    else
      throw std::invalid_argument("unknown command: " + command);
    if (!out.report_json.empty()) {
      json rep = json::parse(out.report_json);
      rep["seed"] = seed;
      rep["preset"] = preset;
      out.report_json = rep.dump(2);
    }
  } catch (const std::exception& ex) {
    out.exit_code = 1;
    out.error = ex.what();
  }
  return out;
}

}  // namespace aplab
