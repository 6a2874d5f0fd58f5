#include "aplab/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aplab {

GaugePhi GaugePhi::power(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("GaugePhi: alpha must be positive");
  GaugePhi g;
  g.kind = Kind::Power;
  g.alpha = alpha;
  return g;
}

GaugePhi GaugePhi::custom(std::function<double(double)> f) {
  GaugePhi g;
  g.kind = Kind::Custom;
  g.fn = std::move(f);
  return g;
}

double GaugePhi::operator()(double x) const {
  switch (kind) {
    case Kind::Identity: return x;
    case Kind::Power: return std::pow(x, alpha);
    default: return fn(x);
  }
}

double GaugePhi::companion(double y) const {
  switch (kind) {
    case Kind::Identity: return y;
    case Kind::Power: return std::pow(y, alpha);
    default: {
      // numerical sup of phi(xy)/phi(x) over a grid
      double m = 0;
      for (double x : {0.25, 0.5, 1.0, 2.0, 4.0, 16.0}) {
        const double d = fn(x);
        if (d > 0) m = std::max(m, fn(x * y) / d);
      }
      return m;
    }
  }
}

std::string GaugePhi::describe() const {
  switch (kind) {
    case Kind::Identity: return "phi=x";
    case Kind::Power: {
      std::ostringstream os;
      os << "phi=x^" << alpha;
      return os.str();
    }
    default: return "phi=custom";
  }
}

WindowWeight WindowWeight::power_decay(double beta) {
  if (!(beta > 0)) throw std::invalid_argument("WindowWeight: beta must be positive");
  WindowWeight w;
  w.kind = Kind::PowerDecay;
  w.beta = beta;
  return w;
}

WindowWeight WindowWeight::custom(std::function<double(double)> f) {
  WindowWeight w;
  w.kind = Kind::Custom;
  w.fn = std::move(f);
  return w;
}

double WindowWeight::operator()(double t) const {
  return kind == Kind::PowerDecay ? std::pow(t, -beta) : fn(t);
}

std::string WindowWeight::describe() const {
  if (kind == Kind::PowerDecay) {
    std::ostringstream os;
    os << "F=t^-" << beta;
    return os.str();
  }
  return "F=custom";
}

WeightProfile::Validation WeightProfile::validate(const std::vector<Window>& windows) const {
  Validation v;
  // (I): monotone on a grid, continuous at zero, constant exponent.
  bool mono = true;
  double prev = phi(0.0);
  const bool zero_at_zero = std::abs(phi(0.0)) < 1e-12;
  for (int i = 1; i <= 64; ++i) {
    const double x = i / 8.0;
    const double y = phi(x);
    if (y + 1e-12 < prev) mono = false;
    prev = y;
  }
  const bool cont0 = std::abs(phi(1e-12) - phi(0.0)) < 1e-2;
  v.cond_I = mono && cont0 && zero_at_zero && p.is_constant() && std::isfinite(p.constant_value());

  // (II): smallest grid constant for phi(x+y) <= c [phi(x) + phi(y)], and
  // D = sup_m m * companion(1/m).
  double c = 0;
  for (double x = 0.125; x <= 8.0; x *= 2)
    for (double y = 0.125; y <= 8.0; y *= 2) {
      const double den = phi(x) + phi(y);
      if (den > 0) c = std::max(c, phi(x + y) / den);
    }
  v.quasi_c = c;
  double d = 0, d_small = 0;
  for (int m = 1; m <= 4096; m *= 2) {
    const double dm = m * phi.companion(1.0 / m);
    d = std::max(d, dm);
    if (m <= 64) d_small = std::max(d_small, dm);
  }
  v.companion_D = d;
  // bounded D means the deep-m values stop growing
  v.cond_II = c <= 1.0 + 1e-9 && std::isfinite(d) && d <= 1.05 * d_small + 1e-12;

  // (III): Fw(t) m(Lambda_t)^{1/p} bounded over the probed windows and
  // Fw(t)/Fw(t+a) <= 1 asymptotically.
  if (!windows.empty() && p.is_constant() && std::isfinite(p.constant_value())) {
    const double pc = p.constant_value();
    double first = 0, last = 0;
    bool ok = true;
    for (size_t i = 0; i < windows.size(); ++i) {
      const double t = windows[i].radius;
      const double val = weight(t) * std::pow(windows[i].measure(), 1.0 / pc);
      if (!std::isfinite(val)) ok = false;
      if (i == 0) first = val;
      last = val;
    }
    const bool weight_bounded = ok && last <= std::max(4.0 * first, first + 1.0);
    // the ratio condition is asymptotic: probe it at two depths and accept a
    // finite-horizon excess that is clearly shrinking toward 1
    bool ratio_ok = true;
    const double t_big = windows.back().radius;
    for (double a : {0.5, 1.0, 4.0, 32.0}) {
      const double r_near = weight(t_big / 4.0) / weight(t_big / 4.0 + a);
      const double r_far = weight(t_big) / weight(t_big + a);
      const bool settles = r_far <= 1.0 + 1e-6 ||
                           (r_far < r_near && r_far - 1.0 <= 3.0 * (r_near - r_far));
      if (!settles) ratio_ok = false;
    }
    v.cond_III = weight_bounded && ratio_ok;
  }
  return v;
}

namespace {

double window_norm_factor(const Window& w, Normalization n) {
  if (n == Normalization::Measure) return 1.0 / w.measure();
  return std::pow(2.0 * w.radius, -w.domain.dimension());
}

}  // namespace

SeminormReport m_p_seminorm(const Field& f, double p, const std::vector<Window>& windows,
                            Normalization normalization, const QuadOptions& quad) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("m_p_seminorm: need constant p in [1,inf)");
  SeminormReport rep;
  rep.shape = windows.empty() ? WindowShape::Cube : windows.front().shape;
  {
    std::ostringstream os;
    os << "Mp seminorm, p=" << p
       << (normalization == Normalization::Measure ? ", measure normalization" : ", volume normalization");
    rep.profile = os.str();
  }
  std::vector<std::pair<double, double>> samples;
  samples.reserve(windows.size());
  for (const Window& w : windows) {
    QuadOptions o = window_quad_options(f, w, quad);
    const double integral =
        integrate_window_real([&](const Pt& t) { return std::pow(f.value_norm(t), p); }, w, o);
    if (!std::isfinite(integral)) {
      std::ostringstream os;
      os << "m_p_seminorm: non-finite quadrature on window t=" << w.radius;
      throw std::runtime_error(os.str());
    }
    samples.emplace_back(w.radius, std::pow(window_norm_factor(w, normalization) * integral, 1.0 / p));
  }
  rep.estimate = limsup_estimate(samples);
  return rep;
}

SeminormReport weighted_residual(const Field& f, const Field& g, const WeightProfile& profile,
                                 const std::vector<Window>& windows) {
  if (f.domain.dimension() != g.domain.dimension())
    throw std::invalid_argument("weighted_residual: fields must share a domain");
  SeminormReport rep;
  rep.shape = windows.empty() ? WindowShape::Cube : windows.front().shape;
  rep.profile = profile.phi.describe() + ", " + profile.weight.describe();

  // Parameter set: the shared B (possibly empty -> single evaluation).
  std::vector<Pt> params = f.params;
  if (params.empty()) params.push_back(Pt{});

  Field diff = field_difference(f, g);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(windows.size());
  for (const Window& w : windows) {
    double sup_x = 0.0;
    for (const Pt& x : params) {
      Field h = diff;
      auto base = diff.eval;
      auto phi = profile.phi;
      auto nk = diff.norm_kind;
      Pt xx = x;
      h.eval = [base, phi, nk, xx](const Pt& t, const Pt&) {
        return CVal(complexd(phi(base(t, xx).norm(nk)), 0.0));
      };
      h.params.clear();
      const double nrm = luxemburg_norm(h, profile.p, w, profile.lux);
      sup_x = std::max(sup_x, nrm);
    }
    const double val = profile.weight(w.radius) * sup_x;
    if (!std::isfinite(val)) {
      std::ostringstream os;
      os << "weighted_residual: non-finite value on window t=" << w.radius;
      throw std::runtime_error(os.str());
    }
    samples.emplace_back(w.radius, val);
  }
  rep.estimate = limsup_estimate(samples);
  return rep;
}

const char* bounded_verdict_name(BoundedVerdict v) {
  switch (v) {
    case BoundedVerdict::Bounded: return "bounded";
    case BoundedVerdict::Unbounded: return "unbounded";
    default: return "inconclusive";
  }
}

BoundednessReport besicovitch_bounded(const Field& f, const WeightProfile& profile,
                                      const std::vector<Window>& windows) {
  BoundednessReport rep;
  Field zero = constant_field(f.domain, 0.0);
  zero.params = f.params;
  rep.sweep = weighted_residual(f, zero, profile, windows);
  switch (rep.sweep.estimate.trend) {
    case Trend::Bounded:
    case Trend::ConvergingToZero:
      rep.verdict = BoundedVerdict::Bounded;
      rep.bound = rep.sweep.estimate.estimate;
      break;
    case Trend::Diverging:
      rep.verdict = BoundedVerdict::Unbounded;
      break;
    default:
      rep.verdict = BoundedVerdict::Inconclusive;
      break;
  }
  return rep;
}

double pseudometric_d(const Field& f, const Field& g, const WeightProfile& profile,
                      const std::vector<Window>& windows) {
  if (besicovitch_bounded(f, profile, windows).verdict == BoundedVerdict::Unbounded ||
      besicovitch_bounded(g, profile, windows).verdict == BoundedVerdict::Unbounded)
    throw std::invalid_argument("outside pseudometric space");
  return weighted_residual(f, g, profile, windows).estimate.estimate;
}

}  // namespace aplab
