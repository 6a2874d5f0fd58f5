#include "aplab/luxemburg.hpp"

#include <algorithm>
#include <cmath>

namespace aplab {

VariableExponent VariableExponent::constant(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("VariableExponent: p must be >= 1");
  VariableExponent e;
  e.constant_ = true;
  e.p_ = p;
  return e;
}

VariableExponent VariableExponent::function(std::function<double(const Pt&)> p) {
  VariableExponent e;
  e.constant_ = false;
  e.fn_ = std::move(p);
  return e;
}

std::vector<Pt> window_sample_points(const Window& w, int count) {
  // Additive golden-ratio sequence over the window's bounding box, filtered
  // by membership. Deterministic and reasonably equidistributed.
  static constexpr double kAlpha[kMaxDim] = {0.6180339887498949, 0.7548776662466927,
                                             0.8191725133961645, 0.8566748838545029};
  const auto bounds = window_axis_bounds(w);
  const int n = w.domain.dimension();
  std::vector<Pt> pts;
  pts.reserve(count);
  double u[kMaxDim] = {0.5, 0.5, 0.5, 0.5};
  int produced = 0, tries = 0;
  const int max_tries = count * 64;
  while (produced < count && tries < max_tries) {
    ++tries;
    Pt t = Pt::zero(n);
    for (int i = 0; i < n; ++i) {
      u[i] += kAlpha[i];
      if (u[i] >= 1.0) u[i] -= 1.0;
      t[i] = bounds[i].lo + u[i] * (bounds[i].hi - bounds[i].lo);
    }
    if (w.contains(t)) {
      pts.push_back(t);
      ++produced;
    }
  }
  return pts;
}

std::pair<double, double> VariableExponent::range_on(const Window& w, int samples) const {
  if (constant_) return {p_, p_};
  double lo = kInf, hi = 1.0;
  for (const Pt& t : window_sample_points(w, samples)) {
    const double p = fn_(t);
    if (!(p >= 1.0)) throw std::invalid_argument("VariableExponent: sampled p(x) < 1");
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return {lo, hi};
}

double phi_exponent(double p, double t) {
  if (std::isinf(p)) return t <= 1.0 ? 0.0 : kInf;
  return std::pow(t, p);
}

namespace {

QuadOptions modular_opts(const Field& f, const Window& w, const QuadOptions& base) {
  return window_quad_options(f, w, base);
}

}  // namespace

double modular(const Field& f, const VariableExponent& p, const Window& w, const QuadOptions& opts) {
  QuadOptions o = modular_opts(f, w, opts);
  bool infinite = false;
  auto integrand = [&](const Pt& t) -> double {
    const double px = p(t);
    const double v = f.value_norm(t);
    const double phi = phi_exponent(px, v);
    if (std::isinf(phi)) {
      infinite = true;
      return 0.0;
    }
    return phi;
  };
  const double val = integrate_window_real(integrand, w, o);
  if (infinite || !std::isfinite(val)) return kInf;
  return val;
}

ModularEvaluator::ModularEvaluator(const Field& f, const VariableExponent& p, const Window& w,
                                   QuadOptions opts)
    : win_(w), opts_(opts) {
  const int n = w.domain.dimension();
  if (p.is_constant()) {
    constant_ = true;
    p_const_ = p.constant_value();
    if (std::isinf(p_const_)) {
      infinite_ = true;
      // essential sup estimated on the quadrature node set plus golden points
      double s = 0.0;
      if (n == 1) {
        const auto b = window_axis_bounds(w)[0];
        QuadOptions o = modular_opts(f, w, opts_);
        auto samples = sample_interval([&](double x) { return f.value_norm(Pt{x}); }, b.lo, b.hi, o);
        for (double x : samples.nodes) s = std::max(s, f.value_norm(Pt{x}));
      }
      for (const Pt& t : window_sample_points(w, 4096)) s = std::max(s, f.value_norm(t));
      sup_norm_ = s;
      return;
    }
    QuadOptions o = modular_opts(f, w, opts_);
    rho_f_ = integrate_window_real(
        [&](const Pt& t) { return std::pow(f.value_norm(t), p_const_); }, w, o);
    return;
  }
  // Variable exponent: cache nodes on 1-D windows, slow path otherwise.
  if (n == 1) {
    const auto b = window_axis_bounds(w)[0];
    QuadOptions o = modular_opts(f, w, opts_);
    auto samples = sample_interval(
        [&](double x) {
          const double phi = phi_exponent(p(Pt{x}), f.value_norm(Pt{x}));
          return std::isinf(phi) ? 0.0 : phi;
        },
        b.lo, b.hi, o);
    w_ = samples.weights;
    fv_.resize(samples.nodes.size());
    pv_.resize(samples.nodes.size());
    for (size_t i = 0; i < samples.nodes.size(); ++i) {
      fv_[i] = f.value_norm(Pt{samples.nodes[i]});
      pv_[i] = p(Pt{samples.nodes[i]});
    }
    sampled_ = true;
    return;
  }
  f_ = &f;
  p_ = &p;
}

double ModularEvaluator::rho(double lambda) const {
  if (!(lambda > 0)) return kInf;
  if (constant_) {
    if (infinite_) return sup_norm_ / lambda <= 1.0 ? 0.0 : kInf;
    if (rho_f_ == 0.0) return 0.0;
    return rho_f_ * std::pow(lambda, -p_const_);
  }
  if (sampled_) {
    double s = 0.0;
    for (size_t i = 0; i < w_.size(); ++i) {
      const double phi = phi_exponent(pv_[i], fv_[i] / lambda);
      if (std::isinf(phi) && w_[i] > 0) return kInf;
      s += w_[i] * phi;
      if (!std::isfinite(s)) return kInf;
    }
    return s;
  }
  Field g = f_->scaled(1.0 / lambda);
  return modular(g, *p_, win_, opts_);
}

double luxemburg_norm(const Field& f, const VariableExponent& p, const Window& w,
                      const LuxOptions& opts) {
  ModularEvaluator rho(f, p, w, opts.quad);

  // scale-aware starting bracket: fields of enormous magnitude would not be
  // reachable by doubling up from 1
  double hi = 1.0;
  for (const Pt& t : window_sample_points(w, 256)) hi = std::max(hi, f.value_norm(t));
  if (!std::isfinite(hi)) hi = 1e300;
  int k = 0;
  while (rho.rho(hi) > 1.0) {
    hi *= 2.0;
    if (++k > opts.max_doublings) throw std::runtime_error("norm overflow");
  }
  // shrink the lower edge until the modular exceeds 1
  double lo = hi;
  while (rho.rho(lo) <= 1.0) {
    lo *= 0.5;
    if (lo < 1e-280) return 0.0;  // rho(f/lambda) <= 1 for all lambda in bracket
  }
  // invariant: rho(lo) > 1 >= rho(hi)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = rho.rho(mid);
    if (std::isfinite(r) && std::abs(r - 1.0) <= opts.tol) return mid;
    if (r > 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= opts.tol * hi) break;
  }
  return hi;
}

namespace {

void check_exponent_identity(const VariableExponent& p, const VariableExponent& r,
                             const VariableExponent& q, const Window& w) {
  for (const Pt& t : window_sample_points(w, 512)) {
    const double ip = std::isinf(p(t)) ? 0.0 : 1.0 / p(t);
    const double ir = std::isinf(r(t)) ? 0.0 : 1.0 / r(t);
    const double iq = std::isinf(q(t)) ? 0.0 : 1.0 / q(t);
    if (std::abs(iq - ip - ir) > 1e-9)
      throw std::invalid_argument("holder_product_norm: 1/q = 1/p + 1/r violated");
  }
}

}  // namespace

std::pair<double, double> holder_product_norm(const Field& u, const Field& v,
                                              const VariableExponent& p, const VariableExponent& r,
                                              const VariableExponent& q, const Window& w,
                                              const LuxOptions& opts) {
  check_exponent_identity(p, r, q, w);
  const double lhs = luxemburg_norm(field_product(u, v), q, w, opts);
  const double rhs = 2.0 * luxemburg_norm(u, p, w, opts) * luxemburg_norm(v, r, w, opts);
  return {lhs, rhs};
}

std::pair<double, double> embedding_constant_check(const Field& f, const VariableExponent& p,
                                                   const VariableExponent& q, const Window& w,
                                                   const LuxOptions& opts) {
  for (const Pt& t : window_sample_points(w, 512)) {
    if (q(t) > p(t) + 1e-12) throw std::invalid_argument("embedding_constant_check: q <= p violated");
  }
  const double lhs = luxemburg_norm(f, q, w, opts);
  const double rhs = 2.0 * (1.0 + w.measure()) * luxemburg_norm(f, p, w, opts);
  return {lhs, rhs};
}

}  // namespace aplab
