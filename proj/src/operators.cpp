#include "aplab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace aplab {

KernelSpec KernelSpec::algebraic(double M, double beta, double gamma) {
  if (!(M > 0) || !(beta > 0) || beta > 1.0 || !(gamma > 1.0))
    throw std::invalid_argument("KernelSpec: need M > 0, beta in (0,1], gamma > 1");
  KernelSpec k;
  k.form = Form::Algebraic;
  k.M = M;
  k.beta = beta;
  k.gamma = gamma;
  return k;
}

KernelSpec KernelSpec::exponential(double M, double c, double beta) {
  if (!(M > 0) || !(c > 0) || !(beta > 0) || beta > 1.0)
    throw std::invalid_argument("KernelSpec: need M > 0, c > 0, beta in (0,1]");
  KernelSpec k;
  k.form = Form::Exponential;
  k.M = M;
  k.c = c;
  k.beta = beta;
  return k;
}

KernelSpec KernelSpec::explicit_kernel(std::function<complexd(double)> eval,
                                       std::function<double(double)> envelope) {
  KernelSpec k;
  k.form = Form::Explicit;
  k.evaluator = std::move(eval);
  k.envelope = std::move(envelope);
  for (int i = 1; i <= 1000; ++i) {
    const double t = 40.0 * i / 1000.0;
    if (std::abs(k.evaluator(t)) > k.envelope(t) + 1e-9)
      throw std::invalid_argument("KernelSpec: envelope does not dominate the evaluator");
  }
  return k;
}

complexd KernelSpec::value(double t) const {
  if (t <= 0) return 0.0;
  switch (form) {
    case Form::Algebraic: return M * std::pow(t, beta - 1.0) / (1.0 + std::pow(t, gamma));
    case Form::Exponential: return M * std::exp(-c * t) * std::pow(t, beta - 1.0);
    default: return evaluator(t);
  }
}

double KernelSpec::envelope_at(double t) const {
  if (t <= 0) return 0.0;
  if (form == Form::Explicit) return envelope(t);
  return std::abs(value(t));
}

double KernelSpec::envelope_mass() const {
  QuadOptions o;
  o.rel_tol = 1e-10;
  // integrable endpoint singularity t^{beta-1}: graded panels toward zero
  double mass = 0;
  double lo = 0, hi = 1.0 / 1024.0;
  for (int level = 0; level < 24; ++level) {
    mass += integrate_real([this](double t) { return envelope_at(t); }, lo, hi, o);
    lo = hi;
    hi *= 2.0;
    if (lo > 1e7) break;
  }
  return mass;
}

double KernelSpec::tail_cutoff(double eps) const {
  const double total = envelope_mass();
  QuadOptions o;
  o.rel_tol = 1e-8;
  double T = 1.0;
  for (int i = 0; i < 64; ++i) {
    // tail from T to 8T levels until negligible growth
    double tail = 0;
    double lo = T, hi = 2 * T;
    for (int level = 0; level < 40; ++level) {
      const double piece = integrate_real([this](double t) { return envelope_at(t); }, lo, hi, o);
      tail += piece;
      if (piece < 1e-3 * eps * total && level > 4) break;
      lo = hi;
      hi *= 2.0;
    }
    if (tail < eps * total) return T;
    T *= 2.0;
  }
  return T;
}

GreenSpec GreenSpec::exponential(std::function<complexd(double, double)> eval, double M,
                                 double omega) {
  if (!(M > 0) || !(omega > 0)) throw std::invalid_argument("GreenSpec: need M > 0, omega > 0");
  GreenSpec g;
  g.evaluator = std::move(eval);
  g.M = M;
  g.omega = omega;
  for (int i = 0; i < 400; ++i) {
    const double t = -20.0 + 0.1 * i;
    const double s = t + std::sin(3.7 * i) * 15.0;
    if (std::abs(g.evaluator(t, s)) > M * std::exp(-omega * std::abs(t - s)) + 1e-9)
      throw std::invalid_argument("GreenSpec: exponential bound violated at a sample");
  }
  return g;
}

ConvHypothesisReport hypothesis_check_conv(const KernelSpec& spec, double a, double alpha, double p) {
  ConvHypothesisReport r;
  const double ap = alpha * p;
  r.alpha_p_ge_1 = ap >= 1.0;
  r.a_p_ge_1 = a * p >= 1.0;
  if (ap > 1.0) {
    r.singularity_ok = ap * (spec.beta - 1.0) / (ap - 1.0) > -1.0;
  } else {
    r.singularity_ok = spec.beta == 1.0;
  }
  r.all_pass = r.alpha_p_ge_1 && r.a_p_ge_1 && r.singularity_ok;
  r.zeta_lo = 1.0 / ap;
  const double gap = spec.form == KernelSpec::Form::Algebraic ? spec.gamma - spec.beta : kInf;
  r.zeta_hi = r.zeta_lo + gap;
  std::ostringstream os;
  os << "alpha*p=" << ap << " a*p=" << a * p << " zeta in (" << r.zeta_lo << "," << r.zeta_hi << ")";
  r.detail = os.str();
  return r;
}

namespace {

QuadOptions conv_opts(const Field& f, double t_lo, double t_hi) {
  QuadOptions o;
  o.rel_tol = 1e-8;
  o.osc_freq = f.osc_freq;
  if (f.feature_scale > 0) o.feature_scale = f.feature_scale;
  if (f.breakpoints) f.breakpoints(t_lo, t_hi, 0, o.breakpoints);
  return o;
}

}  // namespace

complexd infinite_convolution(const KernelSpec& spec, const Field& f, double t,
                              const GrowthBound& growth, double tail_eps, bool override_hypotheses,
                              double a, double alpha, double p) {
  if (!override_hypotheses) {
    const auto rep = hypothesis_check_conv(spec, a, alpha, p);
    if (!rep.all_pass)
      throw std::invalid_argument("infinite_convolution: kernel hypotheses fail (" + rep.detail + ")");
  }
  // Effective cutoff: the envelope mass beyond T must stay below tail_eps
  // even against polynomially growing inputs.
  double T = spec.tail_cutoff(tail_eps);
  if (growth.order > 0) T *= std::pow(2.0, growth.order);

  // u in (0, T]: integral R(u) f(t-u) du with graded panels near u = 0.
  QuadOptions o = conv_opts(f, t - T, t);
  complexd acc = 0;
  double hi = T;
  double lo = std::max(T / 1024.0, 1e-12);
  // integrable kernel singularity at zero: geometric grading
  for (int level = 0; level < 60; ++level) {
    QuadOptions oo = o;
    oo.breakpoints.clear();
    if (f.breakpoints) f.breakpoints(t - hi, t - lo, 0, oo.breakpoints);
    for (auto& b : oo.breakpoints) b = t - b;  // map field breakpoints into u
    acc += integrate([&](double u) { return spec.value(u) * f(Pt{t - u}).scalar(); }, lo, hi, oo);
    hi = lo;
    lo *= 0.25;
    if (hi < 1e-10) break;
  }
  return acc;
}

Field infinite_convolution_field(const KernelSpec& spec, const Field& f, const GrowthBound& growth,
                                 double tail_eps) {
  Field r = f;
  KernelSpec k = spec;
  GrowthBound g = growth;
  Field base = f;
  r.eval = [k, base, g, tail_eps](const Pt& t, const Pt&) {
    return CVal(infinite_convolution(k, base, t[0], g, tail_eps, true));
  };
  r.breakpoints = nullptr;  // convolution smears discontinuities
  r.feature_scale = f.feature_scale > 0 ? std::max(f.feature_scale, 0.5) : 0.0;
  return r;
}

complexd green_solution(const GreenSpec& spec, const Field& f, double t, double tail_eps) {
  // |Gamma| <= M e^{-omega |t-s|}: cutoff where the tail integral is small.
  const double T = -std::log(tail_eps * spec.omega / (2.0 * spec.M)) / spec.omega;
  QuadOptions o = conv_opts(f, t - T, t + T);
  o.breakpoints.push_back(t);
  return integrate([&](double s) { return spec.evaluator(t, s) * f(Pt{s}).scalar(); }, t - T, t + T, o);
}

complexd gaussian_semigroup(const Field& f, double t0, const Pt& x, const GrowthBound& growth,
                            double tail_eps) {
  if (!(t0 > 0)) throw std::invalid_argument("gaussian_semigroup: t0 must be positive");
  const int n = f.domain.dimension();
  // radius with Gaussian tail mass (1+r)^{order} e^{-r^2/4t} < tail_eps
  double r = std::sqrt(4.0 * t0 * std::log(4.0 / tail_eps));
  for (int i = 0; i < 40; ++i) {
    if (std::pow(1.0 + r + x.norm2(), growth.order) * std::exp(-r * r / (8.0 * t0)) < tail_eps) break;
    r *= 1.25;
  }
  const double norm_factor = std::pow(4.0 * std::numbers::pi * t0, -0.5 * n);

  if (n == 1) {
    QuadOptions o = conv_opts(f, x[0] - r, x[0] + r);
    const complexd integral = integrate(
        [&](double y) { return std::exp(-y * y / (4.0 * t0)) * f(Pt{x[0] - y}).scalar(); }, -r, r, o);
    return norm_factor * integral;
  }
  if (n == 2) {
    QuadOptions o;
    o.rel_tol = 1e-8;
    o.osc_freq = f.osc_freq;
    auto outer = [&](double y2) -> complexd {
      return integrate(
          [&](double y1) {
            const double q = y1 * y1 + y2 * y2;
            return std::exp(-q / (4.0 * t0)) * f(Pt{x[0] - y1, x[1] - y2}).scalar();
          },
          -r, r, o);
    };
    return norm_factor * integrate(outer, -r, r, o);
  }
  throw std::invalid_argument("gaussian_semigroup: supported for n <= 2");
}

Field gaussian_semigroup_field(const Field& f, double t0, const GrowthBound& growth) {
  Field r = f;
  Field base = f;
  GrowthBound g = growth;
  r.eval = [base, t0, g](const Pt& x, const Pt&) { return CVal(gaussian_semigroup(base, t0, x, g)); };
  r.breakpoints = nullptr;
  r.feature_scale = std::max(f.feature_scale, std::sqrt(t0));
  return r;
}

complexd heat_evolution(const Field& f, const std::function<double(double)>& coeff, double t,
                        double s, const Pt& u, const GrowthBound& growth) {
  if (!(t > s) || s < 0) throw std::invalid_argument("heat_evolution: need t > s >= 0");
  QuadOptions o;
  o.rel_tol = 1e-10;
  const double amp = std::exp(integrate_real(coeff, s, t, o));
  return amp * gaussian_semigroup(f, t - s, u, growth);
}

complexd GridField::at(double t) const {
  if (values.empty()) return 0.0;
  const double u = std::clamp((t - lo) / step, 0.0, static_cast<double>(values.size() - 1));
  const size_t i = std::min(static_cast<size_t>(u), values.size() - 2);
  const double frac = u - static_cast<double>(i);
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

Field GridField::to_field(const Domain& dom) const {
  Field f;
  f.domain = dom;
  GridField copy = *this;
  f.eval = [copy](const Pt& t, const Pt&) { return CVal(copy.at(t[0])); };
  f.feature_scale = step * 4.0;
  return f;
}

FixedPointResult semilinear_fixed_point(const KernelSpec& spec,
                                        const std::function<complexd(double, complexd)>& g,
                                        double lipschitz, double grid_lo, double grid_hi,
                                        double grid_step, double tol, int max_iter) {
  if (!(grid_hi > grid_lo) || !(grid_step > 0))
    throw std::invalid_argument("semilinear_fixed_point: bad grid");
  FixedPointResult res;
  res.contraction_estimate = lipschitz * spec.envelope_mass();
  if (res.contraction_estimate >= 1.0)
    throw std::invalid_argument("semilinear_fixed_point: contraction condition fails");

  const double T = spec.tail_cutoff(1e-10);
  const size_t npts = static_cast<size_t>(std::floor((grid_hi - grid_lo) / grid_step)) + 1;
  GridField u;
  u.lo = grid_lo;
  u.hi = grid_lo + grid_step * static_cast<double>(npts - 1);
  u.step = grid_step;
  u.values.assign(npts, 0.0);

  QuadOptions o;
  o.rel_tol = 1e-9;

  for (int it = 0; it < max_iter; ++it) {
    GridField next = u;
    double change = 0;
    for (size_t i = 0; i < npts; ++i) {
      const double t = u.lo + static_cast<double>(i) * u.step;
      // graded panels near the kernel singularity, as in infinite_convolution
      complexd acc = 0;
      double hi = T, lo2 = std::max(T / 1024.0, 1e-12);
      for (int level = 0; level < 60; ++level) {
        acc += integrate([&](double s) { return spec.value(s) * g(t - s, u.at(t - s)); }, lo2, hi, o);
        hi = lo2;
        lo2 *= 0.25;
        if (hi < 1e-10) break;
      }
      next.values[i] = acc;
      change = std::max(change, std::abs(next.values[i] - u.values[i]));
    }
    u = next;
    res.residual_history.push_back(change);
    res.iterations = it + 1;
    if (change < tol) {
      res.converged = true;
      break;
    }
  }
  res.iterate = u;
  if (!res.converged && res.residual_history.back() >= tol) {
    if (res.iterations >= max_iter) throw std::runtime_error("semilinear_fixed_point: no convergence");
  }
  return res;
}

}  // namespace aplab
