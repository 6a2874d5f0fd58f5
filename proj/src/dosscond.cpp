#include "aplab/dosscond.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aplab {

namespace {

double mod_2pi_distance(double x) {
  const double twopi = 2.0 * std::numbers::pi;
  double r = std::fmod(x, twopi);
  if (r < 0) r += twopi;
  return std::min(r, twopi - r);
}

void require_nonzero_shift(const Pt& a) {
  double n = 0;
  for (int i = 0; i < a.size(); ++i) n += std::abs(a[i]);
  if (n == 0.0) throw std::invalid_argument("shift must be nonzero");
}

}  // namespace

Field shift_average(const Field& f, const Pt& a, int k) {
  require_nonzero_shift(a);
  if (k < 1) throw std::invalid_argument("shift_average: k must be >= 1");
  Field r = f;
  auto base = f.eval;
  Pt shift = a;
  r.eval = [base, shift, k](const Pt& t, const Pt& x) {
    CVal acc = base(t, x);
    Pt cur = t;
    for (int j = 1; j < k; ++j) {
      cur = cur + shift;
      acc = acc + base(cur, x);
    }
    return acc * (1.0 / static_cast<double>(k));
  };
  // breakpoints replicate at every shifted copy
  if (f.breakpoints) {
    auto bp = f.breakpoints;
    r.breakpoints = [bp, shift, k](double lo, double hi, int axis, std::vector<double>& out) {
      for (int j = 0; j < k; ++j) {
        const double s = j * shift[axis];
        size_t start = out.size();
        bp(lo + s, hi + s, axis, out);
        for (size_t i = start; i < out.size(); ++i) out[i] -= s;
      }
    };
  }
  return r;
}

TrigPolynomial shift_average(const TrigPolynomial& p, const Pt& a, int k) {
  require_nonzero_shift(a);
  if (k < 1) throw std::invalid_argument("shift_average: k must be >= 1");
  TrigPolynomial out;
  for (const auto& term : p.terms()) {
    const double theta = term.freq.dot(a);
    complexd factor;
    if (mod_2pi_distance(theta) < 1e-12) {
      factor = 1.0;
    } else {
      const complexd q = std::exp(complexd(0, 1) * theta);
      factor = (std::pow(q, k) - 1.0) / (static_cast<double>(k) * (q - 1.0));
    }
    out.add_term(term.freq, term.coeff * factor);
  }
  return out;
}

Field periodize_vector(const Field& f, const Pt& a) {
  require_nonzero_shift(a);
  Field r = f;
  auto base = f.eval;
  Pt dir = a;
  const double aa = dir.dot(dir);
  r.eval = [base, dir, aa](const Pt& t, const Pt& x) {
    const double c = t.dot(dir) / aa;
    return base(t - dir * std::floor(c), x);
  };
  r.breakpoints = nullptr;  // period reduction invalidates axis hints
  return r;
}

Field periodize_per_axis(const Field& f, const Pt& a) {
  require_nonzero_shift(a);
  for (int i = 0; i < a.size(); ++i)
    if (a[i] == 0.0) throw std::invalid_argument("periodize_per_axis: zero component");
  Field r = f;
  auto base = f.eval;
  Pt period = a;
  r.eval = [base, period](const Pt& t, const Pt& x) {
    Pt u = t;
    for (int i = 0; i < t.size(); ++i) {
      const double p = std::abs(period[i]);
      u[i] = t[i] - p * std::floor(t[i] / p);
    }
    return base(u, x);
  };
  r.breakpoints = nullptr;
  return r;
}

Field condition_A_candidate(const Field& f, const Pt& a, int k_max, PeriodicMode mode) {
  Field avg = shift_average(f, a, k_max);
  return mode == PeriodicMode::Vector ? periodize_vector(avg, a) : periodize_per_axis(avg, a);
}

namespace {

void check_periodicity(const Field& candidate, const Pt& a, PeriodicMode mode, double box) {
  Window probe{candidate.domain, WindowShape::Cube, box};
  auto pts = window_sample_points(probe, 1000);
  double scale = 1e-9;
  for (const Pt& t : pts) scale = std::max(scale, candidate(t).norm(candidate.norm_kind));
  auto check_shift = [&](const Pt& shift) {
    for (const Pt& t : pts) {
      if (!candidate.domain.contains(t + shift)) continue;
      const double d = (candidate(t + shift) - candidate(t)).norm(candidate.norm_kind);
      if (d > 1e-9 * std::max(1.0, scale))
        throw std::invalid_argument("condition_A_residual: candidate is not periodic for this mode");
    }
  };
  if (mode == PeriodicMode::Vector) {
    check_shift(a);
  } else {
    for (int j = 0; j < a.size(); ++j) {
      Pt e = Pt::zero(a.size());
      e[j] = a[j];
      check_shift(e);
    }
  }
}

Trend trend_over_index(const std::vector<double>& idx, const std::vector<double>& vals,
                       double* slope) {
  std::vector<std::pair<double, double>> s;
  for (size_t i = 0; i < idx.size(); ++i) s.emplace_back(idx[i], vals[i]);
  if (slope) *slope = loglog_slope(s);
  if (s.size() < 6) {
    // too short for the full classifier; report the sign of the fitted slope
    if (!slope) return Trend::Inconclusive;
    if (*slope < -0.1) return Trend::ConvergingToZero;
    if (*slope > 0.1) return Trend::Diverging;
    return Trend::Bounded;
  }
  return limsup_estimate(s, std::min<int>(4, static_cast<int>(s.size()))).trend;
}

}  // namespace

AveragingResult condition_A_residual(const Field& f, const Pt& a, const Field& candidate,
                                     const WeightProfile& profile, const std::vector<int>& ks,
                                     const std::vector<Window>& windows, PeriodicMode mode,
                                     bool check_candidate) {
  require_nonzero_shift(a);
  if (ks.empty()) throw std::invalid_argument("condition_A_residual: empty k schedule");
  if (check_candidate) check_periodicity(candidate, a, mode, windows.back().radius);

  AveragingResult res;
  res.a = a;
  res.mode = mode;
  res.ks = ks;
  std::vector<double> kvals, limits;
  for (int k : ks) {
    Field avg = shift_average(f, a, k);
    res.residuals.push_back(weighted_residual(avg, candidate, profile, windows).estimate);
    kvals.push_back(static_cast<double>(k));
    limits.push_back(res.residuals.back().limit_value() > 0 ? res.residuals.back().limit_value()
                                                            : res.residuals.back().estimate);
  }
  res.k_trend = trend_over_index(kvals, limits, &res.k_slope);
  return res;
}

AveragingResult condition_A_residual(const TrigPolynomial& p, const Pt& a,
                                     const WeightProfile& profile, const std::vector<int>& ks,
                                     const std::vector<Window>& windows, PeriodicMode mode) {
  require_nonzero_shift(a);
  TrigPolynomial proj = periodic_component(p, a, mode);
  const Domain dom = windows.front().domain;
  Field cand = proj.to_field(dom);

  AveragingResult res;
  res.a = a;
  res.mode = mode;
  res.ks = ks;
  std::vector<double> kvals, limits;
  for (int k : ks) {
    TrigPolynomial avg = shift_average(p, a, k);
    Field avg_field = avg.to_field(dom);
    res.residuals.push_back(weighted_residual(avg_field, cand, profile, windows).estimate);
    kvals.push_back(static_cast<double>(k));
    limits.push_back(res.residuals.back().estimate);
  }
  res.k_trend = trend_over_index(kvals, limits, &res.k_slope);
  return res;
}

Field truncate_field(const Field& f, double cap) {
  if (!(cap > 0)) throw std::invalid_argument("truncate_field: cap must be positive");
  if (f.codim != 1) throw std::invalid_argument("truncate_field: scalar fields only");
  Field r = f;
  auto base = f.eval;
  r.eval = [base, cap](const Pt& t, const Pt& x) {
    const complexd v = base(t, x).scalar();
    const double m = std::abs(v);
    if (m <= cap) return CVal(v);
    return CVal(v * (cap / m));
  };
  return r;
}

namespace {

// Uniform-grid antiderivative of g over [lo, hi] with Gauss-Kronrod panels
// per cell; cells are aligned so that domain breakpoints of g at 0 land on
// grid nodes whenever lo is a multiple of the step.
struct Cumulative {
  double lo, step;
  std::vector<complexd> prefix;  // prefix[i] = integral from lo to lo + i*step

  complexd between(double a, double b) const {
    auto at = [&](double x) {
      const double u = (x - lo) / step;
      const long i = std::lround(u);
      return prefix[static_cast<size_t>(std::clamp<long>(i, 0, static_cast<long>(prefix.size() - 1)))];
    };
    return at(b) - at(a);
  }
};

Cumulative build_cumulative(const std::function<complexd(double)>& g, double lo, double hi,
                            double step, const QuadOptions& opts) {
  Cumulative c;
  c.lo = lo;
  c.step = step;
  const long cells = std::lround((hi - lo) / step);
  c.prefix.resize(cells + 1);
  c.prefix[0] = 0.0;
  for (long i = 0; i < cells; ++i) {
    const double a = lo + i * step;
    const double b = a + step;
    c.prefix[i + 1] = c.prefix[i] + integrate(g, a, b, opts);
  }
  return c;
}

}  // namespace

LimsupEstimate condition_B_functional(const Field& f, const Pt& lambda, double l,
                                      const WindowWeight& f1, const WeightProfile& profile,
                                      const std::vector<Window>& windows) {
  if (!(l > 0)) throw std::invalid_argument("condition_B_functional: l must be positive");
  const int n = f.domain.dimension();
  if (n != 1)
    throw std::invalid_argument("condition_B_functional: implemented for one-dimensional domains");

  auto g = [&](double s) { return f(Pt{s}).scalar() * std::exp(complexd(0, 1) * lambda[0] * s); };

  std::vector<std::pair<double, double>> samples;
  for (const Window& w : windows) {
    const auto yb = window_axis_bounds(w)[0];
    // grid step dividing l so that y and y + l are both nodes
    const double target = std::min(0.25, l / 8.0);
    const long m = std::max<long>(1, std::lround(l / target));
    const double step = l / static_cast<double>(m);
    // snap the grid origin to a multiple of step so s = 0 is a node
    const double lo = std::floor(yb.lo / step) * step;
    const double hi = std::ceil((yb.hi + l) / step) * step;

    QuadOptions cell_opts;
    cell_opts.rel_tol = 1e-9;
    cell_opts.osc_freq = f.osc_freq + std::abs(lambda[0]);
    if (f.breakpoints) f.breakpoints(lo, hi, 0, cell_opts.breakpoints);
    Cumulative cum = build_cumulative(g, lo, hi, step, cell_opts);

    const complexd base = cum.between(0.0, l);
    // L^{p(y)} norm over y in Lambda_t of |inner(y)|, on the same grid
    // (trapezoid weights).
    const long ny = std::lround((yb.hi - yb.lo) / step);
    if (profile.p.is_constant()) {
      const double p = profile.p.constant_value();
      double acc = 0;
      for (long i = 0; i <= ny; ++i) {
        const double y = yb.lo + i * step;
        const double v = std::abs(cum.between(y, y + l) - base);
        const double wgt = (i == 0 || i == ny) ? 0.5 * step : step;
        acc += wgt * std::pow(v, p);
      }
      samples.emplace_back(w.radius, f1(l) * profile.weight(w.radius) * std::pow(acc, 1.0 / p));
    } else {
      // variable exponent: Luxemburg norm over cached grid samples
      std::vector<double> vals(ny + 1), ps(ny + 1), wgts(ny + 1);
      for (long i = 0; i <= ny; ++i) {
        const double y = yb.lo + i * step;
        vals[i] = std::abs(cum.between(y, y + l) - base);
        ps[i] = profile.p(Pt{y});
        wgts[i] = (i == 0 || i == ny) ? 0.5 * step : step;
      }
      auto rho = [&](double lam) {
        double s = 0;
        for (long i = 0; i <= ny; ++i) {
          const double phi = phi_exponent(ps[i], vals[i] / lam);
          if (std::isinf(phi)) return kInf;
          s += wgts[i] * phi;
        }
        return s;
      };
      double hi_l = 1.0;
      int doublings = 0;
      while (rho(hi_l) > 1.0 && doublings++ < 60) hi_l *= 2;
      double lo_l = hi_l;
      while (rho(lo_l) <= 1.0 && lo_l > 1e-200) lo_l *= 0.5;
      for (int it = 0; it < 100 && hi_l - lo_l > 1e-10 * hi_l; ++it) {
        const double mid = 0.5 * (lo_l + hi_l);
        (rho(mid) > 1.0 ? lo_l : hi_l) = mid;
      }
      samples.emplace_back(w.radius, f1(l) * profile.weight(w.radius) * (lo_l < 1e-190 ? 0.0 : hi_l));
    }
  }
  return limsup_estimate(samples);
}

ConditionBReport condition_B_sweep(const Field& f, const Pt& lambda, const std::vector<double>& ls,
                                   const WindowWeight& f1, const WeightProfile& profile,
                                   const std::vector<Window>& windows) {
  ConditionBReport rep;
  rep.lambda = lambda;
  rep.ls = ls;
  std::vector<double> limits;
  for (double l : ls) {
    rep.per_l.push_back(condition_B_functional(f, lambda, l, f1, profile, windows));
    limits.push_back(rep.per_l.back().limit_value() > 0 ? rep.per_l.back().limit_value()
                                                        : rep.per_l.back().estimate);
  }
  std::vector<std::pair<double, double>> s;
  for (size_t i = 0; i < ls.size(); ++i) s.emplace_back(ls[i], limits[i]);
  rep.l_trend = s.size() >= 6 ? limsup_estimate(s).trend
                              : (loglog_slope(s) < -0.1 ? Trend::ConvergingToZero : Trend::Bounded);
  return rep;
}

NullTestReport bohr_average_null_test(const TrigPolynomial& p, const std::vector<Pt>& a_grid,
                                      int k_max, double tol) {
  NullTestReport rep;
  if (p.empty()) {
    rep.forces_zero = true;
    return rep;
  }
  const int n = p.dimension();
  // test grid of evaluation points
  std::vector<Pt> tpts;
  for (int i = 0; i < 200; ++i) {
    Pt t = Pt::zero(n);
    for (int j = 0; j < n; ++j) t[j] = std::fmod(0.7548776662 * (i + 1) * (j + 2) * 13.0, 40.0) - 20.0;
    tpts.push_back(t);
  }
  double field_scale = 0;
  for (const Pt& t : tpts) field_scale = std::max(field_scale, p.evaluate(t).norm());
  rep.field_nonzero = field_scale > tol;

  double overall = 0;
  bool all_null = true;
  for (const Pt& a : a_grid) {
    bool nonzero_coords = true;
    for (int j = 0; j < a.size(); ++j)
      if (a[j] == 0.0) nonzero_coords = false;
    if (!nonzero_coords) continue;
    TrigPolynomial avg = shift_average(p, a, k_max);
    double sup = 0;
    for (const Pt& t : tpts) sup = std::max(sup, avg.evaluate(t).norm());
    rep.per_shift.emplace_back(a, sup);
    overall = std::max(overall, sup);
    if (sup > tol) all_null = false;
  }
  rep.max_average = overall;
  rep.forces_zero = all_null;
  rep.contradiction = all_null && rep.field_nonzero;
  return rep;
}

}  // namespace aplab
