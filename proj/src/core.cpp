#include "aplab/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aplab {

// ---------------------------------------------------------------------------
// Domain

Domain Domain::full_space(int n) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("Domain: dimension out of range");
  Domain d;
  d.n_ = n;
  d.kind_ = Kind::FullSpace;
  d.axes_.assign(n, AxisInterval{});
  return d;
}

Domain Domain::product(std::vector<AxisInterval> axes) {
  const int n = static_cast<int>(axes.size());
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("Domain: dimension out of range");
  Domain d;
  d.n_ = n;
  d.axes_ = std::move(axes);
  bool all_full = true, all_finite = true;
  for (const auto& a : d.axes_) {
    if (!(a.lo < a.hi)) throw std::invalid_argument("Domain: empty axis interval");
    if (std::isfinite(a.lo) || std::isfinite(a.hi)) all_full = false;
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) all_finite = false;
  }
  d.kind_ = all_full ? Kind::FullSpace : (all_finite ? Kind::Box : Kind::Orthant);
  return d;
}

namespace {

// Invert a small dense matrix (row major); returns false when singular at the
// stated tolerance on the determinant.
bool invert_small(const std::vector<std::vector<double>>& m, std::vector<std::vector<double>>& inv,
                  double det_tol) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<double>> a = m;
  inv.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(inv[piv], inv[col]);
      det = -det;
    }
    det *= a[col][col];
    if (std::abs(a[col][col]) < 1e-14) return false;
    const double s = 1.0 / a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return std::abs(det) >= det_tol;
}

}  // namespace

Domain Domain::polyhedral(const std::vector<std::vector<double>>& basis) {
  const int n = static_cast<int>(basis.size());
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("Domain: dimension out of range");
  for (const auto& v : basis)
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("Domain: basis shape mismatch");
  Domain d;
  d.n_ = n;
  d.kind_ = Kind::Polyhedral;
  d.basis_ = basis;
  // Columns of B are the basis vectors; coordinates of t are B^{-1} t.
  std::vector<std::vector<double>> bmat(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bmat[i][j] = basis[j][i];
  if (!invert_small(bmat, d.basis_inv_, 1e-10))
    throw std::invalid_argument("Domain: polyhedral basis is numerically singular");
  return d;
}

const std::vector<AxisInterval>& Domain::axes() const {
  if (kind_ == Kind::Polyhedral) throw std::logic_error("Domain: polyhedral domain has no axis intervals");
  return axes_;
}

bool Domain::contains(const Pt& t, double slack) const {
  if (t.size() != n_) return false;
  if (kind_ == Kind::Polyhedral) {
    for (int i = 0; i < n_; ++i) {
      double c = 0;
      for (int j = 0; j < n_; ++j) c += basis_inv_[i][j] * t[j];
      if (c < -slack) return false;
    }
    return true;
  }
  for (int i = 0; i < n_; ++i) {
    if (t[i] < axes_[i].lo - slack || t[i] > axes_[i].hi + slack) return false;
  }
  return true;
}

Domain Domain::shift_cone() const {
  if (kind_ == Kind::Polyhedral) return *this;  // the cone shifts into itself
  std::vector<AxisInterval> cone(n_);
  for (int i = 0; i < n_; ++i) {
    const bool lo_fin = std::isfinite(axes_[i].lo);
    const bool hi_fin = std::isfinite(axes_[i].hi);
    if (!lo_fin && !hi_fin) {
      cone[i] = {-kInf, kInf};
    } else if (lo_fin && !hi_fin) {
      cone[i] = {0.0, kInf};
    } else if (!lo_fin && hi_fin) {
      cone[i] = {-kInf, 0.0};
    } else {
      cone[i] = {0.0, 1e-300};  // effectively {0}; intervals must be nonempty
    }
  }
  return Domain::product(std::move(cone));
}

// ---------------------------------------------------------------------------
// Window

bool Window::contains(const Pt& t) const {
  if (!domain.contains(t)) return false;
  if (shape == WindowShape::Cube) return t.norm_inf() <= radius + 1e-12;
  return t.norm2() <= radius + 1e-12;
}

namespace {

// Area of {x^2 + y^2 <= r^2} intersected with [x0,x1] x [y0,y1], by the exact
// antiderivative of the chord length in y.
double disc_box_area(double r, double x0, double x1, double y0, double y1) {
  x0 = std::max(x0, -r);
  x1 = std::min(x1, r);
  y0 = std::max(y0, -r);
  y1 = std::min(y1, r);
  if (x0 >= x1 || y0 >= y1) return 0.0;
  // integral over y of clamp(chord(y)) where chord(y) = [-w(y), w(y)],
  // w = sqrt(r^2 - y^2), clamped to [x0, x1].
  auto seg = [&](double a, double b, double c) {
    // antiderivative of min(sqrt(r^2-y^2), c) for c >= 0 evaluated over [a,b]
    // split at |y| where sqrt(r^2-y^2) = c, i.e. y* = sqrt(r^2-c^2).
    auto prim_circle = [&](double y) { return 0.5 * (y * std::sqrt(std::max(0.0, r * r - y * y)) + r * r * std::asin(std::clamp(y / r, -1.0, 1.0))); };
    if (c <= 0) return 0.0;
    if (c >= r) return prim_circle(b) - prim_circle(a);
    const double ys = std::sqrt(r * r - c * c);
    double total = 0.0;
    // regions |y| > ys: circle smaller than c; |y| < ys: constant c.
    auto piece = [&](double lo, double hi) {
      if (lo >= hi) return;
      if (hi <= -ys || lo >= ys)
        total += prim_circle(hi) - prim_circle(lo);
      else
        total += c * (hi - lo);
    };
    piece(a, std::min(b, -ys));
    piece(std::max(a, -ys), std::min(b, ys));
    piece(std::max(a, ys), b);
    return total;
  };
  // chord ∩ [x0,x1] length = clamp(w,x1) - clamp(-w,x0) when positive, with
  // w(y) = sqrt(r^2-y^2): min(w,x1) - max(-w,x0) = min(w,x1) + min(w,-x0).
  return seg(y0, y1, x1) + seg(y0, y1, -x0);
}

double unit_ball_volume(int n) {
  // pi^{n/2} / Gamma(n/2 + 1)
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

}  // namespace

double Window::measure() const {
  const int n = domain.dimension();
  if (domain.kind() == Domain::Kind::Polyhedral)
    throw std::invalid_argument("Window: closed-form measure unsupported for polyhedral domains");
  const auto& axes = domain.axes();
  if (shape == WindowShape::Cube) {
    double m = 1.0;
    for (int i = 0; i < n; ++i) {
      const double lo = std::max(axes[i].lo, -radius);
      const double hi = std::min(axes[i].hi, radius);
      m *= std::max(0.0, hi - lo);
    }
    return m;
  }
  // Ball.
  if (n == 1) {
    const double lo = std::max(axes[0].lo, -radius);
    const double hi = std::min(axes[0].hi, radius);
    return std::max(0.0, hi - lo);
  }
  if (n == 2) {
    return disc_box_area(radius, std::max(axes[0].lo, -radius), std::min(axes[0].hi, radius),
                         std::max(axes[1].lo, -radius), std::min(axes[1].hi, radius));
  }
  // n >= 3: full space, or orthant cornered at zero.
  bool full = true, zero_corner = true;
  for (const auto& a : axes) {
    if (std::isfinite(a.lo) || std::isfinite(a.hi)) full = false;
    if (std::isfinite(a.hi) || (std::isfinite(a.lo) && a.lo != 0.0)) zero_corner = false;
  }
  if (full) return unit_ball_volume(n) * std::pow(radius, n);
  if (zero_corner) {
    int constrained = 0;
    for (const auto& a : axes)
      if (std::isfinite(a.lo)) ++constrained;
    return unit_ball_volume(n) * std::pow(radius, n) / std::pow(2.0, constrained);
  }
  throw std::invalid_argument("Window: ball measure unsupported for this domain at n >= 3");
}

std::vector<double> geometric_schedule(double t0, double ratio, int count) {
  if (t0 <= 0 || ratio <= 1.0 || count < 1) throw std::invalid_argument("geometric_schedule: bad parameters");
  std::vector<double> s(count);
  double t = t0;
  for (int i = 0; i < count; ++i, t *= ratio) s[i] = t;
  return s;
}

std::vector<Window> make_window_sweep(const Domain& domain, WindowShape shape,
                                      const std::vector<double>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("make_window_sweep: empty schedule");
  for (size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i - 1])) throw std::invalid_argument("make_window_sweep: schedule must increase");
  std::vector<Window> out;
  out.reserve(schedule.size());
  for (double t : schedule) {
    Window w{domain, shape, t};
    if (!(w.measure() > 0)) throw std::invalid_argument("degenerate window");
    out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field combinators

Field Field::shifted(const Pt& tau) const {
  Field r = *this;
  auto base = eval;
  Pt shift = tau;
  r.eval = [base, shift](const Pt& t, const Pt& x) { return base(t + shift, x); };
  if (breakpoints) {
    auto bp = breakpoints;
    r.breakpoints = [bp, shift](double a, double b, int axis, std::vector<double>& out) {
      size_t start = out.size();
      bp(a + shift[axis], b + shift[axis], axis, out);
      for (size_t i = start; i < out.size(); ++i) out[i] -= shift[axis];
    };
  }
  return r;
}

Field Field::modulated(const Pt& lambda) const {
  Field r = *this;
  auto base = eval;
  Pt lam = lambda;
  r.eval = [base, lam](const Pt& t, const Pt& x) {
    return base(t, x) * std::exp(complexd(0, 1) * lam.dot(t));
  };
  r.osc_freq = osc_freq + lam.norm2();
  return r;
}

Field Field::scaled(complexd c) const {
  Field r = *this;
  auto base = eval;
  r.eval = [base, c](const Pt& t, const Pt& x) { return base(t, x) * c; };
  return r;
}

Field scalar_field_1d(std::function<complexd(double)> f) {
  Field r;
  r.domain = Domain::real_line();
  r.eval = [f = std::move(f)](const Pt& t, const Pt&) { return CVal(f(t[0])); };
  return r;
}

Field scalar_field(Domain dom, std::function<complexd(const Pt&)> f) {
  Field r;
  r.domain = std::move(dom);
  r.eval = [f = std::move(f)](const Pt& t, const Pt&) { return CVal(f(t)); };
  return r;
}

Field constant_field(Domain dom, complexd c) {
  Field r;
  r.domain = std::move(dom);
  r.eval = [c](const Pt&, const Pt&) { return CVal(c); };
  return r;
}

namespace {

Field combine(const Field& a, const Field& b, int mode) {
  if (a.domain.dimension() != b.domain.dimension())
    throw std::invalid_argument("field combination: dimension mismatch");
  Field r = a;
  auto ea = a.eval, eb = b.eval;
  if (mode == 2) {
    // product: scalar * vector or pointwise when dims match
    r.eval = [ea, eb](const Pt& t, const Pt& x) {
      CVal va = ea(t, x), vb = eb(t, x);
      if (va.size() == 1) return vb * va.scalar();
      if (vb.size() == 1) return va * vb.scalar();
      CVal out = va;
      for (int i = 0; i < out.size(); ++i) out[i] *= vb[i];
      return out;
    };
  } else {
    const double sign = mode == 0 ? 1.0 : -1.0;
    r.eval = [ea, eb, sign](const Pt& t, const Pt& x) {
      CVal va = ea(t, x), vb = eb(t, x);
      if (va.size() != vb.size()) throw std::invalid_argument("field combination: codomain mismatch");
      for (int i = 0; i < va.size(); ++i) va[i] += sign * vb[i];
      return va;
    };
  }
  auto bpa = a.breakpoints, bpb = b.breakpoints;
  if (bpa || bpb) {
    r.breakpoints = [bpa, bpb](double lo, double hi, int axis, std::vector<double>& out) {
      if (bpa) bpa(lo, hi, axis, out);
      if (bpb) bpb(lo, hi, axis, out);
    };
  }
  r.osc_freq = a.osc_freq + b.osc_freq;
  if (a.osc_freq_y >= 0 || b.osc_freq_y >= 0)
    r.osc_freq_y = std::max(a.osc_freq_y, 0.0) + std::max(b.osc_freq_y, 0.0);
  r.feature_scale = (a.feature_scale > 0 && b.feature_scale > 0)
                        ? std::min(a.feature_scale, b.feature_scale)
                        : std::max(a.feature_scale, b.feature_scale);
  return r;
}

}  // namespace

Field field_sum(const Field& a, const Field& b) { return combine(a, b, 0); }
Field field_difference(const Field& a, const Field& b) { return combine(a, b, 1); }
Field field_product(const Field& a, const Field& b) { return combine(a, b, 2); }

// ---------------------------------------------------------------------------
// LimsupEstimate

const char* trend_name(Trend t) {
  switch (t) {
    case Trend::ConvergingToZero: return "converging-to-zero";
    case Trend::Bounded: return "bounded";
    case Trend::Diverging: return "diverging";
    default: return "inconclusive";
  }
}

double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xy.size());
  for (const auto& [x, y] : xy) {
    const double lx = std::log(std::max(x, 1e-300));
    const double ly = std::log(std::max(y, 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-30) return 0.0;
  return (n * sxy - sx * sy) / den;
}

bool LimsupEstimate::vanishing() const {
  if (trend == Trend::ConvergingToZero) return true;
  if (trend == Trend::Diverging) return false;
  const int n = static_cast<int>(samples.size());
  const int k = std::min(tail_len, n);
  bool mono = true;
  for (int i = n - k; i + 1 < n; ++i)
    if (samples[i + 1].second > 1.2 * samples[i].second) mono = false;
  return mono && tail_slope <= -0.05 && samples[n - 1].second <= 0.75 * samples[0].second;
}

LimsupEstimate limsup_estimate(const std::vector<std::pair<double, double>>& samples, int tail_len) {
  if (samples.size() < 6) throw std::invalid_argument("limsup_estimate: need at least 6 samples");
  for (const auto& [t, v] : samples)
    if (!std::isfinite(t) || !std::isfinite(v)) throw std::invalid_argument("limsup_estimate: non-finite sample");

  LimsupEstimate e;
  e.samples = samples;
  const int n = static_cast<int>(samples.size());
  e.tail_len = std::min(std::max(tail_len, 3), n);

  std::vector<std::pair<double, double>> tail(samples.end() - e.tail_len, samples.end());
  e.estimate = 0;
  for (const auto& [t, v] : tail) e.estimate = std::max(e.estimate, v);
  e.tail_slope = loglog_slope(tail);

  const double first = samples.front().second;
  const double last = samples.back().second;
  double scale = 0;
  for (const auto& [t, v] : samples) scale = std::max(scale, std::abs(v));

  // All-tail-zero means the sweep is identically converged.
  if (e.estimate <= 1e-13 * std::max(1.0, scale)) {
    e.trend = Trend::ConvergingToZero;
    return e;
  }

  bool tail_mono_dec = true;
  for (size_t i = 0; i + 1 < tail.size(); ++i)
    if (tail[i + 1].second > 1.2 * tail[i].second) tail_mono_dec = false;

  bool all_mono_inc = last >= 1.5 * std::max(first, 1e-300);
  for (int i = 0; i + 1 < n; ++i)
    if (samples[i + 1].second < samples[i].second / 1.2) all_mono_inc = false;

  double tail_min = tail[0].second, tail_max = tail[0].second;
  for (const auto& [t, v] : tail) {
    tail_min = std::min(tail_min, v);
    tail_max = std::max(tail_max, v);
  }

  // For slow growth, distinguish log-like curves (increments shrink slowly)
  // from saturating ones (increments collapse geometrically).
  bool increments_persist = false;
  if (n >= 3) {
    const double d1 = std::log(std::max(samples[n - 1].second, 1e-300)) -
                      std::log(std::max(samples[n - 2].second, 1e-300));
    const double d2 = std::log(std::max(samples[n - 2].second, 1e-300)) -
                      std::log(std::max(samples[n - 3].second, 1e-300));
    increments_persist = d2 > 0 && d1 >= 0.65 * d2;
  }

  if (e.tail_slope > 0.1) {
    e.trend = Trend::Diverging;
  } else if (all_mono_inc && e.tail_slope > 0.01 && increments_persist) {
    // slow but steady growth (e.g. logarithmic) never plateaus
    e.trend = Trend::Diverging;
  } else if (tail_mono_dec && last <= 0.1 * first) {
    e.trend = Trend::ConvergingToZero;
  } else if (std::abs(e.tail_slope) <= 0.1 || tail_max <= 2.0 * std::max(tail_min, 1e-300)) {
    e.trend = Trend::Bounded;
  } else {
    e.trend = Trend::Inconclusive;
  }
  return e;
}

}  // namespace aplab
