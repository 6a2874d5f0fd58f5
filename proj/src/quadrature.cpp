#include "aplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace aplab {

namespace {

// Kronrod 15 abscissae/weights on [-1,1] and the embedded Gauss-7 weights.
constexpr double kXgk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWgk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWg[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469, 0.381830050505119, 0.279705391489277,
                           0.129484966168870};

struct PanelResult {
  complexd k15;
  double err;
};

PanelResult gk15(const std::function<complexd(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  complexd vals[15];
  complexd ik(0), ig(0);
  for (int i = 0; i < 15; ++i) {
    vals[i] = f(c + h * kXgk[i]);
    ik += kWgk[i] * vals[i];
    if (i % 2 == 1) ig += kWg[i / 2] * vals[i];
  }
  const complexd mean = ik * 0.5;  // average of f against the K15 weights
  ik *= h;
  ig *= h;
  const double diff = std::abs(ik - ig);
  // QUADPACK-style sharpening against the oscillation scale of the panel
  double resasc = 0;
  for (int i = 0; i < 15; ++i) resasc += kWgk[i] * std::abs(vals[i] - mean);
  resasc *= h;
  double err = diff;
  if (resasc != 0.0 && diff != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * diff / resasc, 1.5));
  return {ik, err};
}

struct Seg {
  double a, b;
  complexd val;
  double err;
  int depth;
};

void initial_split(double a, double b, const QuadOptions& opts, std::vector<std::pair<double, double>>& out) {
  std::vector<double> cuts;
  cuts.push_back(a);
  cuts.push_back(b);
  for (double x : opts.breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double u, double v) { return std::abs(u - v) < 1e-14 * (1 + std::abs(u)); }),
             cuts.end());
  // target panel width from oscillation / feature hints
  double wmax = kInf;
  if (opts.osc_freq > 0) wmax = std::min(wmax, std::numbers::pi / opts.osc_freq);
  if (opts.feature_scale > 0) wmax = std::min(wmax, opts.feature_scale);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    long pieces = 1;
    if (std::isfinite(wmax) && wmax > 0) {
      pieces = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / wmax)));
      pieces = std::min(pieces, opts.max_panels);
    }
    const double step = (hi - lo) / static_cast<double>(pieces);
    for (long k = 0; k < pieces; ++k)
      out.emplace_back(lo + k * step, k + 1 == pieces ? hi : lo + (k + 1) * step);
  }
}

complexd integrate_impl(const std::function<complexd(double)>& f, double a, double b,
                        const QuadOptions& opts, QuadSamples* record) {
  if (!(b > a)) return 0.0;
  std::vector<std::pair<double, double>> panels;
  initial_split(a, b, opts, panels);

  std::vector<Seg> segs;
  segs.reserve(panels.size());
  complexd total(0);
  double total_err = 0;
  std::priority_queue<std::pair<double, size_t>> queue;
  for (auto [lo, hi] : panels) {
    auto r = gk15(f, lo, hi);
    segs.push_back({lo, hi, r.k15, r.err, 0});
    total += r.k15;
    total_err += r.err;
    queue.emplace(r.err, segs.size() - 1);
  }

  auto tol = [&](void) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  // refine the worst panel until the budget is met; bail out when splitting
  // stops paying (noise-floor integrands)
  double err_checkpoint = total_err;
  long splits = 0;
  while (total_err > tol() && static_cast<long>(segs.size()) < opts.max_panels && !queue.empty()) {
    const auto [err, idx] = queue.top();
    queue.pop();
    if (err != segs[idx].err) continue;  // stale entry
    Seg s = segs[idx];
    if (s.depth >= opts.max_depth || (s.b - s.a) < 1e-15 * (1 + std::abs(s.a))) continue;
    const double mid = 0.5 * (s.a + s.b);
    auto r1 = gk15(f, s.a, mid);
    auto r2 = gk15(f, mid, s.b);
    total += r1.k15 + r2.k15 - s.val;
    total_err += r1.err + r2.err - s.err;
    segs[idx] = {s.a, mid, r1.k15, r1.err, s.depth + 1};
    segs.push_back({mid, s.b, r2.k15, r2.err, s.depth + 1});
    queue.emplace(r1.err, idx);
    queue.emplace(r2.err, segs.size() - 1);
    if (++splits % 1024 == 0) {
      if (total_err > 0.999 * err_checkpoint) break;  // stagnation
      err_checkpoint = total_err;
    }
  }

  if (record) {
    record->nodes.clear();
    record->weights.clear();
    record->nodes.reserve(segs.size() * 15);
    record->weights.reserve(segs.size() * 15);
    std::sort(segs.begin(), segs.end(), [](const Seg& u, const Seg& v) { return u.a < v.a; });
    for (const Seg& s : segs) {
      const double h = 0.5 * (s.b - s.a);
      const double c = 0.5 * (s.a + s.b);
      for (int i = 0; i < 15; ++i) {
        record->nodes.push_back(c + h * kXgk[i]);
        record->weights.push_back(h * kWgk[i]);
      }
    }
  }
  return total;
}

}  // namespace

complexd integrate(const std::function<complexd(double)>& f, double a, double b,
                   const QuadOptions& opts) {
  return integrate_impl(f, a, b, opts, nullptr);
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const QuadOptions& opts) {
  return integrate_impl([&f](double x) { return complexd(f(x), 0.0); }, a, b, opts, nullptr).real();
}

QuadSamples sample_interval(const std::function<double(double)>& refine_against, double a, double b,
                            const QuadOptions& opts) {
  QuadSamples s;
  integrate_impl([&refine_against](double x) { return complexd(refine_against(x), 0.0); }, a, b, opts,
                 &s);
  return s;
}

std::vector<AxisInterval> window_axis_bounds(const Window& w) {
  const auto& axes = w.domain.axes();
  std::vector<AxisInterval> out(axes.size());
  for (size_t i = 0; i < axes.size(); ++i) {
    out[i].lo = std::max(axes[i].lo, -w.radius);
    out[i].hi = std::min(axes[i].hi, w.radius);
    if (!(out[i].lo < out[i].hi)) out[i] = {0.0, 0.0};
  }
  return out;
}

QuadOptions quad_options_for(const Field& f, double a, double b, int axis, const QuadOptions& base) {
  QuadOptions o = base;
  o.osc_freq = std::max(o.osc_freq, f.osc_freq);
  if (f.feature_scale > 0)
    o.feature_scale = o.feature_scale > 0 ? std::min(o.feature_scale, f.feature_scale) : f.feature_scale;
  if (f.breakpoints) f.breakpoints(a, b, axis, o.breakpoints);
  return o;
}

QuadOptions window_quad_options(const Field& f, const Window& w, QuadOptions base) {
  QuadOptions o = std::move(base);
  o.osc_freq = std::max(o.osc_freq, f.osc_freq);
  if (f.osc_freq_y >= 0.0) o.osc_freq_y = std::max(o.osc_freq_y, f.osc_freq_y);
  if (f.feature_scale > 0)
    o.feature_scale = o.feature_scale > 0 ? std::min(o.feature_scale, f.feature_scale) : f.feature_scale;
  if (f.breakpoints && w.domain.kind() != Domain::Kind::Polyhedral) {
    const auto bounds = window_axis_bounds(w);
    f.breakpoints(bounds[0].lo, bounds[0].hi, 0, o.breakpoints);
    if (w.domain.dimension() >= 2) f.breakpoints(bounds[1].lo, bounds[1].hi, 1, o.breakpoints_y);
  }
  return o;
}

complexd integrate_window(const std::function<complexd(const Pt&)>& f, const Window& w,
                          const QuadOptions& opts) {
  const int n = w.domain.dimension();
  if (w.domain.kind() == Domain::Kind::Polyhedral)
    throw std::invalid_argument("integrate_window: polyhedral domains unsupported");
  const auto bounds = window_axis_bounds(w);
  if (n == 1) {
    return integrate([&f](double x) { return f(Pt{x}); }, bounds[0].lo, bounds[0].hi, opts);
  }
  if (n == 2) {
    QuadOptions inner = opts;
    inner.rel_tol = std::max(opts.rel_tol * 0.25, 1e-12);
    inner.breakpoints_y.clear();
    const bool ball = w.shape == WindowShape::Ball;
    const double r = w.radius;
    QuadOptions outer = opts;
    outer.breakpoints = opts.breakpoints_y;
    outer.breakpoints_y.clear();
    if (opts.osc_freq_y >= 0.0) outer.osc_freq = opts.osc_freq_y;
    // the outer integrand (a full inner integral) is smooth in y unless the
    // field has 2-D features; keep hints on both levels
    auto outer_f = [&](double y) -> complexd {
      double xlo = bounds[0].lo, xhi = bounds[0].hi;
      if (ball) {
        const double chord = std::sqrt(std::max(0.0, r * r - y * y));
        xlo = std::max(xlo, -chord);
        xhi = std::min(xhi, chord);
      }
      if (!(xlo < xhi)) return 0.0;
      return integrate([&f, y](double x) { return f(Pt{x, y}); }, xlo, xhi, inner);
    };
    return integrate(outer_f, bounds[1].lo, bounds[1].hi, outer);
  }
  if (n == 3 && w.shape == WindowShape::Cube) {
    QuadOptions inner = opts;
    inner.rel_tol = std::max(opts.rel_tol * 0.25, 1e-12);
    auto outer_f = [&](double z) -> complexd {
      auto mid_f = [&](double y) -> complexd {
        return integrate([&f, y, z](double x) { return f(Pt{x, y, z}); }, bounds[0].lo, bounds[0].hi,
                         inner);
      };
      return integrate(mid_f, bounds[1].lo, bounds[1].hi, inner);
    };
    return integrate(outer_f, bounds[2].lo, bounds[2].hi, opts);
  }
  throw std::invalid_argument("integrate_window: unsupported dimension/shape combination");
}

double integrate_window_real(const std::function<double(const Pt&)>& f, const Window& w,
                             const QuadOptions& opts) {
  return integrate_window([&f](const Pt& t) { return complexd(f(t), 0.0); }, w, opts).real();
}

}  // namespace aplab
